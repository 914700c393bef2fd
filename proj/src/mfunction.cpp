#include "symspec/mfunction.hpp"

namespace symspec {

MFunction::Eval SystemMFunction::eval(Complex lambda) const {
  const std::pair<double, double> key{lambda.real(), lambda.imag()};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  const MPlusEvaluation ev = limit_m(sys_, alpha_, lambda, opts_);
  Eval out{ev.value, ev.converged, ev.n_used, ev.diameter};
  std::lock_guard<std::mutex> lock(mu_);
  cache_.emplace(key, out);
  return out;
}

}  // namespace symspec
