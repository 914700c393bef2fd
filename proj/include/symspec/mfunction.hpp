#ifndef SYMSPEC_MFUNCTION_HPP
#define SYMSPEC_MFUNCTION_HPP

#include <map>
#include <memory>
#include <mutex>

#include "symspec/herglotz.hpp"
#include "symspec/weyl.hpp"

namespace symspec {

/// Boundary-function provider: either the adaptive half-line limit or an
/// exact synthetic model. The spectral classifier works through this
/// interface, so the same logic runs against analytically known inputs.
class MFunction {
public:
  struct Eval {
    Mat value;
    bool converged = true;
    Index n_used = 0;
    double diameter = 0.0;
  };

  virtual ~MFunction() = default;
  virtual int n() const = 0;
  virtual Eval eval(Complex lambda) const = 0;
};

class SystemMFunction : public MFunction {
public:
  SystemMFunction(SymplecticSystem sys, BoundaryMatrix alpha,
                  LimitMOptions opts = {})
      : sys_(std::move(sys)), alpha_(std::move(alpha)), opts_(std::move(opts)) {
    opts_.circle_residual = false;
  }

  int n() const override { return sys_.n(); }
  Eval eval(Complex lambda) const override;

  const SymplecticSystem& system() const { return sys_; }
  const BoundaryMatrix& alpha() const { return alpha_; }
  const LimitMOptions& options() const { return opts_; }

private:
  SymplecticSystem sys_;
  BoundaryMatrix alpha_;
  LimitMOptions opts_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<double, double>, Eval> cache_;
};

class HerglotzMFunction : public MFunction {
public:
  explicit HerglotzMFunction(HerglotzModel model) : model_(std::move(model)) {}

  int n() const override { return model_.n(); }
  Eval eval(Complex lambda) const override {
    return Eval{model_.eval(lambda), true, 0, 0.0};
  }
  const HerglotzModel& model() const { return model_; }

private:
  HerglotzModel model_;
};

}  // namespace symspec

#endif
