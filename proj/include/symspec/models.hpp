#ifndef SYMSPEC_MODELS_HPP
#define SYMSPEC_MODELS_HPP

#include <optional>
#include <string>

#include "symspec/core.hpp"
#include "symspec/herglotz.hpp"

namespace symspec {

/// Three-term recurrence data a_k y_{k+1} + b_k y_k + a_{k-1} y_{k-1}
/// = lambda w_k y_k imposed at k >= 1, with y_0 governed by the boundary
/// matrix. Requires a_k != 0 and w_k > 0.
struct JacobiModel {
  ScalarSeq a = ScalarSeq::constant(1.0);
  ScalarSeq b = ScalarSeq::constant(0.0);
  ScalarSeq w = ScalarSeq::constant(1.0);
  std::string label = "jacobi";
};

/// Map a Jacobi model to half-dimension-one symplectic form with state
/// z_k = (y_k, -a_k y_{k+1}). The weighted norm collects w_{k+1}|y_{k+1}|^2,
/// and alpha = (1, 0) imposes y_0 = 0.
SymplecticSystem jacobi_to_symplectic(const JacobiModel& m);

/// Scalar recurrence oracle: y_{k} for k = 0..count-1 from seeds (y0, y1).
std::vector<Complex> jacobi_recurrence(const JacobiModel& m, Complex lambda,
                                       Complex y0, Complex y1, Index count);

/// A built-in test model: either a concrete system or an exact synthetic
/// boundary-function handle.
struct BuiltinModel {
  std::optional<SymplecticSystem> system;
  std::optional<JacobiModel> jacobi;
  std::optional<HerglotzModel> synthetic;
  std::string name;
};

JacobiModel free_jacobi_model();
JacobiModel oscillator_model(double c);

/// Names: "free_jacobi", "oscillator" (uses c), "one_jump_synthetic"
/// (uses c and t0). Throws BadInput for unknown names.
BuiltinModel builtin_model(const std::string& name, double c = 1.0,
                           double t0 = 0.0);

}  // namespace symspec

#endif
