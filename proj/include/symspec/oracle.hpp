#ifndef SYMSPEC_ORACLE_HPP
#define SYMSPEC_ORACLE_HPP

#include <vector>

#include "symspec/models.hpp"
#include "symspec/propagate.hpp"

namespace symspec {

/// Eigenvalues (ascending) of a real symmetric tridiagonal matrix by the
/// implicit-shift QL iteration; diag has size m, off size m-1.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag,
                                            std::vector<double> off);

/// Brute-force finite-section eigenvalues of the Jacobi model: relations at
/// the first `size` interior indices, y at the far end clamped to zero, and
/// the left boundary row sin(a0) y_0 = cos(a0) a_0 y_1. The generalized
/// weight is folded in symmetrically (W^{-1/2} T W^{-1/2}).
std::vector<double> jacobi_truncation_eigs(const JacobiModel& m, Index size,
                                           double left_angle);

struct DetRoot {
  double lambda = 0.0;
  bool suspect = false;  // |det| dip without a sign change (possible even-order root)
};

struct DetScanOptions {
  int grid_points = 0;          // 0 -> 8 per unit length
  double bisect_tol = 1e-10;
  double suspect_rel = 1e-7;    // dip threshold relative to neighborhood scale
};

/// Real roots of lambda -> det(beta Ztilde_{N+1}(lambda)) on [a, b]:
/// sign-change bracketing on the grid, bisection refinement, and golden
/// search at dips of |det| that hide an even number of crossings. The
/// determinant is evaluated with running rescaling, so only zeros and sign
/// changes are meaningful, which is all the scan uses.
std::vector<DetRoot> det_root_scan(const SymplecticSystem& sys,
                                   const BoundaryMatrix& alpha,
                                   const BoundaryMatrix& beta, Index n,
                                   double a, double b,
                                   const DetScanOptions& opts = {});

}  // namespace symspec

#endif
