#pragma once

// Test-only reference implementations. None of these call into the library's
// geometry, mappings or criterion code paths.

#include "dpconvex/mappings.hpp"

#include <complex>
#include <random>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Vec = std::vector<C>;
using Mat = std::vector<Vec>;

/// Plain bisection on g(t) = sum |z_j/t|^{p_j} = 1 over [0, 1e6], 300 halvings.
double rho_bisection(const std::vector<double>& p, const Vec& z);

/// d rho / d conj(z_l) = (d/dx_l + i d/dy_l) rho / 2, central differences of
/// rho_bisection with step h.
Vec wirtinger_gradient_fd(const std::vector<double>& p, const Vec& z, double h = 1e-6);

/// Straight-line evaluation of each family formula.
Vec family_value(const dpconvex::MappingSpec& spec, const Vec& z);

/// Gauss-Jordan elimination with full row scan (no LU reuse).
Vec gauss_jordan_solve(Mat a, Vec y);

/// J computed term by term with the simplified curvature term
///   - Re sum_l w_l p_l |z_l|^{p_l} / (z_l rho^{p_l}),  Df w = D^2 f(b, b).
/// Df and the second-derivative tensor are passed in explicitly.
double criterion_J(const std::vector<double>& p, const Vec& z, const Vec& b, const Mat& jac,
                   const std::vector<Mat>& hess);

/// Same, with derivatives taken from the bundle.
double criterion_J(const std::vector<double>& p, const Vec& z, const Vec& b, const dpconvex::DerivativeBundle& d);

/// Random admissible-size coefficients for a family (|a| <= scale), n >= 2.
dpconvex::MappingSpec random_spec(dpconvex::Family family, std::size_t n, std::mt19937_64& rng, double scale = 0.1);

/// Uniform point in the p-ball with rho(z) = radius (direction Gaussian).
Vec point_at_radius(const std::vector<double>& p, std::mt19937_64& rng, double radius);

} // namespace oracle
