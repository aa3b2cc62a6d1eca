#pragma once

#include "dpconvex/numerics.hpp"

#include <vector>

namespace dpconvex {

/// The domain D_p^n = { z in C^n : sum_j |z_j|^{p_j} < 1 }.
struct DomainSpec {
    std::vector<double> p;

    std::size_t n() const noexcept { return p.size(); }
    double min_exponent() const;

    /// n >= 1 and every p_j > 1 (finite).
    void validate() const;
    /// Additionally p_j >= 2, required by the convexity criterion and the
    /// sufficient-condition checkers. Throws ParamOutOfRange otherwise.
    void require_criterion_exponents() const;

    static DomainSpec ball(std::size_t n, double p) { return DomainSpec{std::vector<double>(n, p)}; }
};

struct RhoResult {
    double rho = 0.0;
    /// sum_j |z_j / rho|^{p_j} - 1; zero for z = 0.
    double residual = 0.0;
};

/// Minkowski functional of D_p^n: the unique t > 0 with sum_j |z_j/t|^{p_j} = 1.
RhoResult minkowski(const DomainSpec& dom, ComplexSpan z);

/// sum_j (|z_j| / t)^{p_j}.
double defining_sum(const DomainSpec& dom, ComplexSpan z, double t);

/// Conjugate-Wirtinger gradient d rho / d conj(z_l). Components with z_l = 0
/// are exactly 0. Throws ZeroPoint for z = 0.
ComplexVector rho_bar_gradient(const DomainSpec& dom, ComplexSpan z);

/// Strict membership: sum_j |z_j|^{p_j} < 1.
bool contains(const DomainSpec& dom, ComplexSpan z);

/// Point with rho_floor < rho(z) < 1: Gaussian direction, rho uniform on
/// (rho_floor, 1).
ComplexVector sample_interior(const DomainSpec& dom, Rng& rng, double rho_floor);

/// Same law restricted to the shell rho_floor < rho < rho_ceiling.
ComplexVector sample_shell(const DomainSpec& dom, Rng& rng, double rho_floor, double rho_ceiling);

} // namespace dpconvex
