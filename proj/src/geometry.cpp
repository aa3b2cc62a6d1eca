#include "dpconvex/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dpconvex {

double DomainSpec::min_exponent() const {
    if (p.empty())
        throw Error(ErrorCode::DimensionMismatch, "domain has no exponents");
    return *std::min_element(p.begin(), p.end());
}

void DomainSpec::validate() const {
    if (p.empty())
        throw Error(ErrorCode::ParamOutOfRange, "domain dimension must be at least 1");
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (!std::isfinite(p[j]) || !(p[j] > 1.0))
            throw Error(ErrorCode::ParamOutOfRange,
                        "exponent p_" + std::to_string(j + 1) + " must be finite and > 1");
    }
}

void DomainSpec::require_criterion_exponents() const {
    validate();
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j] < 2.0)
            throw Error(ErrorCode::ParamOutOfRange,
                        "exponent p_" + std::to_string(j + 1) +
                            " < 2; the convexity criterion and its sufficient conditions "
                            "assume p_j >= 2");
    }
}

namespace {

void check_point(const DomainSpec& dom, ComplexSpan z) {
    if (z.size() != dom.n())
        throw Error(ErrorCode::DimensionMismatch, "point dimension differs from domain");
    if (!all_finite(z))
        throw Error(ErrorCode::NonFiniteInput, "point has non-finite coordinates");
}

// G(u) = sum_j r_j^{p_j} u^{-p_j} with r_j = |z_j| / m <= 1; decreasing in u.
struct ScaledSum {
    const std::vector<double>& r;
    const std::vector<double>& p;

    double value(double u) const {
        double s = 0.0;
        for (std::size_t j = 0; j < r.size(); ++j)
            if (r[j] > 0.0)
                s += std::pow(r[j] / u, p[j]);
        return s;
    }
    double derivative(double u) const {
        double s = 0.0;
        for (std::size_t j = 0; j < r.size(); ++j)
            if (r[j] > 0.0)
                s -= p[j] * std::pow(r[j] / u, p[j]) / u;
        return s;
    }
};

} // namespace

double defining_sum(const DomainSpec& dom, ComplexSpan z, double t) {
    double s = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) {
        const double a = std::abs(z[j]);
        if (a > 0.0)
            s += std::pow(a / t, dom.p[j]);
    }
    return s;
}

RhoResult minkowski(const DomainSpec& dom, ComplexSpan z) {
    check_point(dom, z);
    const double m = norm_inf(z);
    if (m == 0.0)
        return {};

    std::vector<double> r(z.size());
    for (std::size_t j = 0; j < z.size(); ++j)
        r[j] = std::abs(z[j]) / m;
    const ScaledSum g{r, dom.p};

    // Root of G(u) = 1 lies in [1, n^{1/min p}].
    double lo = 1.0;
    double hi = std::pow(static_cast<double>(z.size()), 1.0 / dom.min_exponent());
    if (g.value(hi) > 1.0)
        hi *= 1.0 + 1e-12;

    while (hi - lo > 1e-9 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (g.value(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    double u = 0.5 * (lo + hi);
    for (int it = 0; it < 8; ++it) {
        const double f = g.value(u) - 1.0;
        const double df = g.derivative(u);
        if (f == 0.0 || df == 0.0)
            break;
        double next = u - f / df;
        if (!(next >= lo && next <= hi))
            next = 0.5 * (lo + hi);
        if (g.value(next) > 1.0)
            lo = next;
        else
            hi = next;
        if (std::abs(next - u) <= 1e-16 * u) {
            u = next;
            break;
        }
        u = next;
    }
    return RhoResult{m * u, g.value(u) - 1.0};
}

ComplexVector rho_bar_gradient(const DomainSpec& dom, ComplexSpan z) {
    const double rho = minkowski(dom, z).rho;
    if (rho == 0.0)
        throw Error(ErrorCode::ZeroPoint, "gradient of rho is undefined at z = 0");

    double weight = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) {
        const double a = std::abs(z[j]);
        if (a > 0.0)
            weight += dom.p[j] * std::pow(a / rho, dom.p[j]);
    }

    // p_l |z_l|^{p_l} / (2 conj(z_l) rho^{p_l-1} W) = p_l (|z_l|/rho)^{p_l-2} (z_l/rho) / (2 W)
    ComplexVector grad(z.size());
    for (std::size_t l = 0; l < z.size(); ++l) {
        const double a = std::abs(z[l]);
        if (a == 0.0)
            continue;
        grad[l] = dom.p[l] * std::pow(a / rho, dom.p[l] - 2.0) * (z[l] / rho) / (2.0 * weight);
    }
    return grad;
}

bool contains(const DomainSpec& dom, ComplexSpan z) {
    check_point(dom, z);
    return defining_sum(dom, z, 1.0) < 1.0;
}

ComplexVector sample_shell(const DomainSpec& dom, Rng& rng, double rho_floor, double rho_ceiling) {
    if (!(rho_floor >= 0.0 && rho_floor < rho_ceiling && rho_ceiling <= 1.0))
        throw Error(ErrorCode::ParamOutOfRange, "sampling shell must satisfy 0 <= floor < ceiling <= 1");
    std::uniform_real_distribution<double> radial(rho_floor, rho_ceiling);
    for (;;) {
        ComplexVector g = sample_complex_gaussian(dom.n(), rng);
        const double rg = minkowski(dom, g).rho;
        if (rg == 0.0)
            continue;
        const double r = radial(rng);
        if (!(r > rho_floor))
            continue;
        for (auto& v : g)
            v *= r / rg;
        if (rho_ceiling >= 1.0 && !contains(dom, g))
            continue;
        return g;
    }
}

ComplexVector sample_interior(const DomainSpec& dom, Rng& rng, double rho_floor) {
    if (!(rho_floor >= 0.0 && rho_floor < 1.0))
        throw Error(ErrorCode::ParamOutOfRange, "rho_floor must lie in [0, 1)");
    return sample_shell(dom, rng, rho_floor, 1.0);
}

} // namespace dpconvex
