#include "dpconvex/mappings.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace dpconvex {

std::string_view to_string(Family family) noexcept {
    switch (family) {
    case Family::Identity: return "Identity";
    case Family::Example1: return "Example1";
    case Family::Example2: return "Example2";
    case Family::Example3: return "Example3";
    case Family::Example4: return "Example4";
    case Family::Theorem4Quadratic: return "Theorem4Quadratic";
    case Family::CustomTriangular: return "CustomTriangular";
    }
    return "Unknown";
}

Family family_from_string(std::string_view name) {
    constexpr std::array all{Family::Identity,  Family::Example1,          Family::Example2,
                             Family::Example3,  Family::Example4,          Family::Theorem4Quadratic,
                             Family::CustomTriangular};
    for (Family f : all)
        if (to_string(f) == name)
            return f;
    throw Error(ErrorCode::InvalidConfig, "unknown mapping family '" + std::string(name) + "'");
}

MappingSpec MappingSpec::identity(std::size_t n) {
    MappingSpec s;
    s.family = Family::Identity;
    s.n = n;
    return s;
}

MappingSpec MappingSpec::example1(std::vector<Complex> a, int k, Complex lambda) {
    MappingSpec s;
    s.family = Family::Example1;
    s.n = a.size();
    s.a = std::move(a);
    s.k = k;
    s.lambda = lambda;
    return s;
}

MappingSpec MappingSpec::example2(std::vector<Complex> a, int k) {
    MappingSpec s;
    s.family = Family::Example2;
    s.n = a.size();
    s.a = std::move(a);
    s.k = k;
    return s;
}

MappingSpec MappingSpec::example3(std::vector<Complex> a, int k, Complex lambda) {
    MappingSpec s = example1(std::move(a), k, lambda);
    s.family = Family::Example3;
    return s;
}

MappingSpec MappingSpec::example4(std::vector<Complex> a, int k) {
    MappingSpec s = example2(std::move(a), k);
    s.family = Family::Example4;
    return s;
}

MappingSpec MappingSpec::theorem4(Complex a1, Complex a2, Complex a1_prime, Complex a2_prime) {
    MappingSpec s;
    s.family = Family::Theorem4Quadratic;
    s.n = 2;
    s.a = {a1, a2};
    s.a1_prime = a1_prime;
    s.a2_prime = a2_prime;
    return s;
}

MappingSpec MappingSpec::custom(std::vector<CustomComponent> components) {
    MappingSpec s;
    s.family = Family::CustomTriangular;
    s.n = components.size();
    s.components = std::move(components);
    return s;
}

namespace {

Complex ipow(Complex base, int e) {
    Complex r = 1.0;
    for (int i = 0; i < e; ++i)
        r *= base;
    return r;
}

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

// (e^w - 1) / w, with the w -> 0 limit.
Complex expm1_ratio(Complex w) {
    if (std::abs(w) < 1e-2) {
        Complex term = 1.0;
        Complex sum = 1.0;
        for (int m = 2; m <= 9; ++m) {
            term *= w / static_cast<double>(m);
            sum += term;
        }
        return sum;
    }
    return (std::exp(w) - 1.0) / w;
}

// coeff * prod z_m^{e_m} with exponents adjusted by -d1 at m1 and -d2 at m2,
// times the falling-factorial multiplicity of the differentiation.
Complex monomial_derivative(Complex coeff, const std::vector<int>& exps, ComplexSpan z,
                            int m1 = -1, int m2 = -1) {
    std::vector<int> e = exps;
    Complex c = coeff;
    for (int m : {m1, m2}) {
        if (m < 0)
            continue;
        if (e[m] == 0)
            return 0.0;
        c *= static_cast<double>(e[m]);
        --e[m];
    }
    for (std::size_t j = 0; j < z.size(); ++j)
        if (e[j] > 0)
            c *= ipow(z[j], e[j]);
    return c;
}

std::vector<int> unit_exponents(std::size_t n, std::initializer_list<std::pair<std::size_t, int>> powers) {
    std::vector<int> e(n, 0);
    for (auto [m, d] : powers)
        e[m] += d;
    return e;
}

} // namespace

Mapping::Mapping(MappingSpec spec) : spec_(std::move(spec)) { compile(); }

void Mapping::compile() {
    const std::size_t n = spec_.n;
    if (n == 0)
        throw Error(ErrorCode::ParamOutOfRange, "mapping dimension must be at least 1");

    auto require_coeffs = [&](std::size_t min_n) {
        if (n < min_n)
            throw Error(ErrorCode::ParamOutOfRange,
                        std::string(to_string(spec_.family)) + " needs n >= " + std::to_string(min_n));
        if (spec_.a.size() != n)
            throw Error(ErrorCode::DimensionMismatch, "coefficient list length must equal n");
        for (const auto& c : spec_.a)
            if (!finite(c))
                throw Error(ErrorCode::NonFiniteInput, "non-finite coefficient");
    };
    auto require_k = [&] {
        if (spec_.k < 1 || spec_.k + 1 > kMaxAtomDegree)
            throw Error(ErrorCode::ParamOutOfRange,
                        "k must satisfy 1 <= k <= " + std::to_string(kMaxAtomDegree - 1));
    };
    auto require_lambda = [&] {
        if (!finite(spec_.lambda) || std::abs(spec_.lambda) > 1.0)
            throw Error(ErrorCode::ParamOutOfRange, "|lambda| must be <= 1");
    };

    components_.assign(n, Component{});
    const auto& a = spec_.a;
    const int kp1 = spec_.k + 1;
    auto add = [&](std::size_t i, Complex c, std::vector<int> e) {
        if (c != Complex(0.0))
            components_[i].terms.push_back(Term{c, std::move(e)});
    };
    auto exp_atom = [&](std::size_t i) {
        components_[i].exponential_atom = true;
        components_[i].lambda = spec_.lambda;
    };

    switch (spec_.family) {
    case Family::Identity:
        break;
    case Family::Example1:
    case Family::Example2: {
        require_coeffs(2);
        require_k();
        if (spec_.family == Family::Example1)
            require_lambda();
        add(0, a[0], unit_exponents(n, {{0, 2}}));
        for (std::size_t j = 1; j < n; ++j)
            add(0, a[j], unit_exponents(n, {{j, kp1}}));
        add(1, a[1], unit_exponents(n, {{1, 2}}));
        for (std::size_t j = 2; j < n; ++j) {
            if (spec_.family == Family::Example1) {
                add(1, a[j], unit_exponents(n, {{j, kp1}}));
                exp_atom(j);
            } else {
                add(1, a[j], unit_exponents(n, {{j, 2}}));
                add(j, a[j], unit_exponents(n, {{j, 2}}));
            }
        }
        break;
    }
    case Family::Example3:
    case Family::Example4: {
        require_coeffs(2);
        require_k();
        if (spec_.family == Family::Example3)
            require_lambda();
        const std::size_t last = n - 1;
        for (std::size_t j = 1; j < last; ++j) {
            add(0, a[j], unit_exponents(n, {{j, kp1}}));
            add(j, a[j], unit_exponents(n, {{j, 1}, {last, kp1}}));
        }
        add(0, a[last], unit_exponents(n, {{0, 1}, {last, kp1}}));
        if (spec_.family == Family::Example3)
            exp_atom(last);
        else
            add(last, a[last], unit_exponents(n, {{last, 2}}));
        break;
    }
    case Family::Theorem4Quadratic: {
        if (n != 2)
            throw Error(ErrorCode::ParamOutOfRange, "Theorem4Quadratic is defined for n = 2");
        require_coeffs(2);
        if (!finite(spec_.a1_prime) || !finite(spec_.a2_prime))
            throw Error(ErrorCode::NonFiniteInput, "non-finite coefficient");
        add(0, a[0], unit_exponents(2, {{0, 2}}));
        add(0, spec_.a1_prime, unit_exponents(2, {{1, 2}}));
        add(1, a[1], unit_exponents(2, {{0, 2}}));
        add(1, spec_.a2_prime, unit_exponents(2, {{1, 2}}));
        break;
    }
    case Family::CustomTriangular: {
        if (spec_.components.size() != n)
            throw Error(ErrorCode::DimensionMismatch, "CustomTriangular needs one component per dimension");
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& t : spec_.components[i].terms) {
                if (t.exponents.size() != n)
                    throw Error(ErrorCode::DimensionMismatch, "monomial exponent list must have length n");
                if (!finite(t.coeff))
                    throw Error(ErrorCode::NonFiniteInput, "non-finite monomial coefficient");
                int degree = 0;
                for (std::size_t m = 0; m < n; ++m) {
                    const int e = t.exponents[m];
                    if (e < 0 || e > kMaxAtomDegree)
                        throw Error(ErrorCode::ParamOutOfRange,
                                    "monomial exponents must lie in [0, " + std::to_string(kMaxAtomDegree) + "]");
                    if (e > 0 && m < i)
                        throw Error(ErrorCode::ShapeMismatch,
                                    "component " + std::to_string(i + 1) + " may only depend on z_" +
                                        std::to_string(i + 1) + ".. z_n");
                    degree += e;
                }
                if (degree < 2)
                    throw Error(ErrorCode::ParamOutOfRange,
                                "custom monomials must have total degree >= 2 (linear part is fixed to z_i)");
                add(i, t.coeff, t.exponents);
            }
        }
        break;
    }
    }
}

void Mapping::check_dimension(ComplexSpan z) const {
    if (z.size() != spec_.n)
        throw Error(ErrorCode::DimensionMismatch, "point dimension differs from mapping dimension");
    if (!all_finite(z))
        throw Error(ErrorCode::NonFiniteInput, "point has non-finite coordinates");
}

ComplexVector Mapping::evaluate(ComplexSpan z) const {
    check_dimension(z);
    ComplexVector f(spec_.n);
    for (std::size_t i = 0; i < spec_.n; ++i) {
        const auto& comp = components_[i];
        Complex v = comp.exponential_atom ? z[i] * expm1_ratio(comp.lambda * z[i]) : z[i];
        for (const auto& t : comp.terms)
            v += monomial_derivative(t.coeff, t.exponents, z);
        f[i] = v;
    }
    return f;
}

DerivativeBundle Mapping::derivatives(ComplexSpan z) const {
    check_dimension(z);
    const std::size_t n = spec_.n;
    DerivativeBundle out{evaluate(z), ComplexMatrix(n), Tensor3(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const auto& comp = components_[i];
        if (comp.exponential_atom) {
            const Complex e = std::exp(comp.lambda * z[i]);
            out.jacobian(i, i) += e;
            out.hessian(i, i, i) += comp.lambda * e;
        } else {
            out.jacobian(i, i) += 1.0;
        }
        for (const auto& t : comp.terms) {
            for (std::size_t j = 0; j < n; ++j) {
                if (t.exponents[j] == 0)
                    continue;
                out.jacobian(i, j) += monomial_derivative(t.coeff, t.exponents, z, static_cast<int>(j));
                for (std::size_t l = j; l < n; ++l) {
                    const Complex h =
                        monomial_derivative(t.coeff, t.exponents, z, static_cast<int>(j), static_cast<int>(l));
                    out.hessian(i, j, l) += h;
                    if (l != j)
                        out.hessian(i, l, j) += h;
                }
            }
        }
    }
    return out;
}

bool Mapping::depends_on(std::size_t i, std::size_t m) const {
    if (i == m)
        return true;
    const auto& terms = components_.at(i).terms;
    return std::any_of(terms.begin(), terms.end(), [m](const Term& t) { return t.exponents[m] > 0; });
}

bool Mapping::couples(std::size_t i, std::size_t m1, std::size_t m2) const {
    const auto& terms = components_.at(i).terms;
    return std::any_of(terms.begin(), terms.end(), [&](const Term& t) {
        return t.exponents[m1] > 0 && t.exponents[m2] > 0;
    });
}

ComplexVector evaluate(const MappingSpec& spec, ComplexSpan z) { return Mapping(spec).evaluate(z); }

DerivativeBundle derivatives(const MappingSpec& spec, ComplexSpan z) { return Mapping(spec).derivatives(z); }

ComplexVector hessian_action(const DerivativeBundle& bundle, ComplexSpan b) {
    const std::size_t n = bundle.hessian.size();
    if (b.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "hessian_action: direction length differs from tensor size");
    ComplexVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            Complex row = 0.0;
            for (std::size_t l = 0; l < n; ++l)
                row += bundle.hessian(i, j, l) * b[l];
            acc += row * b[j];
        }
        out[i] = acc;
    }
    return out;
}

DerivativeBundle derivatives_fd(const MappingSpec& spec, ComplexSpan z, double h,
                                const std::optional<DomainSpec>& dom) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw Error(ErrorCode::ParamOutOfRange, "finite-difference step must be positive");
    const Mapping map(spec);
    const std::size_t n = map.n();
    if (z.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "point dimension differs from mapping dimension");

    auto probe = [&](const ComplexVector& x) {
        if (dom && !contains(*dom, x))
            throw Error(ErrorCode::StepTooLarge, "finite-difference probe leaves the domain");
        return map.evaluate(x);
    };
    auto shifted = [&](const ComplexVector& dir, Complex t) {
        ComplexVector x(z.begin(), z.end());
        for (std::size_t m = 0; m < n; ++m)
            x[m] += t * dir[m];
        return x;
    };
    // g''(0) for g(t) = f(z + t dir), holomorphic four-point stencil.
    auto second_along = [&](const ComplexVector& dir, double s) {
        const auto fp = probe(shifted(dir, s));
        const auto fm = probe(shifted(dir, -s));
        const auto fip = probe(shifted(dir, Complex(0.0, s)));
        const auto fim = probe(shifted(dir, Complex(0.0, -s)));
        ComplexVector d2(n);
        for (std::size_t i = 0; i < n; ++i)
            d2[i] = (fp[i] + fm[i] - fip[i] - fim[i]) / (2.0 * s * s);
        return d2;
    };
    auto scale = [&](std::size_t m) { return std::max(1.0, std::abs(z[m])); };

    DerivativeBundle out{probe(ComplexVector(z.begin(), z.end())), ComplexMatrix(n), Tensor3(n)};
    const double s0 = std::sqrt(h);

    for (std::size_t k = 0; k < n; ++k) {
        ComplexVector e(n);
        e[k] = 1.0;
        const double hk = h * scale(k);
        const auto fp = probe(shifted(e, hk));
        const auto fm = probe(shifted(e, -hk));
        for (std::size_t i = 0; i < n; ++i)
            out.jacobian(i, k) = (fp[i] - fm[i]) / (2.0 * hk);

        const auto d2 = second_along(e, s0 * scale(k));
        for (std::size_t i = 0; i < n; ++i)
            out.hessian(i, k, k) = d2[i];
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t l = j + 1; l < n; ++l) {
            ComplexVector plus(n), minus(n);
            plus[j] = 1.0;
            plus[l] = 1.0;
            minus[j] = 1.0;
            minus[l] = -1.0;
            const double s = s0 * std::max(scale(j), scale(l));
            const auto dp = second_along(plus, s);
            const auto dm = second_along(minus, s);
            for (std::size_t i = 0; i < n; ++i) {
                const Complex mixed = (dp[i] - dm[i]) / 4.0;
                out.hessian(i, j, l) = mixed;
                out.hessian(i, l, j) = mixed;
            }
        }
    }
    return out;
}

} // namespace dpconvex
