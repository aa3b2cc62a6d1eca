#pragma once

#include "dpconvex/geometry.hpp"
#include "dpconvex/numerics.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dpconvex {

enum class Family {
    Identity,
    Example1,
    Example2,
    Example3,
    Example4,
    Theorem4Quadratic,
    CustomTriangular,
};

std::string_view to_string(Family family) noexcept;
Family family_from_string(std::string_view name);

/// c * prod_m z_m^{e_m}
struct Monomial {
    Complex coeff{0.0};
    std::vector<int> exponents;
};

/// Higher-order part of one component of a CustomTriangular map. The
/// component is z_i + sum(terms).
struct CustomComponent {
    std::vector<Monomial> terms;
};

/// A holomorphic map normalized by f(0) = 0, Df(0) = I.
///
/// Family formulas (1-based indices, a = coeffs):
///   Identity            f = z
///   Example1            f_1 = z_1 + a_1 z_1^2 + sum_{j>=2} a_j z_j^{k+1}
///                       f_2 = z_2 + a_2 z_2^2 + sum_{j>=3} a_j z_j^{k+1}
///                       f_j = (e^{lambda z_j} - 1)/lambda,  j >= 3
///   Example2            f_1 as Example1, f_2 = z_2 + a_2 z_2^2 + sum_{j>=3} a_j z_j^2
///                       f_j = z_j + a_j z_j^2,  j >= 3
///   Example3            f_1 = z_1 + sum_{j=2}^{n-1} a_j z_j^{k+1} + a_n z_1 z_n^{k+1}
///                       f_j = z_j + a_j z_j z_n^{k+1},  2 <= j <= n-1
///                       f_n = (e^{lambda z_n} - 1)/lambda
///   Example4            as Example3 with f_n = z_n + a_n z_n^2
///   Theorem4Quadratic   f = (z_1 + a_1 z_1^2 + a'_1 z_2^2, a_2 z_1^2 + z_2 + a'_2 z_2^2)
///   CustomTriangular    f_i = z_i + sum(components[i].terms), terms of degree >= 2
///                       in z_i..z_n only
struct MappingSpec {
    Family family = Family::Identity;
    std::size_t n = 0;
    std::vector<Complex> a;
    Complex a1_prime{0.0};
    Complex a2_prime{0.0};
    Complex lambda{0.0};
    int k = 1;
    std::vector<CustomComponent> components;

    static MappingSpec identity(std::size_t n);
    static MappingSpec example1(std::vector<Complex> a, int k, Complex lambda);
    static MappingSpec example2(std::vector<Complex> a, int k);
    static MappingSpec example3(std::vector<Complex> a, int k, Complex lambda);
    static MappingSpec example4(std::vector<Complex> a, int k);
    static MappingSpec theorem4(Complex a1, Complex a2, Complex a1_prime, Complex a2_prime);
    static MappingSpec custom(std::vector<CustomComponent> components);
};

inline constexpr int kMaxAtomDegree = 8;

/// Rank-3 tensor with entry (i, j, l) = d^2 f_i / dz_j dz_l.
class Tensor3 {
public:
    Tensor3() = default;
    explicit Tensor3(std::size_t n) : n_(n), data_(n * n * n) {}

    std::size_t size() const noexcept { return n_; }
    Complex& operator()(std::size_t i, std::size_t j, std::size_t l) { return data_[(i * n_ + j) * n_ + l]; }
    const Complex& operator()(std::size_t i, std::size_t j, std::size_t l) const {
        return data_[(i * n_ + j) * n_ + l];
    }

private:
    std::size_t n_ = 0;
    std::vector<Complex> data_;
};

struct DerivativeBundle {
    ComplexVector value;
    ComplexMatrix jacobian;
    Tensor3 hessian;
};

/// Validated, compiled form of a MappingSpec. Every family reduces to
/// components of the form  L_i(z_i) + sum of monomials, where L_i is either
/// z_i or (e^{lambda z_i} - 1)/lambda, so first and second derivatives are
/// exact closed forms.
class Mapping {
public:
    explicit Mapping(MappingSpec spec);

    const MappingSpec& spec() const noexcept { return spec_; }
    std::size_t n() const noexcept { return spec_.n; }

    ComplexVector evaluate(ComplexSpan z) const;
    DerivativeBundle derivatives(ComplexSpan z) const;

    /// True when component i (0-based) depends on variable m.
    bool depends_on(std::size_t i, std::size_t m) const;
    /// True when some monomial of component i contains both z_m1 and z_m2.
    bool couples(std::size_t i, std::size_t m1, std::size_t m2) const;

private:
    struct Term {
        Complex coeff;
        std::vector<int> exponents;
    };
    struct Component {
        bool exponential_atom = false;
        Complex lambda{0.0};
        std::vector<Term> terms;
    };

    void compile();
    void check_dimension(ComplexSpan z) const;

    MappingSpec spec_;
    std::vector<Component> components_;
};

ComplexVector evaluate(const MappingSpec& spec, ComplexSpan z);
DerivativeBundle derivatives(const MappingSpec& spec, ComplexSpan z);

/// D^2 f(z)(b, b): component i is sum_j sum_l H(i,j,l) b_l b_j.
ComplexVector hessian_action(const DerivativeBundle& bundle, ComplexSpan b);

inline constexpr double kDefaultFdStep = 1e-5;

/// Finite-difference derivatives computed from evaluate() alone.
///
/// The Jacobian uses the central difference (f(z + h e_k) - f(z - h e_k)) / 2h.
/// Second derivatives use a step s = sqrt(h) and the holomorphic four-point
/// stencil  g''(0) ~ [g(s) + g(-s) - g(is) - g(-is)] / (2 s^2)  along
/// directions e_j and e_j +/- e_l (polarization for the mixed entries). Steps
/// are scaled by max(1, |z_j|). When `dom` is given every probe point must
/// stay inside it, otherwise StepTooLarge.
DerivativeBundle derivatives_fd(const MappingSpec& spec, ComplexSpan z, double h = kDefaultFdStep,
                                const std::optional<DomainSpec>& dom = std::nullopt);

} // namespace dpconvex
