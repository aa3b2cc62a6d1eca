#include "dpconvex/hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace dpconvex {

namespace {

// Lower bound for |product of diagonal Jacobian factors| in the nonvanishing
// conditions.
constexpr double kNonsingularFloor = 1e-10;
constexpr double kHuge = 1e300;

double finite_or_huge(double v) { return std::isfinite(v) ? v : kHuge; }

PointCondition make(std::string id, double lhs, double rhs) {
    return PointCondition{std::move(id), finite_or_huge(lhs), std::isnan(rhs) ? -kHuge : rhs};
}

double pow_abs(Complex z, double e) { return std::pow(std::abs(z), e); }

// Read-only view over a derivative bundle with the absolute-value shorthand
// used by every condition system.
struct Partials {
    const DerivativeBundle& d;
    double D(std::size_t i, std::size_t j) const { return std::abs(d.jacobian(i, j)); }
    Complex Dc(std::size_t i, std::size_t j) const { return d.jacobian(i, j); }
    double H(std::size_t i, std::size_t j, std::size_t l) const { return std::abs(d.hessian(i, j, l)); }
    Complex Hc(std::size_t i, std::size_t j, std::size_t l) const { return d.hessian(i, j, l); }
    // |f_j''(z_j) / f_j'(z_j)| for a component whose own-variable part is single-variable.
    double curvature(std::size_t j) const { return std::abs(Hc(j, j, j) / Dc(j, j)); }
};

void check_inputs(const DomainSpec& dom, const Mapping& map, ComplexSpan z) {
    dom.require_criterion_exponents();
    if (map.n() != dom.n() || z.size() != dom.n())
        throw Error(ErrorCode::DimensionMismatch, "domain, mapping and point must share n");
}

} // namespace

void require_theorem1_shape(const Mapping& map) {
    const std::size_t n = map.n();
    if (n < 2)
        throw Error(ErrorCode::ShapeMismatch, "theorem1 needs n >= 2");
    if (map.depends_on(1, 0))
        throw Error(ErrorCode::ShapeMismatch, "component 2 must not depend on z_1");
    for (std::size_t j = 2; j < n; ++j)
        for (std::size_t m = 0; m < n; ++m)
            if (m != j && map.depends_on(j, m))
                throw Error(ErrorCode::ShapeMismatch,
                            "component " + std::to_string(j + 1) + " must depend on z_" + std::to_string(j + 1) +
                                " only");
}

void require_theorem2_shape(const Mapping& map) {
    const std::size_t n = map.n();
    if (n < 2)
        throw Error(ErrorCode::ShapeMismatch, "theorem2 needs n >= 2");
    const std::size_t last = n - 1;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t m = 0; m < n; ++m) {
            const bool allowed = m == j || (j < last && m == last);
            if (!allowed && map.depends_on(j, m))
                throw Error(ErrorCode::ShapeMismatch,
                            "component " + std::to_string(j + 1) + " depends on z_" + std::to_string(m + 1) +
                                ", outside the (z_j, z_n) pattern");
        }
}

void require_theorem3_shape(const Mapping& map, int hub) {
    const std::size_t n = map.n();
    if (n < 2)
        throw Error(ErrorCode::ShapeMismatch, "theorem3 needs n >= 2");
    if (hub < 2 || static_cast<std::size_t>(hub) > n)
        throw Error(ErrorCode::ParamOutOfRange, "theorem3 index k must satisfy 2 <= k <= n");
    const std::size_t k = static_cast<std::size_t>(hub - 1);
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t m = 0; m < n; ++m) {
            const bool allowed = m == j || (j != k && m == k);
            if (!allowed && map.depends_on(j, m))
                throw Error(ErrorCode::ShapeMismatch,
                            "component " + std::to_string(j + 1) + " depends on z_" + std::to_string(m + 1));
        }
        if (j != k && map.couples(j, j, k))
            throw Error(ErrorCode::ShapeMismatch,
                        "component " + std::to_string(j + 1) + " must split as p_j(z_j) + f_j(z_k)");
    }
}

std::vector<PointCondition> theorem1_conditions(const DomainSpec& dom, const Mapping& map, ComplexSpan z) {
    check_inputs(dom, map, z);
    const std::size_t n = dom.n();
    const auto& p = dom.p;
    const DerivativeBundle bundle = map.derivatives(z);
    const Partials q{bundle};
    std::vector<PointCondition> out;

    Complex prod = q.Dc(0, 0) * q.Dc(1, 1);
    for (std::size_t j = 2; j < n; ++j)
        prod *= q.Dc(j, j);
    out.push_back(make("T1.1a", kNonsingularFloor, std::abs(prod)));
    for (std::size_t j = 2; j < n; ++j)
        out.push_back(make("T1.1b", std::abs(z[j]) * q.H(j, j, j), q.D(j, j)));

    const double d00 = q.D(0, 0);
    const double d11 = q.D(1, 1);
    double s = 0.0;
    for (std::size_t l = 0; l < n; ++l)
        s += std::abs(z[0]) * q.H(0, 0, l);
    out.push_back(make("T1.2a", s, d00));
    double s2 = 0.0;
    for (std::size_t l = 1; l < n; ++l)
        s2 += std::abs(z[1]) * q.H(1, 1, l);
    out.push_back(make("T1.2b", s2, d11));

    {
        double lhs = 0.0;
        for (std::size_t l = 0; l < n; ++l)
            lhs += q.H(0, 1, l) / d00;
        for (std::size_t l = 1; l < n; ++l)
            lhs += q.D(0, 1) / d11 * q.H(1, 1, l) / d00;
        lhs *= p[0];
        const double rhs = (1.0 - s2 / d11) * p[1] * pow_abs(z[1], p[1] - 2.0);
        out.push_back(make("T1.3", lhs, rhs));
    }

    for (std::size_t j = 2; j < n; ++j) {
        const double curv = q.curvature(j);
        double first = 0.0;
        for (std::size_t l = 0; l < n; ++l)
            first += q.H(0, j, l) / d00;
        for (std::size_t l = 1; l < n; ++l)
            first += q.D(0, 1) / d11 * q.H(1, j, l) / d00;
        first += q.D(0, 1) / d00 * q.D(1, j) / d11 * curv;
        first += q.D(0, j) / d00 * curv;
        double second = 0.0;
        for (std::size_t l = 1; l < n; ++l)
            second += q.H(1, j, l) / d11;
        second += q.D(1, j) / d11 * curv;
        const double lhs = p[0] * first + p[1] * second;
        const double rhs = p[j] * pow_abs(z[j], p[j] - 2.0) * (1.0 - std::abs(z[j]) * curv);
        out.push_back(make("T1.4", lhs, rhs));
    }
    return out;
}

std::vector<PointCondition> theorem2_conditions(const DomainSpec& dom, const Mapping& map, ComplexSpan z) {
    check_inputs(dom, map, z);
    const std::size_t n = dom.n();
    const std::size_t last = n - 1;
    const auto& p = dom.p;
    const DerivativeBundle bundle = map.derivatives(z);
    const Partials q{bundle};
    std::vector<PointCondition> out;

    Complex prod = 1.0;
    for (std::size_t j = 0; j < n; ++j)
        prod *= q.Dc(j, j);
    out.push_back(make("T2.1a", kNonsingularFloor, std::abs(prod)));
    const double curv_n = q.curvature(last);
    out.push_back(make("T2.1b", std::abs(z[last]) * q.H(last, last, last), q.D(last, last)));

    const double d00 = q.D(0, 0);
    double s = 0.0;
    for (std::size_t l = 0; l < n; ++l)
        s += std::abs(z[0]) * q.H(0, 0, l);
    out.push_back(make("T2.2a", s, d00));
    for (std::size_t j = 1; j < last; ++j)
        out.push_back(make("T2.2b", std::abs(z[j]) * (q.H(j, j, j) + q.H(j, j, last)), q.D(j, j)));

    for (std::size_t j = 1; j < last; ++j) {
        double inner = q.D(0, j) * (q.H(j, j, j) + q.H(j, j, last)) / q.D(j, j);
        for (std::size_t l = 0; l < n; ++l)
            inner += q.H(0, j, l);
        const double lhs = p[0] / d00 * inner;
        const double rhs = p[j] * pow_abs(z[j], p[j] - 2.0) *
                           (1.0 - std::abs(z[j]) * (q.H(j, j, j) + q.H(j, j, last)) / q.D(j, j));
        out.push_back(make("T2.3", lhs, rhs));
    }

    {
        double lhs = 0.0;
        for (std::size_t j = 1; j < last; ++j)
            lhs += p[j] / q.D(j, j) * (q.H(j, j, last) + q.H(j, last, last) + q.D(j, last) * curv_n);
        double inner = 0.0;
        for (std::size_t l = 0; l < n; ++l)
            inner += q.H(0, last, l);
        for (std::size_t j = 1; j < last; ++j)
            inner += q.D(0, j) * (q.H(j, j, last) + q.H(j, last, last)) / q.D(j, j);
        inner += q.D(0, last) * curv_n;
        for (std::size_t j = 1; j < last; ++j)
            inner += q.D(0, j) * q.D(j, last) / q.D(j, j) * curv_n;
        lhs += p[0] / d00 * inner;
        const double rhs = p[last] * pow_abs(z[last], p[last] - 2.0) * (1.0 - std::abs(z[last]) * curv_n);
        out.push_back(make("T2.4", lhs, rhs));
    }
    return out;
}

std::vector<PointCondition> theorem3_conditions(const DomainSpec& dom, const Mapping& map, int hub,
                                                ComplexSpan z) {
    check_inputs(dom, map, z);
    if (hub < 2 || static_cast<std::size_t>(hub) > dom.n())
        throw Error(ErrorCode::ParamOutOfRange, "theorem3 index k must satisfy 2 <= k <= n");
    const std::size_t n = dom.n();
    const std::size_t k = static_cast<std::size_t>(hub - 1);
    const auto& p = dom.p;
    const DerivativeBundle bundle = map.derivatives(z);
    const Partials q{bundle};
    std::vector<PointCondition> out;

    Complex prod = 1.0;
    for (std::size_t j = 0; j < n; ++j)
        prod *= q.Dc(j, j);
    out.push_back(make("T3.1a", kNonsingularFloor, std::abs(prod)));
    for (std::size_t j = 1; j < n; ++j)
        out.push_back(make("T3.1b", std::abs(z[j]) * q.H(j, j, j), q.D(j, j)));

    const double d00 = q.D(0, 0);
    double s = 0.0;
    for (std::size_t l = 0; l < n; ++l)
        s += std::abs(z[0]) * q.H(0, 0, l);
    out.push_back(make("T3.2", s, d00));

    for (std::size_t j = 1; j < n; ++j) {
        if (j == k)
            continue;
        const double curv = q.curvature(j);
        double lhs = p[0] * q.D(0, j) * curv / d00;
        for (std::size_t l = 0; l < n; ++l)
            lhs += p[0] * q.H(0, j, l) / d00;
        const double rhs = p[j] * pow_abs(z[j], p[j] - 2.0) * (1.0 - std::abs(z[j]) * curv);
        out.push_back(make("T3.3", lhs, rhs));
    }

    {
        const double curv_k = q.curvature(k);
        const Complex ratio_k = q.Hc(k, k, k) / q.Dc(k, k);
        double lhs = 0.0;
        for (std::size_t j = 1; j < n; ++j) {
            if (j == k)
                continue;
            const Complex f2 = q.Hc(j, k, k) / q.Dc(j, j);
            const Complex f1 = q.Dc(j, k) / q.Dc(j, j);
            const Complex lead = q.Dc(0, j) / q.Dc(0, 0);
            lhs += std::abs(f2) * p[j];
            lhs += std::abs(f1) * curv_k * p[j];
            lhs += std::abs(f2 * lead) * p[0];
            lhs += std::abs(f1 * ratio_k * lead) * p[0];
        }
        for (std::size_t l = 0; l < n; ++l)
            lhs += q.H(0, l, k) / d00 * p[0];
        lhs += std::abs(ratio_k * q.Dc(0, k) / q.Dc(0, 0)) * p[0];
        const double rhs = (1.0 - std::abs(z[k]) * curv_k) * p[k] * pow_abs(z[k], p[k] - 2.0);
        out.push_back(make("T3.4", lhs, rhs));
    }
    return out;
}

namespace {

using ConditionFn = std::function<std::vector<PointCondition>(ComplexSpan)>;

std::vector<ComplexVector> probe_points(const DomainSpec& dom, std::uint64_t seed) {
    const std::size_t n = dom.n();
    std::vector<ComplexVector> pts;
    const std::array<Complex, 4> phases{Complex(1.0, 0.0), Complex(0.0, 1.0), Complex(-1.0, 0.0),
                                        std::polar(1.0, 0.25 * std::numbers::pi)};
    for (std::size_t j = 0; j < n; ++j)
        for (double r : {0.05, 0.5, 0.95})
            for (const Complex& ph : phases) {
                ComplexVector z(n);
                z[j] = r * ph;
                pts.push_back(std::move(z));
            }
    // Shrink one coordinate of random interior points toward 0, where the
    // |z_j|^{p_j-2} right-hand sides are smallest.
    Rng rng = derive_rng(seed, 1);
    for (int base = 0; base < 16; ++base) {
        const ComplexVector z0 = sample_interior(dom, rng, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            for (double scale : {0.0, 1e-6, 1e-3, 1e-1}) {
                ComplexVector z = z0;
                z[j] *= scale;
                if (norm_inf(z) > 0.0)
                    pts.push_back(std::move(z));
            }
    }
    return pts;
}

CheckReport run_sampled_check(const std::string& theorem, const DomainSpec& dom, const CheckOptions& options,
                              const ConditionFn& conditions) {
    std::vector<ComplexVector> points;
    for (const auto& z : options.extra_points) {
        if (z.size() != dom.n())
            throw Error(ErrorCode::DimensionMismatch, "injected point has wrong dimension");
        if (!contains(dom, z) || norm_inf(z) == 0.0)
            throw Error(ErrorCode::ParamOutOfRange, "injected points must lie in the domain minus the origin");
        points.push_back(z);
    }
    if (options.probe_axes) {
        auto probes = probe_points(dom, options.seed);
        points.insert(points.end(), std::make_move_iterator(probes.begin()), std::make_move_iterator(probes.end()));
    }
    Rng rng = derive_rng(options.seed, 0);
    for (std::size_t s = 0; s < options.samples; ++s)
        points.push_back(sample_interior(dom, rng, 0.0));

    CheckReport report;
    report.theorem = theorem;
    report.seed = options.seed;
    std::map<std::string, std::size_t> slot;
    for (const auto& z : points) {
        for (auto& c : conditions(z)) {
            const double margin = c.rhs - c.lhs;
            auto it = slot.find(c.condition_id);
            if (it == slot.end()) {
                slot.emplace(c.condition_id, report.margins.size());
                report.margins.push_back(ConditionMargin{c.condition_id, margin, c.lhs, c.rhs, z});
            } else if (margin < report.margins[it->second].margin) {
                report.margins[it->second] = ConditionMargin{c.condition_id, margin, c.lhs, c.rhs, z};
            }
        }
        ++report.samples_used;
    }
    report.passed = std::all_of(report.margins.begin(), report.margins.end(),
                                [](const ConditionMargin& m) { return m.margin >= kPassThreshold; });
    report.notes.push_back("sampled evidence: conditions were evaluated on " +
                           std::to_string(report.samples_used) +
                           " points of the domain; a pass is not a proof for every z");
    return report;
}

void require_dims(const DomainSpec& dom, const MappingSpec& spec) {
    dom.require_criterion_exponents();
    if (spec.n != dom.n())
        throw Error(ErrorCode::DimensionMismatch, "mapping and domain dimensions differ");
}

} // namespace

CheckReport check_theorem1(const DomainSpec& dom, const MappingSpec& spec, const CheckOptions& options) {
    require_dims(dom, spec);
    const Mapping map(spec);
    require_theorem1_shape(map);
    CheckReport r = run_sampled_check("theorem1", dom, options,
                                      [&](ComplexSpan z) { return theorem1_conditions(dom, map, z); });
    r.notes.push_back("T1.3 second sum uses |D_2 f_1 / D_2 f_2| * |d2 f_2 / dz_2 dz_l| / |D_1 f_1| summed over l >= 2; "
                      "the alternative reading with an l-independent summand |D_2 f_1 / D_2 f_2| is not evaluated");
    return r;
}

CheckReport check_corollary1(const DomainSpec& dom, const MappingSpec& spec, const CheckOptions& options) {
    if (dom.n() != 3)
        throw Error(ErrorCode::ShapeMismatch, "corollary1 is the n = 3 case");
    CheckReport r = check_theorem1(dom, spec, options);
    r.theorem = "corollary1";
    return r;
}

CheckReport check_theorem2(const DomainSpec& dom, const MappingSpec& spec, const CheckOptions& options) {
    require_dims(dom, spec);
    const Mapping map(spec);
    require_theorem2_shape(map);
    return run_sampled_check("theorem2", dom, options,
                             [&](ComplexSpan z) { return theorem2_conditions(dom, map, z); });
}

CheckReport check_theorem3(const DomainSpec& dom, const MappingSpec& spec, int hub, const CheckOptions& options) {
    require_dims(dom, spec);
    const Mapping map(spec);
    require_theorem3_shape(map, hub);
    CheckReport r = run_sampled_check("theorem3", dom, options,
                                      [&](ComplexSpan z) { return theorem3_conditions(dom, map, hub, z); });
    r.notes.push_back("condition T3.3 is applied to every j other than 1 and k, including j = n");
    return r;
}

namespace {

CheckReport finish(std::string theorem, std::vector<ConditionMargin> margins) {
    CheckReport r;
    r.theorem = std::move(theorem);
    r.margins = std::move(margins);
    r.passed = std::all_of(r.margins.begin(), r.margins.end(),
                           [](const ConditionMargin& m) { return m.margin >= kPassThreshold; });
    r.notes.push_back("coefficient inequalities evaluated exactly; no sampling");
    return r;
}

ConditionMargin exact(std::string id, double lhs, double rhs) {
    lhs = finite_or_huge(lhs);
    return ConditionMargin{std::move(id), rhs - lhs, lhs, rhs, {}};
}

} // namespace

CheckReport check_theorem4(const MappingSpec& spec) {
    if (spec.family != Family::Theorem4Quadratic)
        throw Error(ErrorCode::ShapeMismatch, "theorem4 applies to the Theorem4Quadratic family only");
    Mapping{spec};
    const double a1 = std::abs(spec.a[0]);
    const double a2 = std::abs(spec.a[1]);
    const double b1 = std::abs(spec.a1_prime);
    const double b2 = std::abs(spec.a2_prime);

    const double eq4 = 4 * a1 + 2 * b2 + 8 * a1 * b2 + 2 * a2 + 4 * a1 * a2 + 8 * b1 * a2 + 4 * a1 * a2;
    const double eq5 = 2 * a1 + 2 * b1 + 4 * b1 * b2 + 4 * b2 + 8 * a1 * b2 + 4 * b1 * b2 + 8 * b1 * a2;
    CheckReport r = finish("theorem4", {exact("T4.eq4", eq4, 1.0), exact("T4.eq5", eq5, 1.0)});
    return r;
}

CheckReport check_theorem4(const DomainSpec& dom, const MappingSpec& spec) {
    dom.require_criterion_exponents();
    if (dom.n() != 2 || dom.p[0] != dom.p[1])
        throw Error(ErrorCode::ParamOutOfRange, "theorem4 is stated on B^2_p: n = 2 with p_1 = p_2");
    return check_theorem4(spec);
}

namespace {

struct ExampleInputs {
    std::size_t n;
    std::vector<double> p;
    double k;
    std::vector<double> a;
};

ExampleInputs example_inputs(const DomainSpec& dom, const MappingSpec& spec, Family family) {
    if (spec.family != family)
        throw Error(ErrorCode::ShapeMismatch,
                    "validator expects family " + std::string(to_string(family)) + ", got " +
                        std::string(to_string(spec.family)));
    dom.require_criterion_exponents();
    Mapping{spec};
    if (spec.n != dom.n())
        throw Error(ErrorCode::DimensionMismatch, "mapping and domain dimensions differ");
    const auto& p = dom.p;
    for (std::size_t j = 1; j < p.size(); ++j)
        if (p[j] < p[0])
            throw Error(ErrorCode::ParamOutOfRange, "the examples require p_j >= p_1 >= 2");
    const double pmax = *std::max_element(p.begin(), p.end());
    if (!(spec.k < pmax && pmax <= spec.k + 1))
        throw Error(ErrorCode::ParamOutOfRange, "k must satisfy k < max p_j <= k + 1");
    ExampleInputs in{spec.n, p, static_cast<double>(spec.k), {}};
    for (const auto& c : spec.a)
        in.a.push_back(std::abs(c));
    return in;
}

double lambda_modulus(const MappingSpec& spec) {
    const double l = std::abs(spec.lambda);
    if (!(l > 0.0 && l <= 1.0))
        throw Error(ErrorCode::ParamOutOfRange, "the examples require 0 < |lambda| <= 1");
    return l;
}

// [(p_1 + p_2)/(1 - 2a) + p_1 (k+1) a / (1 - 2a)^2]
double first_family_factor(const ExampleInputs& in, double a) {
    const double q = 1.0 - 2.0 * a;
    return (in.p[0] + in.p[1]) / q + in.p[0] * (in.k + 1.0) * a / (q * q);
}

// sum_{j=2}^{n-1} p_j|a_j|/(1-|a_j|) + a p_1/(1-a) (1 + (k+1) sum_{j=2}^{n-1} |a_j|/(1-|a_j|))
double coupled_family_lhs(const ExampleInputs& in, double a) {
    double weighted = 0.0;
    double plain = 0.0;
    for (std::size_t j = 1; j + 1 < in.n; ++j) {
        weighted += in.p[j] * in.a[j] / (1.0 - in.a[j]);
        plain += in.a[j] / (1.0 - in.a[j]);
    }
    return weighted + a * in.p[0] / (1.0 - a) * (1.0 + (in.k + 1.0) * plain);
}

std::string per_index(const char* id, std::size_t j) { return std::string(id) + "[j=" + std::to_string(j + 1) + "]"; }

} // namespace

CheckReport validate_example1(const DomainSpec& dom, const MappingSpec& spec) {
    const auto in = example_inputs(dom, spec, Family::Example1);
    const double lam = lambda_modulus(spec);
    const double a = *std::max_element(in.a.begin(), in.a.end());
    const double k = in.k;
    std::vector<ConditionMargin> m;
    m.push_back(exact("E1.1", a, (1.0 - lam) / ((k + 1) * (k + 1) + 4.0)));
    const double factor = first_family_factor(in, a);
    for (std::size_t j = 2; j < in.n; ++j)
        m.push_back(exact(per_index("E1.2", j), factor * in.a[j], in.p[j] * (1.0 - lam) / ((k + 1) * (k + lam))));
    return finish("example1", std::move(m));
}

CheckReport validate_example2(const DomainSpec& dom, const MappingSpec& spec) {
    const auto in = example_inputs(dom, spec, Family::Example2);
    const double a = *std::max_element(in.a.begin(), in.a.end());
    const double k = in.k;
    std::vector<ConditionMargin> m;
    m.push_back(exact("E2.1", a, 1.0 / ((k + 1) * (k + 1) + 4.0)));
    const double factor = first_family_factor(in, a);
    for (std::size_t j = 2; j < in.n; ++j) {
        const double s = 2.0 * in.a[j] / (1.0 - 2.0 * in.a[j]);
        m.push_back(exact(per_index("E2.2", j), factor * in.a[j], in.p[j] * (1.0 - s) / ((k + 1) * (k + s))));
    }
    return finish("example2", std::move(m));
}

CheckReport validate_example3(const DomainSpec& dom, const MappingSpec& spec) {
    const auto in = example_inputs(dom, spec, Family::Example3);
    const double lam = lambda_modulus(spec);
    const double a = *std::max_element(in.a.begin() + 1, in.a.end());
    const double k = in.k;
    std::vector<ConditionMargin> m;
    m.push_back(exact("E3.1", a, (1.0 - lam) / (2.0 * (k + 1) * (k + 1) * (k + 1 + lam) + 1.0 + lam)));
    m.push_back(exact("E3.2", coupled_family_lhs(in, a), in.p.back() * (1.0 - lam) / ((k + 1) * (k + 1 + lam))));
    return finish("example3", std::move(m));
}

CheckReport validate_example4(const DomainSpec& dom, const MappingSpec& spec) {
    const auto in = example_inputs(dom, spec, Family::Example4);
    const double an = in.a.back();
    if (!(an > 0.0 && an <= 0.25))
        throw Error(ErrorCode::ParamOutOfRange, "Example4 requires 0 < |a_n| <= 1/4");
    const double s = 2.0 * an / (1.0 - 2.0 * an);
    const double a = *std::max_element(in.a.begin() + 1, in.a.end());
    const double k = in.k;
    std::vector<ConditionMargin> m;
    m.push_back(exact("E4.1", a, (1.0 - s) / (2.0 * (k + 1) * (k + 1) * (k + 1 + s) + 1.0 - s)));
    m.push_back(exact("E4.2", coupled_family_lhs(in, a), in.p.back() * (1.0 - s) / ((k + 1) * (k + 1 + s))));
    return finish("example4", std::move(m));
}

CheckReport validate_example(int which, const DomainSpec& dom, const MappingSpec& spec) {
    switch (which) {
    case 1: return validate_example1(dom, spec);
    case 2: return validate_example2(dom, spec);
    case 3: return validate_example3(dom, spec);
    case 4: return validate_example4(dom, spec);
    default: throw Error(ErrorCode::ParamOutOfRange, "example number must be 1..4");
    }
}

} // namespace dpconvex
