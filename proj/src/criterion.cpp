#include "dpconvex/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dpconvex {

double TangentConstraint::functional(ComplexSpan b) const {
    if (b.size() != c.size())
        throw Error(ErrorCode::DimensionMismatch, "direction length differs from constraint");
    double s = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j)
        s += (c[j] * b[j]).real();
    return s;
}

double TangentConstraint::relative_residual(ComplexSpan b) const {
    const double scale = norm2(c) * norm2(b);
    return scale == 0.0 ? 0.0 : std::abs(functional(b)) / scale;
}

TangentConstraint tangency(const DomainSpec& dom, ComplexSpan z) {
    const double rho = minkowski(dom, z).rho;
    if (rho == 0.0)
        throw Error(ErrorCode::ZeroPoint, "tangency constraint is undefined at z = 0");
    TangentConstraint tc{ComplexVector(z.size()), ComplexVector(z.begin(), z.end()), rho};
    for (std::size_t j = 0; j < z.size(); ++j) {
        const double a = std::abs(z[j]);
        if (a == 0.0)
            continue;
        // p_j |z_j/rho|^{p_j} / z_j = p_j (a/rho)^{p_j} conj(z_j) / a^2
        tc.c[j] = dom.p[j] * std::pow(a / rho, dom.p[j]) * std::conj(z[j]) / (a * a);
    }
    return tc;
}

ComplexVector project_tangent(const TangentConstraint& tc, ComplexSpan b_raw) {
    if (b_raw.size() != tc.c.size())
        throw Error(ErrorCode::DimensionMismatch, "direction length differs from constraint");
    double c2 = 0.0;
    for (const auto& v : tc.c)
        c2 += std::norm(v);
    if (c2 < 1e-28)
        throw Error(ErrorCode::DegenerateConstraint, "constraint normal vanishes");
    const double coef = tc.functional(b_raw) / c2;
    ComplexVector b(b_raw.begin(), b_raw.end());
    for (std::size_t j = 0; j < b.size(); ++j)
        b[j] -= coef * std::conj(tc.c[j]);
    return b;
}

CriterionEvaluation evaluate_J(const DomainSpec& dom, const Mapping& map, ComplexSpan z, ComplexSpan b) {
    dom.require_criterion_exponents();
    const std::size_t n = dom.n();
    if (map.n() != n || z.size() != n || b.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "domain, mapping, point and direction must share n");
    if (!all_finite(b))
        throw Error(ErrorCode::NonFiniteInput, "direction has non-finite entries");
    if (!contains(dom, z))
        throw Error(ErrorCode::ParamOutOfRange, "point lies outside the domain");

    const TangentConstraint tc = tangency(dom, z);
    const double rho = tc.rho;

    const DerivativeBundle d = map.derivatives(z);
    const ComplexVector w = solve_linear(d.jacobian, hessian_action(d, b));
    const ComplexVector grad = rho_bar_gradient(dom, z);

    double diagonal = 0.0;
    double weight = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double pj = dom.p[j];
        const double a = std::abs(z[j]);
        const double ratio = a / rho;
        // |z_j|^{p_j-2} / rho^{p_j} = (a/rho)^{p_j-2} / rho^2, with 0^0 = 1.
        diagonal += 0.5 * pj * pj * std::pow(ratio, pj - 2.0) / (rho * rho) * std::norm(b[j]);
        if (a == 0.0)
            continue;
        // |z_j/rho|^{p_j} (b_j/z_j)^2 = (a/rho)^{p_j-2} / rho^2 * (b_j conj(z_j)/a)^2
        const Complex unit_b = b[j] * std::conj(z[j]) / a;
        diagonal += pj * (0.5 * pj - 1.0) * std::pow(ratio, pj - 2.0) / (rho * rho) * (unit_b * unit_b).real();
        weight += pj * std::pow(ratio, pj);
    }
    const double curvature = 2.0 * weight / rho * hermitian_inner(w, grad).real();

    CriterionEvaluation ev;
    ev.z.assign(z.begin(), z.end());
    ev.b.assign(b.begin(), b.end());
    ev.j_value = diagonal - curvature;
    ev.constraint_residual = tc.relative_residual(b);
    ev.rho = rho;
    return ev;
}

CriterionEvaluation evaluate_J(const DomainSpec& dom, const MappingSpec& spec, ComplexSpan z, ComplexSpan b) {
    return evaluate_J(dom, Mapping(spec), z, b);
}

namespace {

struct Ranked {
    double j;
    std::size_t index;
    CriterionEvaluation ev;
};

bool ranked_less(const Ranked& x, const Ranked& y) {
    return x.j < y.j || (x.j == y.j && x.index < y.index);
}

struct ChunkResult {
    std::vector<Ranked> worst;
    std::size_t evaluated = 0;
    std::size_t singular = 0;
    std::size_t below_tol = 0;
};

} // namespace

ScanReport scan(const DomainSpec& dom, const MappingSpec& spec, const ScanOptions& options) {
    dom.require_criterion_exponents();
    if (options.samples == 0)
        throw Error(ErrorCode::ParamOutOfRange, "scan needs at least one sample");
    if (!(options.rho_floor >= 0.0 && options.rho_floor < 1.0))
        throw Error(ErrorCode::ParamOutOfRange, "rho_floor must lie in [0, 1)");
    const Mapping map(spec);
    if (map.n() != dom.n())
        throw Error(ErrorCode::DimensionMismatch, "mapping and domain dimensions differ");

    const std::size_t keep = std::max<std::size_t>(1, options.keep_worst);
    const std::size_t chunks = (options.samples + kScanChunk - 1) / kScanChunk;
    std::vector<ChunkResult> results(chunks);

    parallel_for(chunks, options.threads, [&](std::size_t chunk) {
        Rng rng = derive_rng(options.seed, chunk);
        ChunkResult& out = results[chunk];
        const std::size_t begin = chunk * kScanChunk;
        const std::size_t end = std::min(options.samples, begin + kScanChunk);
        for (std::size_t s = begin; s < end; ++s) {
            const ComplexVector z = sample_interior(dom, rng, options.rho_floor);
            const TangentConstraint tc = tangency(dom, z);
            ComplexVector b;
            double bn = 0.0;
            do {
                b = project_tangent(tc, sample_complex_gaussian(dom.n(), rng));
                bn = norm2(b);
            } while (bn == 0.0);
            for (auto& v : b)
                v /= bn;

            CriterionEvaluation ev;
            try {
                ev = evaluate_J(dom, map, z, b);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::SingularMatrix)
                    throw;
                ++out.singular;
                continue;
            }
            ++out.evaluated;
            if (ev.j_value < -options.tol)
                ++out.below_tol;
            Ranked r{ev.j_value, s, std::move(ev)};
            auto pos = std::upper_bound(out.worst.begin(), out.worst.end(), r, ranked_less);
            if (static_cast<std::size_t>(pos - out.worst.begin()) < keep) {
                out.worst.insert(pos, std::move(r));
                if (out.worst.size() > keep)
                    out.worst.pop_back();
            }
        }
    });

    ScanReport report;
    report.samples = options.samples;
    report.seed = options.seed;
    report.rho_floor = options.rho_floor;
    report.tol = options.tol;
    std::vector<Ranked> merged;
    for (auto& r : results) {
        report.evaluated += r.evaluated;
        report.singular_skipped += r.singular;
        report.below_tol += r.below_tol;
        for (auto& w : r.worst)
            merged.push_back(std::move(w));
    }
    if (report.evaluated == 0)
        throw Error(ErrorCode::AllSamplesSingular, "every sampled point had a singular Jacobian");
    std::sort(merged.begin(), merged.end(), ranked_less);
    if (merged.size() > keep)
        merged.resize(keep);
    for (auto& m : merged)
        report.worst.push_back(std::move(m.ev));
    report.witness = report.worst.front();
    report.min_j = report.witness.j_value;
    return report;
}

} // namespace dpconvex
