#include "dpconvex/falsifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace dpconvex {

void SearchConfig::validate() const {
    if (restarts < 1)
        throw Error(ErrorCode::ParamOutOfRange, "search needs at least one restart");
    if (iterations < 1)
        throw Error(ErrorCode::ParamOutOfRange, "search needs at least one iteration per restart");
    if (!(rho_floor > 0.0 && rho_floor < rho_ceiling && rho_ceiling < 1.0))
        throw Error(ErrorCode::ParamOutOfRange, "search shell must satisfy 0 < rho_floor < rho_ceiling < 1");
    if (!(simplex_tol >= 0.0))
        throw Error(ErrorCode::ParamOutOfRange, "simplex tolerance must be nonnegative");
}

namespace {

using Point = std::vector<double>;

struct Decoded {
    ComplexVector z;
    ComplexVector b;
};

// z = r * v / rho(v) with r = floor + (ceil - floor) * t/(1+t), t = rho(v),
// i.e. the radius is a sigmoid of log rho(v).
std::optional<Decoded> decode(const DomainSpec& dom, const SearchConfig& cfg, const Point& x) {
    const std::size_t n = dom.n();
    ComplexVector v(n), braw(n);
    for (std::size_t j = 0; j < n; ++j) {
        v[j] = Complex(x[2 * j], x[2 * j + 1]);
        braw[j] = Complex(x[2 * n + 2 * j], x[2 * n + 2 * j + 1]);
    }
    if (!all_finite(v) || !all_finite(braw))
        return std::nullopt;
    const double t = minkowski(dom, v).rho;
    if (!(t > 0.0) || !std::isfinite(t))
        return std::nullopt;
    const double r = cfg.rho_floor + (cfg.rho_ceiling - cfg.rho_floor) * (t / (1.0 + t));
    Decoded d;
    d.z.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        d.z[j] = v[j] * (r / t);
    if (!contains(dom, d.z))
        return std::nullopt;
    try {
        d.b = project_tangent(tangency(dom, d.z), braw);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::DegenerateConstraint || e.code() == ErrorCode::ZeroPoint)
            return std::nullopt;
        throw;
    }
    const double bn = norm2(d.b);
    if (!(bn > 1e-150))
        return std::nullopt;
    for (auto& c : d.b)
        c /= bn;
    return d;
}

struct Objective {
    const DomainSpec& dom;
    const Mapping& map;
    const SearchConfig& cfg;
    std::size_t singular_hits = 0;

    double operator()(const Point& x) {
        const auto d = decode(dom, cfg, x);
        if (!d)
            return kSingularPenalty;
        try {
            const double j = evaluate_J(dom, map, d->z, d->b).j_value;
            return std::isfinite(j) ? j : kSingularPenalty;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SingularMatrix)
                throw;
            ++singular_hits;
            return kSingularPenalty;
        }
    }
};

struct LocalResult {
    Point best;
    double value = kSingularPenalty;
    bool converged = false;
    std::size_t singular_hits = 0;
};

LocalResult nelder_mead(Objective& f, Point x0, std::size_t iterations, double tol) {
    const std::size_t m = x0.size();
    std::vector<Point> simplex(m + 1, x0);
    for (std::size_t i = 0; i < m; ++i)
        simplex[i + 1][i] += 0.25 * std::max(1.0, std::abs(x0[i]));
    std::vector<double> fv(m + 1);
    for (std::size_t i = 0; i <= m; ++i)
        fv[i] = f(simplex[i]);

    std::vector<std::size_t> order(m + 1);
    LocalResult out;
    for (std::size_t it = 0; it < iterations; ++it) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t lo = order.front();
        const std::size_t hi = order.back();
        const std::size_t second = order[m - 1];
        if (fv[hi] - fv[lo] <= tol * std::max(1.0, std::abs(fv[lo]))) {
            out.converged = true;
            break;
        }

        Point centroid(m, 0.0);
        for (std::size_t i = 0; i <= m; ++i)
            if (i != hi)
                for (std::size_t k = 0; k < m; ++k)
                    centroid[k] += simplex[i][k] / static_cast<double>(m);
        auto along = [&](double t) {
            Point p(m);
            for (std::size_t k = 0; k < m; ++k)
                p[k] = centroid[k] + t * (simplex[hi][k] - centroid[k]);
            return p;
        };

        Point xr = along(-1.0);
        const double fr = f(xr);
        if (fr < fv[lo]) {
            Point xe = along(-2.0);
            const double fe = f(xe);
            if (fe < fr) {
                simplex[hi] = std::move(xe);
                fv[hi] = fe;
            } else {
                simplex[hi] = std::move(xr);
                fv[hi] = fr;
            }
            continue;
        }
        if (fr < fv[second]) {
            simplex[hi] = std::move(xr);
            fv[hi] = fr;
            continue;
        }
        const bool outside = fr < fv[hi];
        Point xc = along(outside ? -0.5 : 0.5);
        const double fc = f(xc);
        if (fc < (outside ? fr : fv[hi])) {
            simplex[hi] = std::move(xc);
            fv[hi] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == lo)
                continue;
            for (std::size_t k = 0; k < m; ++k)
                simplex[i][k] = simplex[lo][k] + 0.5 * (simplex[i][k] - simplex[lo][k]);
            fv[i] = f(simplex[i]);
        }
    }
    const auto best = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
    out.best = simplex[best];
    out.value = fv[best];
    return out;
}

Point random_start(const DomainSpec& dom, const SearchConfig& cfg, Rng& rng) {
    const ComplexVector z = sample_shell(dom, rng, cfg.rho_floor, cfg.rho_ceiling);
    const ComplexVector b = sample_complex_gaussian(dom.n(), rng);
    return encode_search_point(dom, cfg, z, b);
}

} // namespace

std::vector<double> encode_search_point(const DomainSpec& dom, const SearchConfig& cfg, ComplexSpan z,
                                        ComplexSpan b) {
    const std::size_t n = dom.n();
    if (z.size() != n || b.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "start point dimension differs from domain");
    const double r = minkowski(dom, z).rho;
    if (r == 0.0)
        throw Error(ErrorCode::ZeroPoint, "cannot start a search at z = 0");
    double sigma = (r - cfg.rho_floor) / (cfg.rho_ceiling - cfg.rho_floor);
    sigma = std::clamp(sigma, 1e-6, 1.0 - 1e-6);
    const double t = sigma / (1.0 - sigma);
    Point x(4 * n);
    for (std::size_t j = 0; j < n; ++j) {
        const Complex v = z[j] * (t / r);
        x[2 * j] = v.real();
        x[2 * j + 1] = v.imag();
        x[2 * n + 2 * j] = b[j].real();
        x[2 * n + 2 * j + 1] = b[j].imag();
    }
    return x;
}

SearchResult minimize_J(const DomainSpec& dom, const MappingSpec& spec, const SearchConfig& cfg) {
    dom.require_criterion_exponents();
    cfg.validate();
    const Mapping map(spec);
    if (map.n() != dom.n())
        throw Error(ErrorCode::DimensionMismatch, "mapping and domain dimensions differ");

    std::vector<LocalResult> results(cfg.restarts);
    parallel_for(cfg.restarts, cfg.threads, [&](std::size_t r) {
        Rng rng = derive_rng(cfg.seed, r);
        Point x0 = r < cfg.starts.size() ? encode_search_point(dom, cfg, cfg.starts[r].z, cfg.starts[r].b)
                                         : random_start(dom, cfg, rng);
        Objective f{dom, map, cfg};
        LocalResult res = nelder_mead(f, std::move(x0), cfg.iterations, cfg.simplex_tol);
        res.singular_hits = f.singular_hits;
        results[r] = std::move(res);
    });

    SearchResult out;
    out.restarts = cfg.restarts;
    std::optional<std::size_t> best;
    for (std::size_t r = 0; r < results.size(); ++r) {
        out.singular_hits += results[r].singular_hits;
        if (results[r].converged)
            ++out.restarts_converged;
        if (results[r].value >= kSingularPenalty)
            continue;
        if (!best || results[r].value < results[*best].value)
            best = r;
    }
    if (!best)
        throw Error(ErrorCode::AllSamplesSingular, "every restart ended on a rejected point");

    const auto d = decode(dom, cfg, results[*best].best);
    out.witness = evaluate_J(dom, map, d->z, d->b);
    out.min_j = out.witness.j_value;
    out.best_restart = *best;
    return out;
}

CampaignReport certify_campaign(const DomainSpec& dom, const MappingSpec& spec, const CampaignOptions& options) {
    if (options.budget < 1000)
        throw Error(ErrorCode::ParamOutOfRange, "campaign budget must be at least 1000");
    ScanOptions so;
    so.samples = options.budget * 9 / 10;
    so.seed = options.seed;
    so.rho_floor = options.rho_floor;
    so.tol = options.tol;
    so.threads = options.threads;
    so.keep_worst = 10;

    CampaignReport report;
    report.scan = scan(dom, spec, so);

    SearchConfig sc;
    sc.seed = options.seed;
    sc.rho_floor = std::max(options.rho_floor, 1e-3);
    sc.rho_ceiling = 0.999;
    sc.iterations = options.iterations;
    sc.threads = options.threads;
    sc.starts = report.scan.worst;
    sc.restarts = sc.starts.size();
    report.search = minimize_J(dom, spec, sc);

    const bool search_wins = report.search.min_j < report.scan.min_j;
    report.witness = search_wins ? report.search.witness : report.scan.witness;
    report.min_j = report.witness.j_value;
    report.verdict = report.min_j < -options.tol ? "violation" : "no violation found";
    return report;
}

} // namespace dpconvex
