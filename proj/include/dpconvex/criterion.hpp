#pragma once

#include "dpconvex/geometry.hpp"
#include "dpconvex/mappings.hpp"

#include <cstdint>
#include <vector>

namespace dpconvex {

/// Real-linear admissibility functional L(b) = Re(sum_j c_j b_j) at a point z,
/// with c_j = p_j |z_j / rho|^{p_j} / z_j (0 when z_j = 0).
struct TangentConstraint {
    ComplexVector c;
    ComplexVector at;
    double rho = 0.0;

    double functional(ComplexSpan b) const;
    /// |L(b)| / (|c| |b|); 0 for b = 0.
    double relative_residual(ComplexSpan b) const;
};

struct CriterionEvaluation {
    ComplexVector z;
    ComplexVector b;
    double j_value = 0.0;
    /// Scale-free residual |L(b)| / (|c| |b|) of the tangency constraint.
    double constraint_residual = 0.0;
    double rho = 0.0;
};

TangentConstraint tangency(const DomainSpec& dom, ComplexSpan z);

/// Orthogonal projection (real inner product on C^n = R^{2n}) of b_raw onto
/// the hyperplane L(b) = 0:  b = b_raw - L(b_raw) / |c|^2 * conj(c).
ComplexVector project_tangent(const TangentConstraint& tc, ComplexSpan b_raw);

/// J_f(z, b) =
///     Re{ sum_j p_j^2/2 |z_j|^{p_j-2} / rho^{p_j} |b_j|^2
///       + sum_j p_j (p_j/2 - 1) |z_j/rho|^{p_j} (b_j/z_j)^2
///       - 2 (sum_j p_j/rho |z_j/rho|^{p_j}) <Df^{-1} D^2f(b,b), d rho/d conj(z)> }
///
/// At z_j = 0 the first sum uses |0|^0 = 1 when p_j = 2 and the second sum
/// contributes 0 (continuous extensions). Throws ZeroPoint at z = 0 and
/// SingularMatrix when Df(z) is singular.
CriterionEvaluation evaluate_J(const DomainSpec& dom, const Mapping& map, ComplexSpan z, ComplexSpan b);
CriterionEvaluation evaluate_J(const DomainSpec& dom, const MappingSpec& spec, ComplexSpan z, ComplexSpan b);

struct ScanOptions {
    std::size_t samples = 10000;
    std::uint64_t seed = 42;
    double rho_floor = 0.3;
    double tol = 1e-8;
    unsigned threads = 1;
    /// Number of lowest-J samples kept in the report (seeds for targeted search).
    std::size_t keep_worst = 10;
};

struct ScanReport {
    double min_j = 0.0;
    CriterionEvaluation witness;
    /// Lowest-J evaluations, ascending.
    std::vector<CriterionEvaluation> worst;
    std::size_t samples = 0;
    std::size_t evaluated = 0;
    std::size_t singular_skipped = 0;
    std::size_t below_tol = 0;
    std::uint64_t seed = 0;
    double rho_floor = 0.0;
    double tol = 0.0;
};

/// Samples are drawn in fixed-size chunks with chunk-indexed generators, so
/// the report does not depend on the thread count.
inline constexpr std::size_t kScanChunk = 256;

/// Monte-Carlo minimum of J over constrained samples (z uniform-rho in the
/// shell (rho_floor, 1), b projected and normalized to |b| = 1). Draws with a
/// singular Jacobian are skipped and counted. Throws AllSamplesSingular when
/// no draw could be evaluated.
ScanReport scan(const DomainSpec& dom, const MappingSpec& spec, const ScanOptions& options);

} // namespace dpconvex
