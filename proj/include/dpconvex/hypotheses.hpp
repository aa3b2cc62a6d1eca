#pragma once

#include "dpconvex/geometry.hpp"
#include "dpconvex/mappings.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dpconvex {

inline constexpr double kPassThreshold = -1e-12;

/// One condition of a sufficient-condition system. margin = rhs - lhs, so a
/// nonnegative margin means the inequality holds. For sampled conditions the
/// stored values are those at the worst point, `witness_z`; z-free
/// conditions leave the witness empty.
struct ConditionMargin {
    std::string condition_id;
    double margin = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    ComplexVector witness_z;
};

struct CheckReport {
    std::string theorem;
    bool passed = true;
    std::vector<ConditionMargin> margins;
    std::size_t samples_used = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> notes;
};

/// Pointwise condition values at one z; the id may repeat (e.g. one entry
/// per index j), the checkers reduce by minimum margin.
struct PointCondition {
    std::string condition_id;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct CheckOptions {
    std::size_t samples = 1000;
    std::uint64_t seed = 42;
    /// Points evaluated in addition to the random stream (e.g. known witnesses).
    std::vector<ComplexVector> extra_points;
    /// Axis and small-|z_j| shell probes.
    bool probe_axes = true;
};

/// theorem1 shape: f_1(z_1..z_n), f_2(z_2..z_n), f_j(z_j) for j >= 3.
std::vector<PointCondition> theorem1_conditions(const DomainSpec& dom, const Mapping& map, ComplexSpan z);
/// theorem2 shape: f_1(z_1..z_n), f_j(z_j, z_n) for 2 <= j <= n-1, f_n(z_n).
std::vector<PointCondition> theorem2_conditions(const DomainSpec& dom, const Mapping& map, ComplexSpan z);
/// theorem3 shape with hub index `hub` (1-based k, 2 <= k <= n):
/// f_1(z_1..z_n), f_j = p_j(z_j) + f_j(z_k) for j != 1, k, and f_k(z_k).
std::vector<PointCondition> theorem3_conditions(const DomainSpec& dom, const Mapping& map, int hub,
                                                ComplexSpan z);

void require_theorem1_shape(const Mapping& map);
void require_theorem2_shape(const Mapping& map);
void require_theorem3_shape(const Mapping& map, int hub);

CheckReport check_theorem1(const DomainSpec& dom, const MappingSpec& spec, const CheckOptions& options = {});
/// theorem1 restricted to n = 3.
CheckReport check_corollary1(const DomainSpec& dom, const MappingSpec& spec, const CheckOptions& options = {});
CheckReport check_theorem2(const DomainSpec& dom, const MappingSpec& spec, const CheckOptions& options = {});
CheckReport check_theorem3(const DomainSpec& dom, const MappingSpec& spec, int hub,
                           const CheckOptions& options = {});

/// The two z-free coefficient inequalities for the 2x2 quadratic family.
/// Margins are 1 - LHS.
CheckReport check_theorem4(const MappingSpec& spec);
/// check_theorem4 plus the domain requirement: B^2_p with one exponent p >= 2.
CheckReport check_theorem4(const DomainSpec& dom, const MappingSpec& spec);

/// Coefficient validators for the example families. The exponents come from
/// the domain; k, lambda and the coefficients from the mapping spec.
CheckReport validate_example1(const DomainSpec& dom, const MappingSpec& spec);
CheckReport validate_example2(const DomainSpec& dom, const MappingSpec& spec);
CheckReport validate_example3(const DomainSpec& dom, const MappingSpec& spec);
CheckReport validate_example4(const DomainSpec& dom, const MappingSpec& spec);
CheckReport validate_example(int which, const DomainSpec& dom, const MappingSpec& spec);

} // namespace dpconvex
