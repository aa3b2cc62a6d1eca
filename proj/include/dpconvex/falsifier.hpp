#pragma once

#include "dpconvex/criterion.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dpconvex {

inline constexpr double kSingularPenalty = 1e6;

struct SearchConfig {
    std::size_t restarts = 50;
    std::size_t iterations = 500;
    std::uint64_t seed = 42;
    double rho_floor = 0.05;
    double rho_ceiling = 0.99;
    double simplex_tol = 1e-12;
    unsigned threads = 1;
    /// Optional starting points; restart r < starts.size() begins at starts[r]
    /// instead of a random draw.
    std::vector<CriterionEvaluation> starts;

    void validate() const;
};

struct SearchResult {
    double min_j = 0.0;
    CriterionEvaluation witness;
    std::size_t restarts = 0;
    std::size_t restarts_converged = 0;
    /// Objective evaluations rejected because Df was singular.
    std::size_t singular_hits = 0;
    std::size_t best_restart = 0;
};

/// Multi-start Nelder-Mead on 4n reals: the first 2n give the point (direction
/// plus a squashed radius in the rho shell), the last 2n the direction b, which
/// is projected onto the tangent hyperplane and normalized at every evaluation.
SearchResult minimize_J(const DomainSpec& dom, const MappingSpec& spec, const SearchConfig& cfg);

/// Optimizer coordinates for a point/direction pair (inverse of the search
/// parametrization, radius clamped into the shell).
std::vector<double> encode_search_point(const DomainSpec& dom, const SearchConfig& cfg, ComplexSpan z,
                                        ComplexSpan b);

struct CampaignOptions {
    std::size_t budget = 10000;
    std::uint64_t seed = 42;
    double rho_floor = 0.3;
    double tol = 1e-8;
    std::size_t iterations = 500;
    unsigned threads = 1;
};

struct CampaignReport {
    ScanReport scan;
    SearchResult search;
    double min_j = 0.0;
    CriterionEvaluation witness;
    /// "violation" or "no violation found".
    std::string verdict;
};

/// Scan with 90% of the budget, then local search from the 10 lowest samples.
CampaignReport certify_campaign(const DomainSpec& dom, const MappingSpec& spec, const CampaignOptions& options);

} // namespace dpconvex
