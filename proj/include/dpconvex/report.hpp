#pragma once

#include "dpconvex/falsifier.hpp"
#include "dpconvex/hypotheses.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace dpconvex {

using Json = nlohmann::ordered_json;

/// Parsed JSON configuration document:
///
///   {
///     "domain":  {"p": [2, 3, 3]},
///     "mapping": {"family": "Example1", "a": [0.03, [0.03, 0], ...], "k": 2,
///                 "lambda": 0.5, "a_prime": [a1', a2'],
///                 "components": [{"terms": [{"coeff": 3, "exponents": [2, 0]}]}]},
///     "point":   [[0.6, 0], [0, 0.8]],
///     "hub_index": 2,
///     "samples": 10000, "seed": 42, "tol": 1e-8, "rho_floor": 0.3, "restarts": 50
///   }
///
/// Complex numbers are [re, im] pairs; plain numbers are read as real.
/// Run parameters in the document are optional; command-line flags win.
struct RunConfig {
    DomainSpec domain;
    MappingSpec mapping;
    std::optional<ComplexVector> point;
    int hub_index = 2;
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<double> rho_floor;
    std::optional<std::size_t> restarts;
};

/// Throws Error(InvalidConfig) on schema problems; module preconditions are
/// checked by constructing the mapping and validating the domain.
RunConfig parse_config(const Json& doc);
RunConfig load_config(const std::string& path);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& v);
Json vector_to_json(ComplexSpan v);

Json domain_to_json(const DomainSpec& dom);
Json mapping_to_json(const MappingSpec& spec);
Json evaluation_to_json(const CriterionEvaluation& ev);
Json margins_to_json(const std::vector<ConditionMargin>& margins);

/// Full report with the stable top-level keys
/// {command, domain, mapping, seed, samples, verdict, margins, witness,
///  timing_ms, details}. `timing_ms` is the only run-dependent field.
struct ReportHeader {
    std::string command;
    DomainSpec domain;
    MappingSpec mapping;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
};

Json make_report(const ReportHeader& header, const std::string& verdict, const Json& margins, const Json& witness,
                 double timing_ms, const Json& details);

Json check_report_to_json(const ReportHeader& header, const CheckReport& report, double timing_ms);
Json scan_report_to_json(const ReportHeader& header, const ScanReport& report, double timing_ms);
Json search_result_to_json(const ReportHeader& header, const SearchResult& result, double tol, double timing_ms);
Json campaign_report_to_json(const ReportHeader& header, const CampaignReport& report, double timing_ms);

inline constexpr const char* kSamplingDisclaimer =
    "sampled evidence only: a nonnegative minimum over finitely many points does not prove convexity";

} // namespace dpconvex
