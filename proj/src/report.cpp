#include "dpconvex/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace dpconvex {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

template <class T>
std::optional<T> optional_field(const Json& doc, const char* key) {
    if (!doc.contains(key) || doc[key].is_null())
        return std::nullopt;
    try {
        return doc[key].get<T>();
    } catch (const nlohmann::json::exception&) {
        bad(std::string("field '") + key + "' has the wrong type");
    }
}

std::vector<Complex> complex_array(const Json& v, const char* what) {
    if (!v.is_array())
        bad(std::string(what) + " must be an array");
    std::vector<Complex> out;
    out.reserve(v.size());
    for (const auto& e : v)
        out.push_back(complex_from_json(e));
    return out;
}

Json real_or_complex(Complex z) { return z.imag() == 0.0 ? Json(z.real()) : complex_to_json(z); }

} // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& v) {
    if (v.is_number())
        return Complex(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return Complex(v[0].get<double>(), v[1].get<double>());
    bad("complex numbers must be numbers or [re, im] pairs, got " + v.dump());
}

Json vector_to_json(ComplexSpan v) {
    Json out = Json::array();
    for (const auto& z : v)
        out.push_back(complex_to_json(z));
    return out;
}

RunConfig parse_config(const Json& doc) {
    if (!doc.is_object())
        bad("configuration must be a JSON object");
    RunConfig cfg;

    if (!doc.contains("domain") || !doc["domain"].is_object() || !doc["domain"].contains("p"))
        bad("configuration needs domain.p");
    const Json& p = doc["domain"]["p"];
    if (!p.is_array() || p.empty())
        bad("domain.p must be a nonempty array of reals");
    for (const auto& e : p) {
        if (!e.is_number())
            bad("domain.p must contain numbers only");
        cfg.domain.p.push_back(e.get<double>());
    }
    cfg.domain.validate();

    if (!doc.contains("mapping") || !doc["mapping"].is_object())
        bad("configuration needs a mapping object");
    const Json& m = doc["mapping"];
    if (!m.contains("family") || !m["family"].is_string())
        bad("mapping.family must be a string");
    MappingSpec& spec = cfg.mapping;
    spec.family = family_from_string(m["family"].get<std::string>());
    spec.n = cfg.domain.n();
    if (m.contains("a"))
        spec.a = complex_array(m["a"], "mapping.a");
    if (m.contains("a_prime")) {
        const auto ap = complex_array(m["a_prime"], "mapping.a_prime");
        if (ap.size() != 2)
            bad("mapping.a_prime must hold [a1', a2']");
        spec.a1_prime = ap[0];
        spec.a2_prime = ap[1];
    }
    if (m.contains("lambda"))
        spec.lambda = complex_from_json(m["lambda"]);
    if (auto k = optional_field<int>(m, "k"))
        spec.k = *k;
    if (m.contains("components")) {
        if (!m["components"].is_array())
            bad("mapping.components must be an array");
        for (const auto& c : m["components"]) {
            CustomComponent comp;
            if (c.contains("terms")) {
                if (!c["terms"].is_array())
                    bad("component terms must be an array");
                for (const auto& t : c["terms"]) {
                    if (!t.is_object() || !t.contains("coeff") || !t.contains("exponents"))
                        bad("each term needs coeff and exponents");
                    Monomial mono;
                    mono.coeff = complex_from_json(t["coeff"]);
                    try {
                        mono.exponents = t["exponents"].get<std::vector<int>>();
                    } catch (const nlohmann::json::exception&) {
                        bad("term exponents must be integers");
                    }
                    comp.terms.push_back(std::move(mono));
                }
            }
            spec.components.push_back(std::move(comp));
        }
    }
    if (spec.family == Family::Identity)
        spec.a.clear();
    Mapping{spec};

    if (doc.contains("point")) {
        cfg.point = complex_array(doc["point"], "point");
        if (cfg.point->size() != cfg.domain.n())
            bad("point length differs from domain.p");
    }
    if (auto h = optional_field<int>(doc, "hub_index"))
        cfg.hub_index = *h;
    cfg.samples = optional_field<std::size_t>(doc, "samples");
    cfg.seed = optional_field<std::uint64_t>(doc, "seed");
    cfg.tol = optional_field<double>(doc, "tol");
    cfg.rho_floor = optional_field<double>(doc, "rho_floor");
    cfg.restarts = optional_field<std::size_t>(doc, "restarts");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        bad("cannot open configuration file '" + path + "'");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        bad("malformed JSON in '" + path + "': " + e.what());
    }
    return parse_config(doc);
}

Json domain_to_json(const DomainSpec& dom) { return Json{{"p", dom.p}}; }

Json mapping_to_json(const MappingSpec& spec) {
    Json m;
    m["family"] = std::string(to_string(spec.family));
    m["n"] = spec.n;
    Json a = Json::array();
    for (const auto& c : spec.a)
        a.push_back(real_or_complex(c));
    m["a"] = a;
    if (spec.family == Family::Theorem4Quadratic)
        m["a_prime"] = Json::array({real_or_complex(spec.a1_prime), real_or_complex(spec.a2_prime)});
    if (spec.family == Family::Example1 || spec.family == Family::Example3)
        m["lambda"] = real_or_complex(spec.lambda);
    if (spec.family >= Family::Example1 && spec.family <= Family::Example4)
        m["k"] = spec.k;
    if (spec.family == Family::CustomTriangular) {
        Json comps = Json::array();
        for (const auto& c : spec.components) {
            Json terms = Json::array();
            for (const auto& t : c.terms)
                terms.push_back(Json{{"coeff", real_or_complex(t.coeff)}, {"exponents", t.exponents}});
            comps.push_back(Json{{"terms", terms}});
        }
        m["components"] = comps;
    }
    return m;
}

Json evaluation_to_json(const CriterionEvaluation& ev) {
    return Json{{"z", vector_to_json(ev.z)},
                {"b", vector_to_json(ev.b)},
                {"j_value", ev.j_value},
                {"residual", ev.constraint_residual},
                {"rho", ev.rho}};
}

Json margins_to_json(const std::vector<ConditionMargin>& margins) {
    Json out = Json::array();
    for (const auto& m : margins) {
        Json e{{"condition_id", m.condition_id}, {"margin", m.margin}, {"lhs", m.lhs}, {"rhs", m.rhs}};
        e["witness_z"] = m.witness_z.empty() ? Json(nullptr) : vector_to_json(m.witness_z);
        out.push_back(std::move(e));
    }
    return out;
}

Json make_report(const ReportHeader& header, const std::string& verdict, const Json& margins, const Json& witness,
                 double timing_ms, const Json& details) {
    Json r;
    r["command"] = header.command;
    r["domain"] = domain_to_json(header.domain);
    r["mapping"] = mapping_to_json(header.mapping);
    r["seed"] = header.seed;
    r["samples"] = header.samples;
    r["verdict"] = verdict;
    r["margins"] = margins;
    r["witness"] = witness;
    r["timing_ms"] = timing_ms;
    r["details"] = details;
    return r;
}

Json check_report_to_json(const ReportHeader& header, const CheckReport& report, double timing_ms) {
    Json details{{"theorem", report.theorem},
                 {"passed", report.passed},
                 {"samples_used", report.samples_used},
                 {"pass_threshold", kPassThreshold},
                 {"notes", report.notes}};
    return make_report(header, report.passed ? "pass" : "fail", margins_to_json(report.margins), nullptr, timing_ms,
                       details);
}

namespace {

Json scan_details(const ScanReport& s) {
    Json worst = Json::array();
    for (const auto& ev : s.worst)
        worst.push_back(evaluation_to_json(ev));
    return Json{{"min_j", s.min_j},
                {"evaluated", s.evaluated},
                {"singular_skipped", s.singular_skipped},
                {"below_tol", s.below_tol},
                {"rho_floor", s.rho_floor},
                {"tol", s.tol},
                {"worst", worst}};
}

Json search_details(const SearchResult& r) {
    return Json{{"min_j", r.min_j},
                {"restarts", r.restarts},
                {"restarts_converged", r.restarts_converged},
                {"singular_hits", r.singular_hits},
                {"best_restart", r.best_restart}};
}

} // namespace

Json scan_report_to_json(const ReportHeader& header, const ScanReport& report, double timing_ms) {
    Json details = scan_details(report);
    details["note"] = kSamplingDisclaimer;
    const bool violation = report.min_j < -report.tol;
    return make_report(header, violation ? "violation" : "no violation found", Json::array(),
                       evaluation_to_json(report.witness), timing_ms, details);
}

Json search_result_to_json(const ReportHeader& header, const SearchResult& result, double tol, double timing_ms) {
    Json details = search_details(result);
    details["tol"] = tol;
    details["note"] = kSamplingDisclaimer;
    const bool violation = result.min_j < -tol;
    return make_report(header, violation ? "violation" : "no violation found", Json::array(),
                       evaluation_to_json(result.witness), timing_ms, details);
}

Json campaign_report_to_json(const ReportHeader& header, const CampaignReport& report, double timing_ms) {
    Json details{{"min_j", report.min_j},
                 {"scan", scan_details(report.scan)},
                 {"search", search_details(report.search)},
                 {"note", kSamplingDisclaimer}};
    return make_report(header, report.verdict, Json::array(), evaluation_to_json(report.witness), timing_ms, details);
}

} // namespace dpconvex
