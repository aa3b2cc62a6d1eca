#include "dpconvex/criterion.hpp"
#include "dpconvex/falsifier.hpp"
#include "dpconvex/hypotheses.hpp"
#include "dpconvex/report.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace dpconvex;

namespace {

// Configs cross the boundary as JSON text; the Python wrapper does the
// dict <-> str conversion.
RunConfig config_from(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::InvalidConfig, e.what());
    }
    return parse_config(doc);
}

ReportHeader header_for(const std::string& command, const RunConfig& cfg, std::uint64_t seed) {
    return ReportHeader{command, cfg.domain, cfg.mapping, seed, 0};
}

std::string check(const std::string& config, int theorem, std::size_t samples, std::uint64_t seed, int hub) {
    const RunConfig cfg = config_from(config);
    CheckOptions co;
    co.samples = samples;
    co.seed = seed;
    CheckReport r;
    switch (theorem) {
    case 1: r = check_theorem1(cfg.domain, cfg.mapping, co); break;
    case 2: r = check_theorem2(cfg.domain, cfg.mapping, co); break;
    case 3: r = check_theorem3(cfg.domain, cfg.mapping, hub ? hub : cfg.hub_index, co); break;
    case 4: r = check_theorem4(cfg.domain, cfg.mapping); break;
    default: throw Error(ErrorCode::ParamOutOfRange, "theorem must be 1..4");
    }
    auto h = header_for("check", cfg, seed);
    h.samples = r.samples_used;
    return check_report_to_json(h, r, 0.0).dump();
}

std::string validate(const std::string& config, int which) {
    const RunConfig cfg = config_from(config);
    return check_report_to_json(header_for("validate-example", cfg, 0), validate_example(which, cfg.domain, cfg.mapping),
                                0.0)
        .dump();
}

std::string run_scan(const std::string& config, std::size_t samples, std::uint64_t seed, double rho_floor,
                     double tol, unsigned threads) {
    const RunConfig cfg = config_from(config);
    ScanOptions so;
    so.samples = samples;
    so.seed = seed;
    so.rho_floor = rho_floor;
    so.tol = tol;
    so.threads = threads;
    ScanReport r;
    {
        py::gil_scoped_release release;
        r = scan(cfg.domain, cfg.mapping, so);
    }
    auto h = header_for("scan", cfg, seed);
    h.samples = samples;
    return scan_report_to_json(h, r, 0.0).dump();
}

std::string run_falsify(const std::string& config, std::size_t restarts, std::size_t iterations, std::uint64_t seed,
                        double rho_floor, double rho_ceiling, double tol, unsigned threads) {
    const RunConfig cfg = config_from(config);
    SearchConfig sc;
    sc.restarts = restarts;
    sc.iterations = iterations;
    sc.seed = seed;
    sc.rho_floor = rho_floor;
    sc.rho_ceiling = rho_ceiling;
    sc.threads = threads;
    SearchResult r;
    {
        py::gil_scoped_release release;
        r = minimize_J(cfg.domain, cfg.mapping, sc);
    }
    auto h = header_for("falsify", cfg, seed);
    h.samples = restarts;
    return search_result_to_json(h, r, tol, 0.0).dump();
}

std::string run_certify(const std::string& config, std::size_t budget, std::uint64_t seed, double rho_floor,
                        double tol, unsigned threads) {
    const RunConfig cfg = config_from(config);
    CampaignOptions co;
    co.budget = budget;
    co.seed = seed;
    co.rho_floor = rho_floor;
    co.tol = tol;
    co.threads = threads;
    CampaignReport r;
    {
        py::gil_scoped_release release;
        r = certify_campaign(cfg.domain, cfg.mapping, co);
    }
    auto h = header_for("certify", cfg, seed);
    h.samples = budget;
    return campaign_report_to_json(h, r, 0.0).dump();
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Convexity checks for biholomorphic maps of D_p^n";

    static py::handle error_type = py::exception<Error>(m, "DpconvexError", PyExc_ValueError).release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            const std::string code(to_string(e.code()));
            py::object exc = py::reinterpret_borrow<py::object>(error_type)(std::string(e.what()));
            exc.attr("code") = code;
            PyErr_SetObject(error_type.ptr(), exc.ptr());
        }
    });

    m.def(
        "minkowski",
        [](std::vector<double> p, ComplexVector z) {
            const RhoResult r = minkowski(DomainSpec{std::move(p)}, z);
            return py::make_tuple(r.rho, r.residual);
        },
        py::arg("p"), py::arg("z"));
    m.def(
        "rho_bar_gradient",
        [](std::vector<double> p, ComplexVector z) { return rho_bar_gradient(DomainSpec{std::move(p)}, z); },
        py::arg("p"), py::arg("z"));
    m.def(
        "evaluate",
        [](const std::string& config, ComplexVector z) { return evaluate(config_from(config).mapping, z); },
        py::arg("config"), py::arg("z"));
    m.def(
        "jacobian",
        [](const std::string& config, ComplexVector z) {
            const DerivativeBundle d = derivatives(config_from(config).mapping, z);
            std::vector<ComplexVector> rows(z.size(), ComplexVector(z.size()));
            for (std::size_t i = 0; i < z.size(); ++i)
                for (std::size_t j = 0; j < z.size(); ++j)
                    rows[i][j] = d.jacobian(i, j);
            return rows;
        },
        py::arg("config"), py::arg("z"));
    m.def(
        "project_tangent",
        [](std::vector<double> p, ComplexVector z, ComplexVector b) {
            const DomainSpec dom{std::move(p)};
            return project_tangent(tangency(dom, z), b);
        },
        py::arg("p"), py::arg("z"), py::arg("b"));
    m.def(
        "evaluate_J",
        [](const std::string& config, ComplexVector z, ComplexVector b) {
            const RunConfig cfg = config_from(config);
            return evaluation_to_json(evaluate_J(cfg.domain, cfg.mapping, z, b)).dump();
        },
        py::arg("config"), py::arg("z"), py::arg("b"));
    m.def("check", &check, py::arg("config"), py::arg("theorem"), py::arg("samples") = 1000, py::arg("seed") = 42,
          py::arg("hub") = 0);
    m.def("validate_example", &validate, py::arg("config"), py::arg("which"));
    m.def("scan", &run_scan, py::arg("config"), py::arg("samples") = 10000, py::arg("seed") = 42,
          py::arg("rho_floor") = 0.3, py::arg("tol") = 1e-8, py::arg("threads") = 1);
    m.def("falsify", &run_falsify, py::arg("config"), py::arg("restarts") = 50, py::arg("iterations") = 500,
          py::arg("seed") = 42, py::arg("rho_floor") = 0.05, py::arg("rho_ceiling") = 0.99, py::arg("tol") = 1e-8,
          py::arg("threads") = 1);
    m.def("certify", &run_certify, py::arg("config"), py::arg("budget") = 10000, py::arg("seed") = 42,
          py::arg("rho_floor") = 0.3, py::arg("tol") = 1e-8, py::arg("threads") = 1);
}
