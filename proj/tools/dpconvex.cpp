// dpconvex: command-line front end. Reads a JSON config, runs one analysis,
// writes a JSON report. Exit codes: 0 pass / no violation, 1 fail /
// violation, 2 usage or validation error.

#include "dpconvex/criterion.hpp"
#include "dpconvex/falsifier.hpp"
#include "dpconvex/hypotheses.hpp"
#include "dpconvex/report.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>

using namespace dpconvex;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Flags {
    std::string config;
    std::size_t samples = 10000;
    std::uint64_t seed = 42;
    double tol = 1e-8;
    double rho_floor = 0.3;
    double rho_ceiling = 0.99;
    std::size_t restarts = 50;
    std::size_t iterations = 500;
    std::string output;
    unsigned threads = 1;
    int theorem = 1;
    int hub = 0;
    int which = 1;
};

struct Options {
    CLI::Option* samples = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* tol = nullptr;
    CLI::Option* rho_floor = nullptr;
    CLI::Option* restarts = nullptr;
};

void add_common(CLI::App* cmd, Flags& f, Options& o) {
    cmd->add_option("--config", f.config, "JSON configuration file")->required()->check(CLI::ExistingFile);
    o.samples = cmd->add_option("--samples", f.samples, "number of samples")->capture_default_str();
    o.seed = cmd->add_option("--seed", f.seed, "random seed")->capture_default_str();
    o.tol = cmd->add_option("--tol", f.tol, "violation tolerance on J")->capture_default_str();
    o.rho_floor = cmd->add_option("--rho-floor", f.rho_floor, "lower rho bound of sampled points")
                      ->capture_default_str();
    o.restarts = cmd->add_option("--restarts", f.restarts, "search restarts")->capture_default_str();
    cmd->add_option("--output", f.output, "report path (default: standard output)");
    cmd->add_option("--threads", f.threads, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
}

// Explicit flags override the config document, which overrides defaults.
void merge(Flags& f, const Options& o, const RunConfig& cfg) {
    if (!o.samples->count() && cfg.samples)
        f.samples = *cfg.samples;
    if (!o.seed->count() && cfg.seed)
        f.seed = *cfg.seed;
    if (!o.tol->count() && cfg.tol)
        f.tol = *cfg.tol;
    if (!o.rho_floor->count() && cfg.rho_floor)
        f.rho_floor = *cfg.rho_floor;
    if (!o.restarts->count() && cfg.restarts)
        f.restarts = *cfg.restarts;
}

void require_criterion_domain(const DomainSpec& dom) {
    try {
        dom.require_criterion_exponents();
    } catch (const Error&) {
        throw Error(ErrorCode::ParamOutOfRange,
                    "every exponent p_j must be >= 2: the convexity criterion and the sufficient conditions "
                    "are stated for D_p^n with p_j >= 2");
    }
}

void emit(const Flags& f, const Json& report) {
    const std::string text = report.dump(2) + "\n";
    if (f.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(f.output);
    if (!out)
        throw Error(ErrorCode::InvalidConfig, "cannot write report to '" + f.output + "'");
    out << text;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

int run(const std::string& command, Flags& f, const Options& o) {
    const auto start = std::chrono::steady_clock::now();
    const RunConfig cfg = load_config(f.config);
    merge(f, o, cfg);
    ReportHeader header{command, cfg.domain, cfg.mapping, f.seed, 0};

    if (command == "rho") {
        if (!cfg.point)
            throw Error(ErrorCode::InvalidConfig, "rho needs a 'point' in the configuration");
        const RhoResult r = minkowski(cfg.domain, *cfg.point);
        Json details{{"point", vector_to_json(*cfg.point)}, {"rho", r.rho}, {"residual", r.residual}};
        emit(f, make_report(header, "computed", Json::array(), nullptr, elapsed_ms(start), details));
        return kExitPass;
    }

    require_criterion_domain(cfg.domain);

    if (command == "check") {
        CheckReport report;
        CheckOptions co;
        co.samples = f.samples;
        co.seed = f.seed;
        switch (f.theorem) {
        case 1: report = check_theorem1(cfg.domain, cfg.mapping, co); break;
        case 2: report = check_theorem2(cfg.domain, cfg.mapping, co); break;
        case 3: report = check_theorem3(cfg.domain, cfg.mapping, f.hub ? f.hub : cfg.hub_index, co); break;
        case 4: report = check_theorem4(cfg.domain, cfg.mapping); break;
        default: throw Error(ErrorCode::ParamOutOfRange, "theorem must be 1..4");
        }
        header.samples = report.samples_used;
        emit(f, check_report_to_json(header, report, elapsed_ms(start)));
        return report.passed ? kExitPass : kExitFail;
    }
    if (command == "validate-example") {
        const CheckReport report = validate_example(f.which, cfg.domain, cfg.mapping);
        emit(f, check_report_to_json(header, report, elapsed_ms(start)));
        return report.passed ? kExitPass : kExitFail;
    }
    if (command == "scan") {
        ScanOptions so;
        so.samples = f.samples;
        so.seed = f.seed;
        so.tol = f.tol;
        so.rho_floor = f.rho_floor;
        so.threads = f.threads;
        const ScanReport report = scan(cfg.domain, cfg.mapping, so);
        header.samples = report.samples;
        emit(f, scan_report_to_json(header, report, elapsed_ms(start)));
        return report.min_j < -f.tol ? kExitFail : kExitPass;
    }
    if (command == "falsify") {
        SearchConfig sc;
        sc.restarts = f.restarts;
        sc.iterations = f.iterations;
        sc.seed = f.seed;
        sc.rho_floor = f.rho_floor;
        sc.rho_ceiling = f.rho_ceiling;
        sc.threads = f.threads;
        const SearchResult result = minimize_J(cfg.domain, cfg.mapping, sc);
        header.samples = result.restarts;
        emit(f, search_result_to_json(header, result, f.tol, elapsed_ms(start)));
        return result.min_j < -f.tol ? kExitFail : kExitPass;
    }
    if (command == "certify") {
        CampaignOptions co;
        co.budget = f.samples;
        co.seed = f.seed;
        co.rho_floor = f.rho_floor;
        co.tol = f.tol;
        co.iterations = f.iterations;
        co.threads = f.threads;
        const CampaignReport report = certify_campaign(cfg.domain, cfg.mapping, co);
        header.samples = f.samples;
        emit(f, campaign_report_to_json(header, report, elapsed_ms(start)));
        return report.verdict == "violation" ? kExitFail : kExitPass;
    }
    throw Error(ErrorCode::InvalidConfig, "unknown command " + command);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical convexity checks for biholomorphic maps of D_p^n"};
    app.require_subcommand(1);
    Flags f;
    std::map<std::string, Options> per_command;

    auto* rho = app.add_subcommand("rho", "Minkowski functional at the configured point");
    add_common(rho, f, per_command[rho->get_name()]);

    auto* check = app.add_subcommand("check", "sufficient-condition check for one theorem");
    add_common(check, f, per_command[check->get_name()]);
    check->add_option("--theorem", f.theorem, "theorem number")->required()->check(CLI::Range(1, 4));
    check->add_option("--hub", f.hub, "index k for theorem 3 (default: config hub_index)");

    auto* scan_cmd = app.add_subcommand("scan", "Monte-Carlo minimum of the convexity criterion");
    add_common(scan_cmd, f, per_command[scan_cmd->get_name()]);

    auto* falsify = app.add_subcommand("falsify", "multi-start search for a negative criterion value");
    add_common(falsify, f, per_command[falsify->get_name()]);
    falsify->add_option("--iterations", f.iterations, "simplex iterations per restart")->capture_default_str();
    falsify->add_option("--rho-ceiling", f.rho_ceiling, "upper rho bound of the search shell")
        ->capture_default_str();

    auto* validate = app.add_subcommand("validate-example", "coefficient bounds of an example family");
    add_common(validate, f, per_command[validate->get_name()]);
    validate->add_option("--which", f.which, "example number")->required()->check(CLI::Range(1, 4));

    auto* certify = app.add_subcommand("certify", "scan followed by targeted search");
    add_common(certify, f, per_command[certify->get_name()]);
    certify->add_option("--iterations", f.iterations, "simplex iterations per restart")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitConfig;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, f, per_command.at(command));
    } catch (const Error& e) {
        std::cerr << "dpconvex " << command << ": " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "dpconvex " << command << ": " << e.what() << "\n";
        return kExitConfig;
    }
}
