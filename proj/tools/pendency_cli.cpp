// pendency: backlog forecasting and staffing-policy command line.
//
// Exit codes: 0 success, 1 input error, 2 infeasible or degenerate.

#include <csignal>
#include <cstdio>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "pendency/ingestion.hpp"
#include "pendency/pipeline.hpp"
#include "pendency/report.hpp"
#include "pendency/scenario_api.hpp"
#include "pendency/service.hpp"

namespace {

using namespace pendency;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInfeasible = 2;

struct DataOptions {
    std::string data_dir;
    std::string snapshots;
    std::string strength;
    std::string overrides;
    std::string windows;
    std::string p0_mode = "observed";
    double days_per_year = kDefaultDaysPerYear;

    DataPaths paths() const {
        DataPaths p = data_dir.empty() ? DataPaths{} : DataPaths::from_directory(data_dir);
        if (!snapshots.empty()) p.snapshots = snapshots;
        if (!strength.empty()) p.strength = strength;
        if (!overrides.empty()) p.overrides = overrides;
        if (!windows.empty()) p.windows = windows;
        if (p.snapshots.empty() || p.strength.empty()) {
            throw ConfigError("need --data-dir or both --snapshots and --strength");
        }
        return p;
    }

    RateOptions rates() const {
        auto mode = parse_p0_mode(p0_mode);
        if (!mode) throw ConfigError("--p0 must be observed or fitted");
        return {*mode};
    }
};

void add_data_options(CLI::App* cmd, DataOptions& opts) {
    cmd->add_option("--data-dir", opts.data_dir, "Directory holding snapshots.csv, strength.csv and optional "
                                                 "overrides.json, windows.json");
    cmd->add_option("--snapshots", opts.snapshots, "Snapshot CSV (or .json)");
    cmd->add_option("--strength", opts.strength, "Strength CSV");
    cmd->add_option("--overrides", opts.overrides, "Overrides JSON");
    cmd->add_option("--windows", opts.windows, "Per-court window JSON");
    cmd->add_option("--p0", opts.p0_mode, "Projection start pendency: observed|fitted")->capture_default_str();
    cmd->add_option("--days-per-year", opts.days_per_year, "Annualization factor")->capture_default_str();
}

void print(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

std::optional<double> parse_target(const std::string& text) {
    if (text == "sanctioned") return std::nullopt;
    auto v = csv::to_double(text);
    if (!v || *v < 0.0) throw ConfigError("--target must be 'sanctioned' or a nonnegative number");
    return v;
}

int run_ingest(const DataOptions& opts) {
    const auto data = load_data(opts.paths());
    const auto report = validate_dataset(data.dataset);
    std::size_t observations = 0;
    for (const auto& [_, s] : data.dataset.series) observations += s.observations.size();
    nlohmann::json issues = nlohmann::json::array();
    for (const auto& f : report.findings) {
        if (f.severity != Severity::pass) issues.push_back(to_json(f));
    }
    print({{"courts", data.dataset.courts.size()},
           {"observations", observations},
           {"findings",
            {{"pass", report.count(Severity::pass)},
             {"warn", report.count(Severity::warn)},
             {"error", report.count(Severity::error)}}},
           {"issues", issues},
           {"warnings", data.dataset.provenance.warnings}});
    return report.has_errors() ? kExitInput : kExitOk;
}

int run_fit(const DataOptions& opts) {
    const auto data = load_data(opts.paths());
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& in : derive_all(data.dataset, data.windows, opts.rates())) {
        rows.push_back({{"court_id", in.court.court_id},
                        {"slope_per_day", in.rates.daily_pendency_rate},
                        {"p0", in.rates.p0},
                        {"n", in.fit ? nlohmann::json(in.fit->n) : nlohmann::json(nullptr)},
                        {"window", to_json(in.window)}});
    }
    print(rows);
    return kExitOk;
}

CourtInputs find_court_inputs(const DataOptions& opts, const std::string& court_id) {
    const auto data = load_data(opts.paths());
    const CourtRecord* court = data.dataset.find_court(court_id);
    if (!court) throw ConfigError("unknown court '" + court_id + "'");
    return derive_court_inputs(data.dataset, *court, data.windows.for_court(court_id), opts.rates());
}

int run_project(const DataOptions& opts, const std::string& court_id, int ramp_years, const std::string& target,
                std::optional<double> floor) {
    ScenarioRequest req;
    req.court_id = court_id;
    req.ramp_years = ramp_years;
    if (auto t = parse_target(target)) req.target = *t;
    req.disposal_floor = floor;
    print(project_response(find_court_inputs(opts, court_id), req, opts.days_per_year));
    return kExitOk;
}

int run_solve(const DataOptions& opts, int target_years, std::optional<double> floor) {
    const auto data = load_data(opts.paths());
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& in : derive_all(data.dataset, data.windows, opts.rates())) {
        const auto res = required_judges(make_solver_request(in, target_years, floor, opts.days_per_year));
        rows.push_back({{"court", in.court.court_id},
                        {"required", res.required_judges},
                        {"sanctioned", in.court.sanctioned_strength},
                        {"working", in.court.working_strength},
                        {"binding", std::string(to_string(res.binding))}});
    }
    print(rows);
    return kExitOk;
}

int run_zero_rate(const DataOptions& opts, std::optional<double> floor) {
    const auto data = load_data(opts.paths());
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& in : derive_all(data.dataset, data.windows, opts.rates())) {
        const double r0 = annualize(in.rates.daily_pendency_rate, opts.days_per_year);
        const double d = yearly_disposal(in, floor, opts.days_per_year);
        const auto delta = judges_to_zero_rate(r0, d);
        const auto suff = classify_sufficiency(static_cast<double>(delta), in.court.sanctioned_strength,
                                               in.court.working_strength);
        rows.push_back({{"court", in.court.court_id},
                        {"required", delta},
                        {"sanctioned", in.court.sanctioned_strength},
                        {"working", in.court.working_strength},
                        {"sufficiency", std::string(to_string(suff))}});
    }
    print(rows);
    return kExitOk;
}

int run_report(const DataOptions& opts, const std::string& out_dir, const std::vector<std::string>& formats,
               std::optional<double> floor) {
    PipelineConfig cfg;
    cfg.paths = opts.paths();
    cfg.options.rates = opts.rates();
    cfg.options.disposal_floor_daily = floor;
    cfg.options.days_per_year = opts.days_per_year;
    const auto bundle = run_pipeline(cfg);
    for (const auto& w : bundle.warnings) std::cerr << "warning: " << w << '\n';
    std::vector<ReportFormat> wanted;
    for (const auto& f : formats) {
        if (f == "all") {
            wanted = {ReportFormat::csv, ReportFormat::json, ReportFormat::markdown_table, ReportFormat::plot_points};
            break;
        }
        auto fmt = parse_report_format(f);
        if (!fmt) throw ConfigError("unknown format '" + f + "'");
        wanted.push_back(*fmt);
    }
    for (auto fmt : wanted) {
        for (const auto& path : emit(bundle, fmt, out_dir)) std::cout << path.string() << '\n';
    }
    return kExitOk;
}

ScenarioServer* g_server = nullptr;

extern "C" void handle_signal(int) {
    if (g_server) g_server->stop();
}

int run_serve(const DataOptions& opts, const std::string& host, int port) {
    ScenarioService service;
    ScenarioServer server(service);
    if (!server.bind(host, port)) throw IoError("cannot bind " + host + ":" + std::to_string(port));
    g_server = &server;
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    std::thread listener([&] { server.listen_after_bind(); });
    try {
        const auto data = load_data(opts.paths());
        service.load(derive_all(data.dataset, data.windows, opts.rates()), opts.days_per_year);
    } catch (...) {
        server.stop();
        listener.join();
        throw;
    }
    std::cerr << "serving " << host << ":" << port << '\n';
    listener.join();
    g_server = nullptr;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Court backlog forecasting and staffing-policy engine"};
    app.require_subcommand(1);

    DataOptions data;
    std::optional<double> floor;
    auto add_floor = [&](CLI::App* cmd) {
        cmd->add_option("--floor", floor, "Minimum disposal rate, cases/judge/day");
    };

    auto* ingest = app.add_subcommand("ingest", "Load and validate input files");
    add_data_options(ingest, data);

    auto* fit = app.add_subcommand("fit", "Fit per-court pendency trends");
    add_data_options(fit, data);

    std::string court_id;
    int ramp_years = 10;
    std::string target = "sanctioned";
    auto* project = app.add_subcommand("project", "Project one court's pendency under a staffing ramp");
    add_data_options(project, data);
    project->add_option("--court", court_id, "Court id")->required();
    project->add_option("--ramp-years", ramp_years, "Years to reach the target strength")->required();
    project->add_option("--target", target, "sanctioned or a number of judges")->capture_default_str();
    add_floor(project);

    int target_years = 5;
    auto* solve = app.add_subcommand("solve-judges", "Judges needed to clear pendency in T years");
    add_data_options(solve, data);
    solve->add_option("--target-years", target_years, "Years to clear")->required();
    add_floor(solve);

    auto* zero = app.add_subcommand("zero-rate", "Additional judges needed to stop pendency growth");
    add_data_options(zero, data);
    add_floor(zero);

    std::string out_dir;
    std::vector<std::string> formats{"all"};
    auto* report = app.add_subcommand("report", "Run the full pipeline and write reports");
    add_data_options(report, data);
    report->add_option("--out", out_dir, "Output directory")->required();
    report->add_option("--format", formats, "csv, json, markdown-table, plot-points or all");
    add_floor(report);

    std::string host = "127.0.0.1";
    int port = 8080;
    auto* serve = app.add_subcommand("serve", "Serve the scenario JSON API");
    add_data_options(serve, data);
    serve->add_option("--port", port, "Port")->capture_default_str();
    serve->add_option("--host", host, "Bind address")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*ingest) return run_ingest(data);
        if (*fit) return run_fit(data);
        if (*project) return run_project(data, court_id, ramp_years, target, floor);
        if (*solve) return run_solve(data, target_years, floor);
        if (*zero) return run_zero_rate(data, floor);
        if (*report) return run_report(data, out_dir, formats, floor);
        if (*serve) return run_serve(data, host, port);
    } catch (const Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const DegenerateFit& e) {
        std::cerr << "degenerate fit: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const InsufficientData& e) {
        std::cerr << "insufficient data: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const HorizonExceeded& e) {
        std::cerr << "horizon exceeded: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
