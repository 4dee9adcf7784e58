#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pendency/csv.hpp"
#include "pendency/ingestion.hpp"
#include "pendency/pipeline.hpp"
#include "pendency/policy.hpp"
#include "pendency/projection.hpp"

namespace pendency {

struct PipelineOptions {
    RateOptions rates;
    std::optional<double> disposal_floor_daily;
    double days_per_year = kDefaultDaysPerYear;
    int short_ramp_years = 10;
    int long_ramp_years = 20;
    int short_target_years = 5;
    int long_target_years = 15;

    bool operator==(const PipelineOptions& o) const {
        return rates.p0_mode == o.rates.p0_mode && disposal_floor_daily == o.disposal_floor_daily &&
               days_per_year == o.days_per_year && short_ramp_years == o.short_ramp_years &&
               long_ramp_years == o.long_ramp_years && short_target_years == o.short_target_years &&
               long_target_years == o.long_target_years;
    }
};

struct PipelineConfig {
    DataPaths paths;
    PipelineOptions options;
};

struct ReportRow {
    std::string court;
    std::string name;
    double p0 = 0.0;
    double rate_daily = 0.0;
    double d_daily = 0.0;
    double load_ratio = 0.0;
    std::optional<int> years_10y_ramp;  // empty = never clears
    std::optional<int> years_20y_ramp;
    std::int64_t judges_5y = 0;
    std::int64_t judges_15y = 0;
    Binding binding_5y = Binding::computed;
    Binding binding_15y = Binding::computed;
    std::int64_t zero_rate_delta = 0;
    Sufficiency sufficiency = Sufficiency::within_vacancy;
    int sanctioned = 0;
    double working = 0.0;
    DataSource data_source = DataSource::njdg;

    bool operator==(const ReportRow&) const = default;
};

struct PlotSeries {
    std::string court;
    std::vector<std::pair<Date, std::int64_t>> points;
    struct Line {
        Date start{};
        double start_value = 0.0;
        Date end{};
        double end_value = 0.0;
        bool operator==(const Line&) const = default;
    };
    std::optional<Line> fit_line;

    bool operator==(const PlotSeries&) const = default;
};

struct Aggregates {
    std::optional<double> mean_years_10y;
    std::size_t excluded_10y = 0;
    std::optional<double> mean_years_20y;
    std::size_t excluded_20y = 0;
    double total_p0 = 0.0;
    std::int64_t total_sanctioned = 0;
    double total_working = 0.0;
    std::int64_t total_judges_5y = 0;
    std::int64_t total_judges_15y = 0;
};

struct ReportBundle {
    PipelineOptions options;
    std::vector<ReportRow> rows;  // ordered by court
    std::vector<PlotSeries> plots;
    std::vector<std::string> warnings;

    /// Always derived from rows. Means cover clearing courts only.
    Aggregates aggregates() const {
        Aggregates a;
        auto mean = [&](auto member, std::optional<double>& out, std::size_t& excluded) {
            double sum = 0.0;
            std::size_t n = 0;
            for (const auto& r : rows) {
                if (const auto& y = r.*member) {
                    sum += *y;
                    ++n;
                }
            }
            excluded = rows.size() - n;
            if (n > 0) out = sum / static_cast<double>(n);
        };
        mean(&ReportRow::years_10y_ramp, a.mean_years_10y, a.excluded_10y);
        mean(&ReportRow::years_20y_ramp, a.mean_years_20y, a.excluded_20y);
        for (const auto& r : rows) {
            a.total_p0 += r.p0;
            a.total_sanctioned += r.sanctioned;
            a.total_working += r.working;
            a.total_judges_5y += r.judges_5y;
            a.total_judges_15y += r.judges_15y;
        }
        return a;
    }

    bool operator==(const ReportBundle&) const = default;
};

inline ReportRow build_row(const CourtInputs& in, const PipelineOptions& opts) {
    const auto& court = in.court;
    ReportRow row;
    row.court = court.court_id;
    row.name = court.name;
    row.p0 = in.rates.p0;
    row.rate_daily = in.rates.daily_pendency_rate;
    row.d_daily = in.rates.daily_disposal_per_judge;
    row.sanctioned = court.sanctioned_strength;
    row.working = court.working_strength;
    row.data_source = court.data_source;

    try {
        row.load_ratio = load_ratio(in.rates.p0, court.working_strength);

        ScenarioParams params;
        params.disposal_floor_daily = opts.disposal_floor_daily;
        params.days_per_year = opts.days_per_year;
        params.ramp_years = opts.short_ramp_years;
        row.years_10y_ramp = years_to_clear(make_scenario(in, params)).clears_in;
        params.ramp_years = opts.long_ramp_years;
        row.years_20y_ramp = years_to_clear(make_scenario(in, params)).clears_in;

        const auto r5 = required_judges(
            make_solver_request(in, opts.short_target_years, opts.disposal_floor_daily, opts.days_per_year));
        const auto r15 = required_judges(
            make_solver_request(in, opts.long_target_years, opts.disposal_floor_daily, opts.days_per_year));
        row.judges_5y = r5.required_judges;
        row.binding_5y = r5.binding;
        row.judges_15y = r15.required_judges;
        row.binding_15y = r15.binding;

        const double r0 = annualize(in.rates.daily_pendency_rate, opts.days_per_year);
        const double d = yearly_disposal(in, opts.disposal_floor_daily, opts.days_per_year);
        row.zero_rate_delta = judges_to_zero_rate(r0, d);
        row.sufficiency = classify_sufficiency(static_cast<double>(row.zero_rate_delta), court.sanctioned_strength,
                                               court.working_strength);
    } catch (const Infeasible& e) {
        throw Infeasible(court_context(court.court_id, e.what()));
    } catch (const HorizonExceeded& e) {
        throw HorizonExceeded(court_context(court.court_id, e.what()));
    } catch (const DomainError& e) {
        throw DomainError(court_context(court.court_id, e.what()));
    }
    return row;
}

inline PlotSeries build_plot(const CourtInputs& in) {
    PlotSeries plot;
    plot.court = in.court.court_id;
    plot.points = in.points;
    if (in.fit && !in.points.empty()) {
        PlotSeries::Line line;
        line.start = in.points.front().first;
        line.end = in.points.back().first;
        line.start_value = in.fit->at(static_cast<double>(days_since_epoch(line.start)));
        line.end_value = in.fit->at(static_cast<double>(days_since_epoch(line.end)));
        plot.fit_line = line;
    }
    return plot;
}

inline ReportBundle run_pipeline(const LoadedData& data, const PipelineOptions& opts = {}) {
    ReportBundle bundle;
    bundle.options = opts;
    bundle.warnings = data.dataset.provenance.warnings;
    if (data.dataset.courts.empty()) {
        bundle.warnings.push_back("dataset has no courts; report is empty");
        return bundle;
    }
    for (const auto& in : derive_all(data.dataset, data.windows, opts.rates)) {
        bundle.rows.push_back(build_row(in, opts));
        bundle.plots.push_back(build_plot(in));
    }
    return bundle;
}

inline ReportBundle run_pipeline(const PipelineConfig& config) {
    return run_pipeline(load_data(config.paths), config.options);
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline std::string_view to_string(DataSource s) { return s == DataSource::njdg ? "njdg" : "external_override"; }

namespace detail {

template <typename T>
nlohmann::json opt(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <typename T>
std::optional<T> get_opt(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return j[key].get<T>();
}

inline Binding binding_from(const std::string& s) {
    if (s == "computed") return Binding::computed;
    if (s == "floored_at_sanctioned") return Binding::floored_at_sanctioned;
    throw ConfigError("unknown binding '" + s + "'");
}

}  // namespace detail

inline nlohmann::json to_json(const PipelineOptions& o) {
    return {{"p0_mode", o.rates.p0_mode == P0Mode::observed ? "observed" : "fitted"},
            {"disposal_floor_daily", detail::opt(o.disposal_floor_daily)},
            {"days_per_year", o.days_per_year},
            {"short_ramp_years", o.short_ramp_years},
            {"long_ramp_years", o.long_ramp_years},
            {"short_target_years", o.short_target_years},
            {"long_target_years", o.long_target_years}};
}

inline nlohmann::json to_json(const ReportRow& r) {
    return {{"court", r.court},
            {"name", r.name},
            {"p0", r.p0},
            {"rate_daily", r.rate_daily},
            {"d_daily", r.d_daily},
            {"load_ratio", r.load_ratio},
            {"years_10y_ramp", detail::opt(r.years_10y_ramp)},
            {"years_20y_ramp", detail::opt(r.years_20y_ramp)},
            {"judges_5y", r.judges_5y},
            {"judges_15y", r.judges_15y},
            {"binding_5y", std::string(to_string(r.binding_5y))},
            {"binding_15y", std::string(to_string(r.binding_15y))},
            {"zero_rate_delta", r.zero_rate_delta},
            {"sufficiency", std::string(to_string(r.sufficiency))},
            {"sanctioned", r.sanctioned},
            {"working", r.working},
            {"data_source", std::string(to_string(r.data_source))}};
}

inline nlohmann::json to_json(const Aggregates& a) {
    return {{"mean_years_10y", detail::opt(a.mean_years_10y)},
            {"excluded_10y", a.excluded_10y},
            {"mean_years_20y", detail::opt(a.mean_years_20y)},
            {"excluded_20y", a.excluded_20y},
            {"totals",
             {{"p0", a.total_p0},
              {"sanctioned", a.total_sanctioned},
              {"working", a.total_working},
              {"judges_5y", a.total_judges_5y},
              {"judges_15y", a.total_judges_15y}}}};
}

inline nlohmann::json to_json(const PlotSeries& p) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& [d, v] : p.points) pts.push_back({format_iso_date(d), v});
    nlohmann::json line = nullptr;
    if (p.fit_line) {
        line = {{"start", format_iso_date(p.fit_line->start)},
                {"start_value", p.fit_line->start_value},
                {"end", format_iso_date(p.fit_line->end)},
                {"end_value", p.fit_line->end_value}};
    }
    return {{"court", p.court}, {"points", pts}, {"fit_line", line}};
}

inline nlohmann::json to_json(const ReportBundle& b) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : b.rows) rows.push_back(to_json(r));
    nlohmann::json plots = nlohmann::json::array();
    for (const auto& p : b.plots) plots.push_back(to_json(p));
    return {{"options", to_json(b.options)},
            {"rows", rows},
            {"aggregates", to_json(b.aggregates())},
            {"plots", plots},
            {"warnings", b.warnings}};
}

inline ReportBundle bundle_from_json(const nlohmann::json& j) {
    auto date = [](const nlohmann::json& v) {
        auto d = parse_iso_date(v.get<std::string>());
        if (!d) throw ConfigError("invalid date in report: " + v.dump());
        return *d;
    };
    try {
        ReportBundle b;
        const auto& o = j.at("options");
        b.options.rates.p0_mode = o.at("p0_mode").get<std::string>() == "fitted" ? P0Mode::fitted : P0Mode::observed;
        b.options.disposal_floor_daily = detail::get_opt<double>(o, "disposal_floor_daily");
        b.options.days_per_year = o.at("days_per_year").get<double>();
        b.options.short_ramp_years = o.at("short_ramp_years").get<int>();
        b.options.long_ramp_years = o.at("long_ramp_years").get<int>();
        b.options.short_target_years = o.at("short_target_years").get<int>();
        b.options.long_target_years = o.at("long_target_years").get<int>();
        for (const auto& r : j.at("rows")) {
            ReportRow row;
            row.court = r.at("court").get<std::string>();
            row.name = r.at("name").get<std::string>();
            row.p0 = r.at("p0").get<double>();
            row.rate_daily = r.at("rate_daily").get<double>();
            row.d_daily = r.at("d_daily").get<double>();
            row.load_ratio = r.at("load_ratio").get<double>();
            row.years_10y_ramp = detail::get_opt<int>(r, "years_10y_ramp");
            row.years_20y_ramp = detail::get_opt<int>(r, "years_20y_ramp");
            row.judges_5y = r.at("judges_5y").get<std::int64_t>();
            row.judges_15y = r.at("judges_15y").get<std::int64_t>();
            row.binding_5y = detail::binding_from(r.at("binding_5y").get<std::string>());
            row.binding_15y = detail::binding_from(r.at("binding_15y").get<std::string>());
            row.zero_rate_delta = r.at("zero_rate_delta").get<std::int64_t>();
            row.sufficiency = r.at("sufficiency").get<std::string>() == "within_vacancy"
                                  ? Sufficiency::within_vacancy
                                  : Sufficiency::exceeds_sanctioned;
            row.sanctioned = r.at("sanctioned").get<int>();
            row.working = r.at("working").get<double>();
            row.data_source =
                r.at("data_source").get<std::string>() == "njdg" ? DataSource::njdg : DataSource::external_override;
            b.rows.push_back(std::move(row));
        }
        for (const auto& p : j.at("plots")) {
            PlotSeries plot;
            plot.court = p.at("court").get<std::string>();
            for (const auto& pt : p.at("points")) plot.points.emplace_back(date(pt.at(0)), pt.at(1).get<std::int64_t>());
            if (!p.at("fit_line").is_null()) {
                const auto& l = p["fit_line"];
                plot.fit_line = PlotSeries::Line{date(l.at("start")), l.at("start_value").get<double>(),
                                                 date(l.at("end")), l.at("end_value").get<double>()};
            }
            b.plots.push_back(std::move(plot));
        }
        b.warnings = j.at("warnings").get<std::vector<std::string>>();
        return b;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed report JSON: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

enum class ReportFormat { csv, json, markdown_table, plot_points };

inline std::optional<ReportFormat> parse_report_format(std::string_view s) {
    if (s == "csv") return ReportFormat::csv;
    if (s == "json") return ReportFormat::json;
    if (s == "markdown-table" || s == "markdown") return ReportFormat::markdown_table;
    if (s == "plot-points") return ReportFormat::plot_points;
    return std::nullopt;
}

inline std::string render_years(const std::optional<int>& y) { return y ? std::to_string(*y) : "-"; }

inline std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string render_csv(const ReportBundle& b) {
    std::ostringstream out;
    out << "court,name,p0,rate_daily,d_daily,load_ratio,years_" << b.options.short_ramp_years << "y_ramp,years_"
        << b.options.long_ramp_years << "y_ramp,judges_" << b.options.short_target_years << "y,judges_"
        << b.options.long_target_years
        << "y,zero_rate_delta,sanctioned,working,binding_short,binding_long,sufficiency,data_source\n";
    for (const auto& r : b.rows) {
        out << csv::quote_if_needed(r.court) << ',' << csv::quote_if_needed(r.name) << ','
            << csv::format_double(r.p0) << ',' << csv::format_double(r.rate_daily) << ','
            << csv::format_double(r.d_daily) << ',' << csv::format_double(r.load_ratio) << ','
            << render_years(r.years_10y_ramp) << ',' << render_years(r.years_20y_ramp) << ',' << r.judges_5y << ','
            << r.judges_15y << ',' << r.zero_rate_delta << ',' << r.sanctioned << ','
            << csv::format_double(r.working) << ',' << to_string(r.binding_5y) << ',' << to_string(r.binding_15y)
            << ',' << to_string(r.sufficiency) << ',' << to_string(r.data_source) << '\n';
    }
    return out.str();
}

/// Years-to-clear table: court, short-ramp years, long-ramp years. Sorted by
/// short-ramp years descending; courts that never clear go last as "-".
inline std::string render_years_table(const ReportBundle& b) {
    std::vector<const ReportRow*> rows;
    for (const auto& r : b.rows) rows.push_back(&r);
    std::stable_sort(rows.begin(), rows.end(), [](const ReportRow* a, const ReportRow* c) {
        const int ya = a->years_10y_ramp.value_or(-1);
        const int yc = c->years_10y_ramp.value_or(-1);
        if (a->years_10y_ramp.has_value() != c->years_10y_ramp.has_value()) return a->years_10y_ramp.has_value();
        if (ya != yc) return ya > yc;
        return a->court < c->court;
    });
    std::ostringstream out;
    out << "| # | High Court | " << b.options.short_ramp_years << " Years | " << b.options.long_ramp_years
        << " Years |\n";
    out << "|---|---|---|---|\n";
    int i = 0;
    for (const auto* r : rows) {
        out << "| " << ++i << " | " << r->name << " | " << render_years(r->years_10y_ramp) << " | "
            << render_years(r->years_20y_ramp) << " |\n";
    }
    const auto agg = b.aggregates();
    out << "\nMean years (clearing courts): " << (agg.mean_years_10y ? fixed2(*agg.mean_years_10y) : "-") << " / "
        << (agg.mean_years_20y ? fixed2(*agg.mean_years_20y) : "-") << "; excluded as never clearing: "
        << agg.excluded_10y << " / " << agg.excluded_20y << "\n";
    return out.str();
}

/// Required-judges table with a totals row: court, short target, long target,
/// sanctioned, working. Sorted by short-target requirement descending.
inline std::string render_judges_table(const ReportBundle& b) {
    std::vector<const ReportRow*> rows;
    for (const auto& r : b.rows) rows.push_back(&r);
    std::stable_sort(rows.begin(), rows.end(), [](const ReportRow* a, const ReportRow* c) {
        if (a->judges_5y != c->judges_5y) return a->judges_5y > c->judges_5y;
        return a->court < c->court;
    });
    std::ostringstream out;
    out << "| # | High Court | " << b.options.short_target_years << " Years | " << b.options.long_target_years
        << " Years | Sanctioned | Working |\n";
    out << "|---|---|---|---|---|---|\n";
    int i = 0;
    for (const auto* r : rows) {
        out << "| " << ++i << " | " << r->name << " | " << r->judges_5y << " | " << r->judges_15y << " | "
            << r->sanctioned << " | " << csv::format_double(r->working) << " |\n";
    }
    const auto agg = b.aggregates();
    out << "| | Total | " << agg.total_judges_5y << " | " << agg.total_judges_15y << " | " << agg.total_sanctioned
        << " | " << csv::format_double(agg.total_working) << " |\n";
    return out.str();
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content,
                       std::vector<std::filesystem::path>& written) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << content;
    out.close();
    if (!out) throw IoError("write failed for '" + path.string() + "'");
    written.push_back(path);
}

}  // namespace detail

/// Writes the bundle in one format under `dir`; returns the files written.
inline std::vector<std::filesystem::path> emit(const ReportBundle& b, ReportFormat format,
                                               const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
    std::vector<std::filesystem::path> written;
    switch (format) {
        case ReportFormat::csv: detail::write_file(dir / "report.csv", render_csv(b), written); break;
        case ReportFormat::json: detail::write_file(dir / "report.json", to_json(b).dump(2) + "\n", written); break;
        case ReportFormat::markdown_table:
            detail::write_file(dir / "table_years.md", render_years_table(b), written);
            detail::write_file(dir / "table_judges.md", render_judges_table(b), written);
            break;
        case ReportFormat::plot_points: {
            const auto plot_dir = dir / "plot";
            std::filesystem::create_directories(plot_dir, ec);
            if (ec) throw IoError("cannot create '" + plot_dir.string() + "': " + ec.message());
            std::ostringstream lines;
            lines << "court,start_date,start_value,end_date,end_value\n";
            for (const auto& p : b.plots) {
                std::ostringstream pts;
                pts << "date,pending\n";
                for (const auto& [d, v] : p.points) pts << format_iso_date(d) << ',' << v << '\n';
                detail::write_file(plot_dir / (p.court + ".csv"), pts.str(), written);
                if (p.fit_line) {
                    lines << csv::quote_if_needed(p.court) << ',' << format_iso_date(p.fit_line->start) << ','
                          << csv::format_double(p.fit_line->start_value) << ','
                          << format_iso_date(p.fit_line->end) << ',' << csv::format_double(p.fit_line->end_value)
                          << '\n';
                }
            }
            detail::write_file(plot_dir / "fit_lines.csv", lines.str(), written);
            break;
        }
    }
    return written;
}

}  // namespace pendency
