#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "pendency/core.hpp"
#include "pendency/csv.hpp"

namespace pendency {

// ---------------------------------------------------------------------------
// Dataset
// ---------------------------------------------------------------------------

struct OverrideEntry {
    std::string court_id;
    std::optional<double> p0_override;
    std::optional<double> daily_rate_override;
    std::optional<double> daily_disposal_override;
    std::string reason;
    std::string source;

    bool operator==(const OverrideEntry&) const = default;
};

struct Provenance {
    std::vector<std::string> sources;
    std::vector<std::string> warnings;

    bool operator==(const Provenance&) const = default;
};

/// Courts sorted by court_id; every series has a matching CourtRecord once
/// strength data is attached.
struct Dataset {
    std::vector<CourtRecord> courts;
    std::map<std::string, SnapshotSeries> series;
    std::map<std::string, OverrideEntry> overrides;
    Provenance provenance;

    const CourtRecord* find_court(std::string_view court_id) const {
        auto it = std::lower_bound(courts.begin(), courts.end(), court_id,
                                   [](const CourtRecord& c, std::string_view id) { return c.court_id < id; });
        return it != courts.end() && it->court_id == court_id ? &*it : nullptr;
    }

    const SnapshotSeries* find_series(std::string_view court_id) const {
        auto it = series.find(std::string(court_id));
        return it == series.end() ? nullptr : &it->second;
    }

    const OverrideEntry* find_override(std::string_view court_id) const {
        auto it = overrides.find(std::string(court_id));
        return it == overrides.end() ? nullptr : &it->second;
    }

    /// Equality of content; provenance is metadata and does not participate.
    bool same_data(const Dataset& other) const {
        return courts == other.courts && series == other.series && overrides == other.overrides;
    }
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

enum class Severity { pass, warn, error };

inline std::string_view to_string(Severity s) {
    switch (s) {
        case Severity::pass: return "pass";
        case Severity::warn: return "warn";
        case Severity::error: return "error";
    }
    return "?";
}

struct Finding {
    std::string court_id;
    std::optional<Date> date;  // empty for court-level checks
    std::string check_name;
    Severity severity = Severity::pass;
    std::string detail;

    bool operator==(const Finding&) const = default;
};

struct ValidationReport {
    std::vector<Finding> findings;

    std::size_t count(Severity s) const {
        return static_cast<std::size_t>(
            std::count_if(findings.begin(), findings.end(), [s](const Finding& f) { return f.severity == s; }));
    }
    bool has_errors() const { return count(Severity::error) > 0; }
};

inline void sort_findings(std::vector<Finding>& findings) {
    std::stable_sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
        return std::tie(a.court_id, a.date, a.check_name) < std::tie(b.court_id, b.date, b.check_name);
    });
}

/// Sum check for a civil/criminal/writ breakdown against its stated total.
/// The signed discrepancy is components minus total.
inline Finding check_component_sum(std::string check_name, std::int64_t civil, std::int64_t criminal,
                                   std::int64_t writ, std::int64_t total) {
    Finding f;
    f.check_name = std::move(check_name);
    const std::int64_t components = civil + criminal + writ;
    const std::int64_t discrepancy = components - total;
    if (discrepancy == 0) {
        f.severity = Severity::pass;
        f.detail = "components sum to total " + std::to_string(total);
    } else {
        f.severity = Severity::warn;
        f.detail = "components sum to " + std::to_string(components) + " vs total " + std::to_string(total) +
                   " (discrepancy " + (discrepancy > 0 ? "+" : "") + std::to_string(discrepancy) + ")";
    }
    return f;
}

inline std::int64_t discrepancy_of(std::int64_t civil, std::int64_t criminal, std::int64_t writ, std::int64_t total) {
    return civil + criminal + writ - total;
}

inline std::vector<Finding> validate_snapshot(const SnapshotObservation& obs, std::string_view court_id = {}) {
    std::vector<Finding> out;

    Finding sum = check_component_sum("pending_sum", obs.pending_civil, obs.pending_criminal, obs.pending_writ,
                                      obs.pending_total);
    out.push_back(std::move(sum));

    Finding nonneg;
    nonneg.check_name = "nonnegative";
    std::vector<std::string> negative;
    auto check = [&](std::string_view name, std::int64_t v) {
        if (v < 0) negative.push_back(std::string(name) + "=" + std::to_string(v));
    };
    check("pending_civil", obs.pending_civil);
    check("pending_criminal", obs.pending_criminal);
    check("pending_writ", obs.pending_writ);
    check("pending_total", obs.pending_total);
    if (obs.filed_monthly) check("filed_monthly", *obs.filed_monthly);
    if (obs.disposed_monthly) check("disposed_monthly", *obs.disposed_monthly);
    if (negative.empty()) {
        nonneg.severity = Severity::pass;
        nonneg.detail = "all counts nonnegative";
    } else {
        nonneg.severity = Severity::error;
        for (std::size_t i = 0; i < negative.size(); ++i) {
            nonneg.detail += (i ? ", " : "negative: ") + negative[i];
        }
    }
    out.push_back(std::move(nonneg));

    Finding pair;
    pair.check_name = "monthly_pair";
    if (obs.filed_monthly.has_value() == obs.disposed_monthly.has_value()) {
        pair.severity = Severity::pass;
        pair.detail = obs.filed_monthly ? "filed and disposed present" : "no monthly figures";
    } else {
        pair.severity = Severity::warn;
        pair.detail = obs.filed_monthly ? "filed present without disposed" : "disposed present without filed";
    }
    out.push_back(std::move(pair));

    for (auto& f : out) {
        f.court_id = std::string(court_id);
        f.date = obs.date;
    }
    sort_findings(out);
    return out;
}

inline std::vector<Finding> validate_court(const CourtRecord& court) {
    std::vector<Finding> out;
    Finding strength;
    strength.court_id = court.court_id;
    strength.check_name = "strength";
    if (court.sanctioned_strength < 1) {
        strength.severity = Severity::error;
        strength.detail = "sanctioned strength below 1";
    } else if (!(court.working_strength > 0.0)) {
        strength.severity = Severity::warn;
        strength.detail = "no working judges";
    } else if (court.working_strength > court.sanctioned_strength) {
        strength.severity = Severity::warn;
        strength.detail = "working strength " + csv::format_double(court.working_strength) +
                          " exceeds sanctioned " + std::to_string(court.sanctioned_strength);
    } else {
        strength.severity = Severity::pass;
        strength.detail = "working within sanctioned";
    }
    out.push_back(std::move(strength));
    return out;
}

inline ValidationReport validate_dataset(const Dataset& ds) {
    ValidationReport report;
    for (const auto& court : ds.courts) {
        auto f = validate_court(court);
        report.findings.insert(report.findings.end(), f.begin(), f.end());
    }
    for (const auto& [id, s] : ds.series) {
        if (s.observations.empty()) {
            report.findings.push_back({id, std::nullopt, "series", Severity::warn, "no observations"});
        }
        for (const auto& obs : s.observations) {
            auto f = validate_snapshot(obs, id);
            report.findings.insert(report.findings.end(), f.begin(), f.end());
        }
    }
    sort_findings(report.findings);
    return report;
}

/// One row of a civil/criminal/writ breakdown table such as the portal's
/// summary (pending, filed, disposed).
struct BreakdownRow {
    std::string title;
    std::int64_t civil = 0;
    std::int64_t criminal = 0;
    std::int64_t writ = 0;
    std::int64_t total = 0;
};

inline Finding validate_breakdown(const BreakdownRow& row) {
    Finding f = check_component_sum(row.title, row.civil, row.criminal, row.writ, row.total);
    return f;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

struct HeaderMap {
    std::map<std::string, std::size_t> index;
    std::size_t width = 0;

    std::optional<std::size_t> find(const std::string& name) const {
        auto it = index.find(name);
        return it == index.end() ? std::nullopt : std::optional{it->second};
    }
};

inline HeaderMap read_header(std::istream& in, const std::vector<std::string>& required,
                             const std::vector<std::string>& optional_cols, const std::string& what,
                             std::vector<std::string>& warnings) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(1, what + ": missing header");
    }
    csv::strip_cr(line);
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
        line.erase(0, 3);
    }
    auto fields = csv::split_record(line);
    if (!fields) {
        throw ParseError(1, what + ": malformed header");
    }
    HeaderMap h;
    h.width = fields->size();
    for (std::size_t i = 0; i < fields->size(); ++i) {
        const auto& name = (*fields)[i];
        if (!h.index.emplace(name, i).second) {
            throw ParseError(1, what + ": duplicate column '" + name + "'");
        }
        const bool known = std::find(required.begin(), required.end(), name) != required.end() ||
                           std::find(optional_cols.begin(), optional_cols.end(), name) != optional_cols.end();
        if (!known) {
            warnings.push_back(what + ": ignoring unknown column '" + name + "'");
        }
    }
    for (const auto& col : required) {
        if (!h.find(col)) {
            throw ParseError(1, what + ": missing column '" + col + "'");
        }
    }
    return h;
}

inline std::int64_t required_int(const std::vector<std::string>& row, std::size_t col, const char* name,
                                 std::size_t line) {
    auto v = csv::to_int(row[col]);
    if (!v) {
        throw ParseError(line, std::string("invalid integer in ") + name + ": '" + row[col] + "'");
    }
    return *v;
}

inline std::optional<std::int64_t> optional_int(const std::vector<std::string>& row, std::optional<std::size_t> col,
                                                const char* name, std::size_t line) {
    if (!col || row[*col].empty()) {
        return std::nullopt;
    }
    return required_int(row, *col, name, line);
}

}  // namespace detail

inline const std::vector<std::string>& snapshot_columns() {
    static const std::vector<std::string> cols{"date",         "court_id",      "pending_civil",
                                               "pending_criminal", "pending_writ", "pending_total",
                                               "filed_monthly", "disposed_monthly"};
    return cols;
}

namespace detail {

/// Sorts each series by date and rejects duplicate (court_id, date) pairs.
/// `lines` holds the source line of each observation, in insertion order.
inline void finalize_series(std::map<std::string, std::vector<std::pair<SnapshotObservation, std::size_t>>>& raw,
                            Dataset& ds) {
    for (auto& [id, rows] : raw) {
        std::stable_sort(rows.begin(), rows.end(),
                         [](const auto& a, const auto& b) { return a.first.date < b.first.date; });
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (rows[i].first.date == rows[i - 1].first.date) {
                const std::size_t later = std::max(rows[i].second, rows[i - 1].second);
                throw ParseError(later, "duplicate observation for court '" + id + "' on " +
                                            format_iso_date(rows[i].first.date));
            }
        }
        SnapshotSeries s;
        s.court_id = id;
        s.observations.reserve(rows.size());
        for (auto& r : rows) s.observations.push_back(r.first);
        ds.series.emplace(id, std::move(s));
    }
}

}  // namespace detail

/// Reads snapshots.csv. Rows are grouped per court and sorted by date.
/// Courts are attached separately (see attach_strength).
inline Dataset parse_snapshot_csv(std::istream& in, std::string source_name = "snapshots.csv") {
    Dataset ds;
    ds.provenance.sources.push_back(source_name);
    const auto& cols = snapshot_columns();
    const std::vector<std::string> required(cols.begin(), cols.begin() + 6);
    const std::vector<std::string> optional_cols(cols.begin() + 6, cols.end());
    auto header = detail::read_header(in, required, optional_cols, source_name, ds.provenance.warnings);

    const std::size_t c_date = *header.find("date");
    const std::size_t c_court = *header.find("court_id");
    const std::size_t c_civil = *header.find("pending_civil");
    const std::size_t c_crim = *header.find("pending_criminal");
    const std::size_t c_writ = *header.find("pending_writ");
    const std::size_t c_total = *header.find("pending_total");
    const auto c_filed = header.find("filed_monthly");
    const auto c_disposed = header.find("disposed_monthly");

    std::map<std::string, std::vector<std::pair<SnapshotObservation, std::size_t>>> raw;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        csv::strip_cr(line);
        if (line.empty()) continue;
        auto row = csv::split_record(line);
        if (!row) {
            throw ParseError(line_no, "unterminated quote");
        }
        if (row->size() != header.width) {
            throw ParseError(line_no, "expected " + std::to_string(header.width) + " fields, got " +
                                          std::to_string(row->size()));
        }
        SnapshotObservation obs;
        auto date = parse_iso_date((*row)[c_date]);
        if (!date) {
            throw ParseError(line_no, "invalid date '" + (*row)[c_date] + "'");
        }
        obs.date = *date;
        const std::string& court = (*row)[c_court];
        if (court.empty()) {
            throw ParseError(line_no, "empty court_id");
        }
        obs.pending_civil = detail::required_int(*row, c_civil, "pending_civil", line_no);
        obs.pending_criminal = detail::required_int(*row, c_crim, "pending_criminal", line_no);
        obs.pending_writ = detail::required_int(*row, c_writ, "pending_writ", line_no);
        obs.pending_total = detail::required_int(*row, c_total, "pending_total", line_no);
        obs.filed_monthly = detail::optional_int(*row, c_filed, "filed_monthly", line_no);
        obs.disposed_monthly = detail::optional_int(*row, c_disposed, "disposed_monthly", line_no);
        raw[court].emplace_back(obs, line_no);
    }
    detail::finalize_series(raw, ds);
    return ds;
}

inline Dataset parse_snapshot_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_snapshot_csv(in);
}

/// JSON alternate: an array of objects using the CSV column names. Line
/// numbers in errors are 1-based element indices.
inline Dataset parse_snapshot_json(const nlohmann::json& doc, std::string source_name = "snapshots.json") {
    Dataset ds;
    ds.provenance.sources.push_back(source_name);
    if (!doc.is_array()) {
        throw ParseError(1, source_name + ": expected a JSON array");
    }
    std::map<std::string, std::vector<std::pair<SnapshotObservation, std::size_t>>> raw;
    std::size_t index = 0;
    for (const auto& item : doc) {
        ++index;
        try {
            SnapshotObservation obs;
            auto date = parse_iso_date(item.at("date").get<std::string>());
            if (!date) throw ParseError(index, "invalid date");
            obs.date = *date;
            obs.pending_civil = item.at("pending_civil").get<std::int64_t>();
            obs.pending_criminal = item.at("pending_criminal").get<std::int64_t>();
            obs.pending_writ = item.at("pending_writ").get<std::int64_t>();
            obs.pending_total = item.at("pending_total").get<std::int64_t>();
            if (item.contains("filed_monthly") && !item["filed_monthly"].is_null())
                obs.filed_monthly = item["filed_monthly"].get<std::int64_t>();
            if (item.contains("disposed_monthly") && !item["disposed_monthly"].is_null())
                obs.disposed_monthly = item["disposed_monthly"].get<std::int64_t>();
            auto court = item.at("court_id").get<std::string>();
            if (court.empty()) throw ParseError(index, "empty court_id");
            raw[court].emplace_back(obs, index);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(index, e.what());
        }
    }
    detail::finalize_series(raw, ds);
    return ds;
}

/// Writes the canonical CSV form: header, then rows ordered by (court_id, date).
inline std::string serialize_snapshot_csv(const Dataset& ds) {
    std::ostringstream out;
    const auto& cols = snapshot_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& [id, s] : ds.series) {
        for (const auto& o : s.observations) {
            out << format_iso_date(o.date) << ',' << csv::quote_if_needed(id) << ',' << o.pending_civil << ','
                << o.pending_criminal << ',' << o.pending_writ << ',' << o.pending_total << ',';
            if (o.filed_monthly) out << *o.filed_monthly;
            out << ',';
            if (o.disposed_monthly) out << *o.disposed_monthly;
            out << '\n';
        }
    }
    return out.str();
}

inline std::vector<CourtRecord> parse_strength_csv(std::istream& in, std::vector<std::string>* warnings = nullptr,
                                                   std::string source_name = "strength.csv") {
    std::vector<std::string> local;
    auto& warn = warnings ? *warnings : local;
    auto header = detail::read_header(in, {"court_id", "name", "sanctioned", "working_avg"}, {}, source_name, warn);
    const std::size_t c_id = *header.find("court_id");
    const std::size_t c_name = *header.find("name");
    const std::size_t c_sanc = *header.find("sanctioned");
    const std::size_t c_work = *header.find("working_avg");

    std::vector<CourtRecord> courts;
    std::set<std::string> seen;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        csv::strip_cr(line);
        if (line.empty()) continue;
        auto row = csv::split_record(line);
        if (!row) throw ParseError(line_no, "unterminated quote");
        if (row->size() != header.width) {
            throw ParseError(line_no, "expected " + std::to_string(header.width) + " fields, got " +
                                          std::to_string(row->size()));
        }
        CourtRecord c;
        c.court_id = (*row)[c_id];
        c.name = (*row)[c_name];
        if (c.court_id.empty()) throw ParseError(line_no, "empty court_id");
        if (!seen.insert(c.court_id).second) {
            throw ParseError(line_no, "duplicate court_id '" + c.court_id + "'");
        }
        auto sanctioned = csv::to_int((*row)[c_sanc]);
        if (!sanctioned) throw ParseError(line_no, "invalid sanctioned strength '" + (*row)[c_sanc] + "'");
        if (*sanctioned < 1) throw ParseError(line_no, "sanctioned strength must be at least 1");
        c.sanctioned_strength = static_cast<int>(*sanctioned);
        auto working = csv::to_double((*row)[c_work]);
        if (!working || *working < 0.0) {
            throw ParseError(line_no, "invalid working strength '" + (*row)[c_work] + "'");
        }
        c.working_strength = *working;
        if (c.working_strength > c.sanctioned_strength) {
            warn.push_back(source_name + ": court '" + c.court_id + "' working strength exceeds sanctioned");
        }
        courts.push_back(std::move(c));
    }
    std::sort(courts.begin(), courts.end(),
              [](const CourtRecord& a, const CourtRecord& b) { return a.court_id < b.court_id; });
    return courts;
}

inline std::string serialize_strength_csv(const std::vector<CourtRecord>& courts) {
    std::ostringstream out;
    out << "court_id,name,sanctioned,working_avg\n";
    for (const auto& c : courts) {
        out << csv::quote_if_needed(c.court_id) << ',' << csv::quote_if_needed(c.name) << ','
            << c.sanctioned_strength << ',' << csv::format_double(c.working_strength) << '\n';
    }
    return out.str();
}

/// Attaches strength records. Every series must have a matching court.
inline Dataset attach_strength(Dataset ds, std::vector<CourtRecord> courts) {
    std::sort(courts.begin(), courts.end(),
              [](const CourtRecord& a, const CourtRecord& b) { return a.court_id < b.court_id; });
    for (std::size_t i = 1; i < courts.size(); ++i) {
        if (courts[i].court_id == courts[i - 1].court_id) {
            throw ConfigError("duplicate court_id '" + courts[i].court_id + "'");
        }
    }
    ds.courts = std::move(courts);
    for (const auto& [id, s] : ds.series) {
        if (!ds.find_court(id)) {
            throw ConfigError("series for court '" + id + "' has no strength record");
        }
    }
    return ds;
}

/// Parses a breakdown table with header `title,civil,criminal,writ,total`.
inline std::vector<BreakdownRow> parse_breakdown_csv(std::istream& in) {
    std::vector<std::string> warnings;
    auto header = detail::read_header(in, {"title", "civil", "criminal", "writ", "total"}, {}, "breakdown", warnings);
    std::vector<BreakdownRow> rows;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        csv::strip_cr(line);
        if (line.empty()) continue;
        auto row = csv::split_record(line);
        if (!row || row->size() != header.width) throw ParseError(line_no, "malformed row");
        BreakdownRow r;
        r.title = (*row)[*header.find("title")];
        r.civil = detail::required_int(*row, *header.find("civil"), "civil", line_no);
        r.criminal = detail::required_int(*row, *header.find("criminal"), "criminal", line_no);
        r.writ = detail::required_int(*row, *header.find("writ"), "writ", line_no);
        r.total = detail::required_int(*row, *header.find("total"), "total", line_no);
        rows.push_back(std::move(r));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Windows
// ---------------------------------------------------------------------------

struct WindowSpec {
    enum class Kind { full, since, last_n_days };

    Kind kind = Kind::full;
    Date since_date{};
    int days = 0;

    static WindowSpec full() { return {}; }
    static WindowSpec since(Date d) {
        WindowSpec w;
        w.kind = Kind::since;
        w.since_date = d;
        return w;
    }
    static WindowSpec last_n_days(int n) {
        if (n < 2) throw DomainError("last_n_days window needs n >= 2");
        WindowSpec w;
        w.kind = Kind::last_n_days;
        w.days = n;
        return w;
    }

    bool operator==(const WindowSpec&) const = default;
};

inline nlohmann::json to_json(const WindowSpec& w) {
    switch (w.kind) {
        case WindowSpec::Kind::full: return "full";
        case WindowSpec::Kind::since: return nlohmann::json{{"since", format_iso_date(w.since_date)}};
        case WindowSpec::Kind::last_n_days: return nlohmann::json{{"last_n_days", w.days}};
    }
    return nullptr;
}

inline WindowSpec window_from_json(const nlohmann::json& j) {
    if (j.is_string() && j.get<std::string>() == "full") {
        return WindowSpec::full();
    }
    if (j.is_object() && j.size() == 1 && j.contains("since") && j["since"].is_string()) {
        auto d = parse_iso_date(j["since"].get<std::string>());
        if (!d) throw ConfigError("invalid since date '" + j["since"].get<std::string>() + "'");
        const auto y = static_cast<int>(std::chrono::year_month_day{*d}.year());
        if (y < 1950 || y > 2100) throw ConfigError("since date out of range: " + j["since"].get<std::string>());
        return WindowSpec::since(*d);
    }
    if (j.is_object() && j.size() == 1 && j.contains("last_n_days") && j["last_n_days"].is_number_integer()) {
        const int n = j["last_n_days"].get<int>();
        if (n < 2) throw ConfigError("last_n_days must be at least 2");
        return WindowSpec::last_n_days(n);
    }
    throw ConfigError("unrecognised window spec: " + j.dump());
}

/// Per-court windows; courts without an entry use the full series.
struct WindowConfig {
    std::map<std::string, WindowSpec> per_court;

    WindowSpec for_court(const std::string& court_id) const {
        auto it = per_court.find(court_id);
        return it == per_court.end() ? WindowSpec::full() : it->second;
    }
};

inline WindowConfig parse_windows_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("windows: expected an object mapping court_id to window");
    WindowConfig cfg;
    for (const auto& [id, spec] : doc.items()) {
        cfg.per_court.emplace(id, window_from_json(spec));
    }
    return cfg;
}

/// Observations inside the window, without any size requirement.
inline std::vector<SnapshotObservation> window_observations(const SnapshotSeries& series, const WindowSpec& spec) {
    const auto& obs = series.observations;
    switch (spec.kind) {
        case WindowSpec::Kind::full: return obs;
        case WindowSpec::Kind::since: {
            std::vector<SnapshotObservation> out;
            std::copy_if(obs.begin(), obs.end(), std::back_inserter(out),
                         [&](const SnapshotObservation& o) { return o.date >= spec.since_date; });
            return out;
        }
        case WindowSpec::Kind::last_n_days: {
            if (obs.empty()) return {};
            const Date first = obs.back().date - std::chrono::days{spec.days - 1};
            std::vector<SnapshotObservation> out;
            std::copy_if(obs.begin(), obs.end(), std::back_inserter(out),
                         [&](const SnapshotObservation& o) { return o.date >= first; });
            return out;
        }
    }
    return obs;
}

/// last_n_days(n) keeps the n calendar days ending at the last observation.
inline SnapshotSeries select_window(const SnapshotSeries& series, const WindowSpec& spec) {
    SnapshotSeries out;
    out.court_id = series.court_id;
    out.observations = window_observations(series, spec);
    if (out.observations.size() < 2) {
        throw InsufficientData("court '" + series.court_id + "': " + std::to_string(out.observations.size()) +
                               " observation(s) in window, need at least 2");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Overrides
// ---------------------------------------------------------------------------

inline std::vector<OverrideEntry> parse_overrides_json(const nlohmann::json& doc) {
    if (!doc.is_array()) throw ConfigError("overrides: expected a JSON array");
    std::vector<OverrideEntry> out;
    auto number = [](const nlohmann::json& obj, const char* key) -> std::optional<double> {
        if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
        if (!obj[key].is_number()) throw ConfigError(std::string("overrides: '") + key + "' must be a number");
        return obj[key].get<double>();
    };
    for (const auto& item : doc) {
        if (!item.is_object() || !item.contains("court_id") || !item["court_id"].is_string()) {
            throw ConfigError("overrides: each entry needs a string court_id");
        }
        OverrideEntry e;
        e.court_id = item["court_id"].get<std::string>();
        e.p0_override = number(item, "p0_override");
        e.daily_rate_override = number(item, "daily_rate_override");
        e.daily_disposal_override = number(item, "daily_disposal_override");
        e.reason = item.value("reason", "");
        e.source = item.value("source", "");
        if (!e.p0_override && !e.daily_rate_override && !e.daily_disposal_override) {
            throw ConfigError("override for '" + e.court_id + "' sets no value");
        }
        if (e.p0_override && *e.p0_override < 0) {
            throw ConfigError("override for '" + e.court_id + "': negative p0");
        }
        if (e.daily_disposal_override && *e.daily_disposal_override < 0) {
            throw ConfigError("override for '" + e.court_id + "': negative disposal rate");
        }
        out.push_back(std::move(e));
    }
    return out;
}

inline Dataset apply_overrides(Dataset ds, const std::vector<OverrideEntry>& overrides) {
    for (const auto& o : overrides) {
        const bool known = ds.find_court(o.court_id) || ds.find_series(o.court_id);
        if (!known) {
            throw ConfigError("override references unknown court '" + o.court_id + "'");
        }
        ds.overrides[o.court_id] = o;
        for (auto& c : ds.courts) {
            if (c.court_id == o.court_id) c.data_source = DataSource::external_override;
        }
    }
    return ds;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

struct DataPaths {
    std::filesystem::path snapshots;
    std::filesystem::path strength;
    std::optional<std::filesystem::path> overrides;
    std::optional<std::filesystem::path> windows;

    /// Conventional layout: snapshots.csv, strength.csv and the optional
    /// overrides.json / windows.json inside one directory.
    static DataPaths from_directory(const std::filesystem::path& dir) {
        DataPaths p;
        p.snapshots = dir / "snapshots.csv";
        p.strength = dir / "strength.csv";
        if (std::filesystem::exists(dir / "overrides.json")) p.overrides = dir / "overrides.json";
        if (std::filesystem::exists(dir / "windows.json")) p.windows = dir / "windows.json";
        return p;
    }
};

inline std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return in;
}

inline nlohmann::json read_json_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

struct LoadedData {
    Dataset dataset;
    WindowConfig windows;
};

inline LoadedData load_data(const DataPaths& paths) {
    LoadedData out;
    Dataset ds;
    if (paths.snapshots.extension() == ".json") {
        ds = parse_snapshot_json(read_json_file(paths.snapshots), paths.snapshots.string());
    } else {
        auto in = open_input(paths.snapshots);
        ds = parse_snapshot_csv(in, paths.snapshots.string());
    }
    {
        auto in = open_input(paths.strength);
        auto courts = parse_strength_csv(in, &ds.provenance.warnings, paths.strength.string());
        ds.provenance.sources.push_back(paths.strength.string());
        ds = attach_strength(std::move(ds), std::move(courts));
    }
    if (paths.overrides) {
        ds = apply_overrides(std::move(ds), parse_overrides_json(read_json_file(*paths.overrides)));
        ds.provenance.sources.push_back(paths.overrides->string());
    }
    if (paths.windows) {
        out.windows = parse_windows_json(read_json_file(*paths.windows));
        for (const auto& [id, _] : out.windows.per_court) {
            if (!ds.find_court(id)) throw ConfigError("window references unknown court '" + id + "'");
        }
    }
    out.dataset = std::move(ds);
    return out;
}

inline nlohmann::json to_json(const Finding& f) {
    return {{"court_id", f.court_id},
            {"date", f.date ? nlohmann::json(format_iso_date(*f.date)) : nlohmann::json(nullptr)},
            {"check", f.check_name},
            {"severity", std::string(to_string(f.severity))},
            {"detail", f.detail}};
}

}  // namespace pendency
