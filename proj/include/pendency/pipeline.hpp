#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pendency/core.hpp"
#include "pendency/ingestion.hpp"
#include "pendency/policy.hpp"
#include "pendency/projection.hpp"
#include "pendency/trend_fit.hpp"

namespace pendency {

/// Everything the projection and solver need for one court.
struct CourtInputs {
    CourtRecord court;
    RatesBundle rates;
    WindowSpec window;
    /// Absent when both rate and p0 come from an override.
    std::optional<RegressionFit> fit;
    /// Windowed (date, pending_total) pairs, for plotting.
    std::vector<std::pair<Date, std::int64_t>> points;
};

struct RateOptions {
    P0Mode p0_mode = P0Mode::observed;
};

inline std::string court_context(const std::string& court_id, const std::string& what) {
    return "court '" + court_id + "': " + what;
}

/// Mean monthly disposal over the window divided down to cases/judge/day.
inline double windowed_disposal_rate(const CourtRecord& court, const std::vector<SnapshotObservation>& obs) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& o : obs) {
        if (o.disposed_monthly) {
            sum += static_cast<double>(*o.disposed_monthly);
            ++n;
        }
    }
    if (n == 0) {
        throw InsufficientData(court_context(court.court_id, "no disposal figures in window"));
    }
    return disposal_rate_per_judge_day(sum / static_cast<double>(n), court.working_strength);
}

inline CourtInputs derive_court_inputs(const Dataset& ds, const CourtRecord& court, const WindowSpec& window,
                                       const RateOptions& opts = {}) {
    CourtInputs out;
    out.court = court;
    out.window = window;

    static const SnapshotSeries empty;
    const SnapshotSeries* series = ds.find_series(court.court_id);
    if (!series) series = &empty;
    const OverrideEntry* ov = ds.find_override(court.court_id);

    const auto in_window = window_observations(*series, window);
    for (const auto& o : in_window) out.points.emplace_back(o.date, o.pending_total);

    const bool need_fit = !(ov && ov->daily_rate_override && ov->p0_override);
    try {
        if (need_fit) {
            const PendencyRate pr = pendency_rate(*series, window, opts.p0_mode);
            out.fit = pr.fit;
            out.rates.daily_pendency_rate = pr.daily_pendency_rate;
            out.rates.p0 = pr.p0;
        }
        if (ov && ov->daily_rate_override) out.rates.daily_pendency_rate = *ov->daily_rate_override;
        if (ov && ov->p0_override) out.rates.p0 = *ov->p0_override;
        out.rates.daily_disposal_per_judge = ov && ov->daily_disposal_override
                                                 ? *ov->daily_disposal_override
                                                 : windowed_disposal_rate(court, in_window);
    } catch (const InsufficientData& e) {
        throw InsufficientData(court_context(court.court_id, e.what()));
    } catch (const DegenerateFit& e) {
        throw DegenerateFit(court_context(court.court_id, e.what()));
    } catch (const DomainError& e) {
        throw DomainError(court_context(court.court_id, e.what()));
    }
    if (out.rates.p0 < 0.0) out.rates.p0 = 0.0;
    return out;
}

/// Court inputs for every court, ordered by court_id.
inline std::vector<CourtInputs> derive_all(const Dataset& ds, const WindowConfig& windows, const RateOptions& opts = {}) {
    std::vector<CourtInputs> out;
    out.reserve(ds.courts.size());
    for (const auto& c : ds.courts) {
        out.push_back(derive_court_inputs(ds, c, windows.for_court(c.court_id), opts));
    }
    return out;
}

/// Target strength for a ramp: the court's sanctioned strength or an explicit number.
using TargetStrength = std::variant<std::monostate, double>;

struct ScenarioParams {
    int ramp_years = 10;
    TargetStrength target;  // monostate = sanctioned
    std::optional<double> disposal_floor_daily;
    double days_per_year = kDefaultDaysPerYear;
};

inline double resolve_target(const CourtRecord& court, const TargetStrength& target) {
    return std::holds_alternative<double>(target) ? std::get<double>(target)
                                                  : static_cast<double>(court.sanctioned_strength);
}

inline double yearly_disposal(const CourtInputs& in, const std::optional<double>& floor_daily, double days_per_year) {
    double d_daily = in.rates.daily_disposal_per_judge;
    if (floor_daily) d_daily = apply_disposal_floor(d_daily, *floor_daily);
    return annualize(d_daily, days_per_year);
}

inline Scenario make_scenario(const CourtInputs& in, const ScenarioParams& params) {
    Scenario s;
    s.p0 = in.rates.p0;
    s.r0 = annualize(in.rates.daily_pendency_rate, params.days_per_year);
    s.d = yearly_disposal(in, params.disposal_floor_daily, params.days_per_year);
    s.schedule = build_ramp(in.court.working_strength, resolve_target(in.court, params.target), params.ramp_years);
    return s;
}

inline SolverRequest make_solver_request(const CourtInputs& in, int target_years,
                                         const std::optional<double>& floor_daily, double days_per_year) {
    SolverRequest req;
    req.p0 = in.rates.p0;
    req.r0 = annualize(in.rates.daily_pendency_rate, days_per_year);
    req.d = yearly_disposal(in, floor_daily, days_per_year);
    req.w0 = in.court.working_strength;
    req.sanctioned_floor = in.court.sanctioned_strength;
    req.target_years = target_years;
    return req;
}

}  // namespace pendency
