#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "pendency/errors.hpp"

namespace pendency {

/// Working strength by year: a linear ramp from `start` to `target` over
/// `ramp_years`, flat afterwards. A zero-year ramp jumps to the target at t = 1.
struct StaffingSchedule {
    double start = 0.0;
    double target = 0.0;
    int ramp_years = 0;

    double at(int t) const {
        if (t <= 0) return start;
        if (ramp_years == 0 || t >= ramp_years) return target;
        return start + (target - start) * static_cast<double>(t) / static_cast<double>(ramp_years);
    }

    /// First year from which strength stays constant.
    int ramp_end() const { return std::max(ramp_years, 1); }
};

inline StaffingSchedule build_ramp(double w0, double target, int ramp_years) {
    if (ramp_years < 0) throw DomainError("ramp_years must be nonnegative");
    if (w0 < 0.0 || target < 0.0) throw DomainError("strength must be nonnegative");
    return {w0, target, ramp_years};
}

inline constexpr int kDefaultHorizonCap = 10000;

/// Rates are yearly: r0 in cases/year, d in cases/judge/year.
struct Scenario {
    double p0 = 0.0;
    double r0 = 0.0;
    double d = 0.0;
    StaffingSchedule schedule;
    int horizon_cap = kDefaultHorizonCap;

    /// Pendency growth once the ramp has completed.
    double final_rate() const { return r0 - d * (schedule.target - schedule.start); }
};

struct TrajectoryPoint {
    int t = 0;
    double p = 0.0;
    double r = 0.0;
    double w = 0.0;

    bool operator==(const TrajectoryPoint&) const = default;
};

using Trajectory = std::vector<TrajectoryPoint>;

struct ClearanceOutcome {
    /// Smallest year with p_t <= 0; empty means the backlog never clears.
    std::optional<int> clears_in;
    double final_rate = 0.0;

    bool clears() const { return clears_in.has_value(); }
};

inline void check_scenario(const Scenario& s) {
    if (!(s.p0 >= 0.0)) throw DomainError("p0 must be nonnegative");
    if (!(s.d >= 0.0)) throw DomainError("disposal rate must be nonnegative");
    if (s.horizon_cap < 1) throw DomainError("horizon_cap must be at least 1");
    if (!std::isfinite(s.r0)) throw DomainError("r0 must be finite");
}

namespace detail {

/// One recurrence step: p_{t+1} = p_t + r_t, r_{t+1} = r_t - d (w_{t+1} - w_t).
/// The rate is taken in its telescoped form r0 - d (w_{t+1} - w0) so that
/// rounding does not accumulate and the post-ramp rate equals final_rate().
inline TrajectoryPoint step(const Scenario& s, const TrajectoryPoint& cur) {
    TrajectoryPoint next;
    next.t = cur.t + 1;
    next.p = cur.p + cur.r;
    next.w = s.schedule.at(next.t);
    next.r = s.r0 - s.d * (next.w - s.schedule.start);
    return next;
}

struct Simulation {
    Trajectory trajectory;
    ClearanceOutcome outcome;
};

inline Simulation simulate(const Scenario& s) {
    check_scenario(s);
    Simulation sim;
    sim.outcome.final_rate = s.final_rate();
    TrajectoryPoint cur{0, s.p0, s.r0, s.schedule.at(0)};
    sim.trajectory.push_back(cur);
    const int ramp_end = s.schedule.ramp_end();
    while (true) {
        if (cur.p <= 0.0) {
            sim.outcome.clears_in = cur.t;
            return sim;
        }
        // Staffing is constant from here on, so the rate never changes again.
        if (cur.t >= ramp_end && cur.r >= 0.0) {
            return sim;
        }
        if (cur.t >= s.horizon_cap) {
            throw HorizonExceeded("pendency still positive after " + std::to_string(s.horizon_cap) + " years");
        }
        cur = step(s, cur);
        sim.trajectory.push_back(cur);
    }
}

}  // namespace detail

/// Iterates the yearly recurrence until pendency reaches zero or the
/// post-ramp rate is nonnegative.
inline Trajectory project(const Scenario& s) { return detail::simulate(s).trajectory; }

inline ClearanceOutcome years_to_clear(const Scenario& s) { return detail::simulate(s).outcome; }

/// p_T after exactly `years` steps, with no early stop.
inline double pending_at(const Scenario& s, int years) {
    TrajectoryPoint cur{0, s.p0, s.r0, s.schedule.at(0)};
    for (int i = 0; i < years; ++i) cur = detail::step(s, cur);
    return cur.p;
}

inline double apply_disposal_floor(double d, double floor) {
    if (floor < 0.0) throw DomainError("disposal floor must be nonnegative");
    return std::max(d, floor);
}

}  // namespace pendency
