#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "pendency/errors.hpp"
#include "pendency/projection.hpp"

namespace pendency {

/// Yearly units, as for Scenario.
struct SolverRequest {
    double p0 = 0.0;
    double r0 = 0.0;
    double d = 0.0;
    double w0 = 0.0;
    std::int64_t sanctioned_floor = 0;
    int target_years = 0;
};

enum class Binding { computed, floored_at_sanctioned };

inline std::string_view to_string(Binding b) {
    return b == Binding::computed ? "computed" : "floored_at_sanctioned";
}

struct SolverResult {
    std::int64_t required_judges = 0;
    Binding binding = Binding::computed;
    bool verified = false;
};

/// Pendency after `years` when strength ramps linearly from w0 to n over
/// exactly those years.
inline double pending_after_ramp(const SolverRequest& req, double n) {
    Scenario s;
    s.p0 = req.p0;
    s.r0 = req.r0;
    s.d = req.d;
    s.schedule = StaffingSchedule{req.w0, n, req.target_years};
    return pending_at(s, req.target_years);
}

/// Smallest integer strength N such that ramping w0 -> N over T years leaves
/// p_T <= 0, never below the sanctioned floor.
///
/// Summing the rates over the ramp gives p_T = p0 + T r0 - d (N - w0)(T - 1)/2,
/// so N* = w0 + 2 (p0 + T r0) / (d (T - 1)). The ceiling of N* is then nudged
/// against forward simulation so the answer agrees with project() even when
/// N* lands on an integer up to rounding.
inline SolverResult required_judges(const SolverRequest& req) {
    if (req.target_years < 2) {
        throw DomainError("target_years must be at least 2: the first year's rate is fixed at r0");
    }
    if (!(req.p0 >= 0.0)) throw DomainError("p0 must be nonnegative");
    if (!(req.d >= 0.0)) throw DomainError("disposal rate must be nonnegative");
    if (!(req.w0 >= 0.0)) throw DomainError("working strength must be nonnegative");
    if (req.sanctioned_floor < 0) throw DomainError("sanctioned floor must be nonnegative");

    const double T = req.target_years;
    const double need = req.p0 + T * req.r0;
    const auto floor = req.sanctioned_floor;
    auto clears = [&](std::int64_t n) { return pending_after_ramp(req, static_cast<double>(n)) <= 0.0; };

    // Below this, the minimum is certainly under the floor.
    bool below_floor = false;
    std::int64_t n = 0;
    if (req.d == 0.0) {
        if (need > 0.0) {
            throw Infeasible("no disposal capacity: pendency cannot be cleared by adding judges");
        }
        below_floor = true;
    } else {
        const double n_star = req.w0 + 2.0 * need / (req.d * (T - 1.0));
        if (!std::isfinite(n_star) || n_star > 1e15) {
            throw Infeasible("required strength is beyond any representable count");
        }
        if (n_star < static_cast<double>(floor) - 2.0) {
            below_floor = true;
        } else {
            n = static_cast<std::int64_t>(std::ceil(n_star));
            while (!clears(n)) ++n;
            while (clears(n - 1)) --n;
        }
    }

    SolverResult out;
    if (below_floor || n < floor) {
        out.required_judges = floor;
        out.binding = Binding::floored_at_sanctioned;
    } else {
        out.required_judges = n;
        out.binding = Binding::computed;
    }
    out.verified = clears(out.required_judges) &&
                   (out.binding == Binding::floored_at_sanctioned || !clears(out.required_judges - 1));
    if (!out.verified) {
        throw Infeasible("solver result failed forward verification");
    }
    return out;
}

/// Extra judges (beyond current strength) needed to bring yearly growth to zero.
inline std::int64_t judges_to_zero_rate(double r_yearly, double d_yearly) {
    if (d_yearly < 0.0) throw DomainError("disposal rate must be nonnegative");
    if (!(r_yearly > 0.0)) return 0;
    if (d_yearly == 0.0) throw Infeasible("growing pendency with zero disposal rate");
    return static_cast<std::int64_t>(std::ceil(r_yearly / d_yearly));
}

enum class Sufficiency { within_vacancy, exceeds_sanctioned };

inline std::string_view to_string(Sufficiency s) {
    return s == Sufficiency::within_vacancy ? "within_vacancy" : "exceeds_sanctioned";
}

inline Sufficiency classify_sufficiency(double delta, double sanctioned, double working) {
    return delta <= sanctioned - working ? Sufficiency::within_vacancy : Sufficiency::exceeds_sanctioned;
}

}  // namespace pendency
