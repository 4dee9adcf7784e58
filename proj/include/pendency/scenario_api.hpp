#pragma once

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "pendency/errors.hpp"
#include "pendency/pipeline.hpp"
#include "pendency/policy.hpp"
#include "pendency/projection.hpp"

namespace pendency {

/// A request rejected with an HTTP-style status (400 malformed, 404 unknown
/// court, 422 violates an invariant or cannot be solved).
class RequestError : public Error {
public:
    RequestError(int status, const std::string& what) : Error(what), status_(status) {}
    int status() const noexcept { return status_; }

private:
    int status_;
};

struct ScenarioRequest {
    std::string court_id;
    int ramp_years = 10;
    TargetStrength target;  // monostate = "sanctioned"
    std::optional<double> disposal_floor;  // cases/judge/day
    std::optional<int> target_years;

    bool operator==(const ScenarioRequest&) const = default;
};

inline ScenarioRequest parse_scenario_request(const nlohmann::json& j) {
    if (!j.is_object()) throw RequestError(400, "request body must be a JSON object");
    ScenarioRequest req;
    if (!j.contains("court_id") || !j["court_id"].is_string()) {
        throw RequestError(400, "court_id (string) is required");
    }
    req.court_id = j["court_id"].get<std::string>();

    if (j.contains("ramp_years") && !j["ramp_years"].is_null()) {
        if (!j["ramp_years"].is_number_integer()) throw RequestError(400, "ramp_years must be an integer");
        req.ramp_years = j["ramp_years"].get<int>();
        if (req.ramp_years < 0) throw RequestError(422, "ramp_years must be nonnegative");
    }
    if (j.contains("target_strength") && !j["target_strength"].is_null()) {
        const auto& t = j["target_strength"];
        if (t.is_string() && t.get<std::string>() == "sanctioned") {
            req.target = std::monostate{};
        } else if (t.is_number()) {
            req.target = t.get<double>();
            if (!(std::get<double>(req.target) >= 0.0)) throw RequestError(422, "target_strength must be nonnegative");
        } else {
            throw RequestError(400, "target_strength must be \"sanctioned\" or a number");
        }
    }
    if (j.contains("disposal_floor") && !j["disposal_floor"].is_null()) {
        if (!j["disposal_floor"].is_number()) throw RequestError(400, "disposal_floor must be a number");
        req.disposal_floor = j["disposal_floor"].get<double>();
        if (!(*req.disposal_floor >= 0.0)) throw RequestError(422, "disposal_floor must be nonnegative");
    }
    if (j.contains("target_years") && !j["target_years"].is_null()) {
        if (!j["target_years"].is_number_integer()) throw RequestError(400, "target_years must be an integer");
        req.target_years = j["target_years"].get<int>();
        if (*req.target_years < 2) throw RequestError(422, "target_years must be at least 2");
    }
    return req;
}

inline nlohmann::json to_json(const ScenarioRequest& req) {
    nlohmann::json target = std::holds_alternative<double>(req.target) ? nlohmann::json(std::get<double>(req.target))
                                                                       : nlohmann::json("sanctioned");
    return {{"court_id", req.court_id},
            {"ramp_years", req.ramp_years},
            {"target_strength", target},
            {"disposal_floor", req.disposal_floor ? nlohmann::json(*req.disposal_floor) : nlohmann::json(nullptr)},
            {"target_years", req.target_years ? nlohmann::json(*req.target_years) : nlohmann::json(nullptr)}};
}

inline nlohmann::json to_json(const Trajectory& traj) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& pt : traj) out.push_back({{"t", pt.t}, {"p", pt.p}, {"r", pt.r}, {"w", pt.w}});
    return out;
}

inline nlohmann::json to_json(const ClearanceOutcome& o) {
    if (o.clears_in) return {{"kind", "clears_in"}, {"years", *o.clears_in}};
    return {{"kind", "never_clears"}};
}

inline nlohmann::json to_json(const Scenario& s) {
    return {{"p0", s.p0},
            {"r0", s.r0},
            {"d", s.d},
            {"w0", s.schedule.start},
            {"target", s.schedule.target},
            {"ramp_years", s.schedule.ramp_years}};
}

namespace detail {

inline nlohmann::json projection_body(const Scenario& s, const ScenarioRequest& req) {
    const auto sim = detail::simulate(s);
    return {{"inputs", to_json(req)},
            {"scenario", to_json(s)},
            {"trajectory", to_json(sim.trajectory)},
            {"verdict", to_json(sim.outcome)},
            {"final_rate", sim.outcome.final_rate}};
}

}  // namespace detail

/// Projection for one court under the requested ramp.
inline nlohmann::json project_response(const CourtInputs& court, const ScenarioRequest& req,
                                       double days_per_year = kDefaultDaysPerYear) {
    ScenarioParams params;
    params.ramp_years = req.ramp_years;
    params.target = req.target;
    params.disposal_floor_daily = req.disposal_floor;
    params.days_per_year = days_per_year;
    auto body = detail::projection_body(make_scenario(court, params), req);
    body["required_judges"] = nullptr;
    return body;
}

/// Solver mode: minimum strength to clear within target_years, plus the
/// projection of ramping to that strength over the same years.
inline nlohmann::json solve_response(const CourtInputs& court, const ScenarioRequest& req,
                                     double days_per_year = kDefaultDaysPerYear) {
    if (!req.target_years) throw RequestError(422, "target_years is required for /solve");
    const SolverRequest sreq = make_solver_request(court, *req.target_years, req.disposal_floor, days_per_year);
    const SolverResult result = required_judges(sreq);
    Scenario s;
    s.p0 = sreq.p0;
    s.r0 = sreq.r0;
    s.d = sreq.d;
    s.schedule = build_ramp(sreq.w0, static_cast<double>(result.required_judges), *req.target_years);
    auto body = detail::projection_body(s, req);
    body["required_judges"] = result.required_judges;
    body["binding"] = std::string(to_string(result.binding));
    body["verified"] = result.verified;
    return body;
}

inline nlohmann::json court_summary(const CourtInputs& in) {
    return {{"court_id", in.court.court_id},
            {"name", in.court.name},
            {"sanctioned", in.court.sanctioned_strength},
            {"working", in.court.working_strength},
            {"p0", in.rates.p0},
            {"rate_daily", in.rates.daily_pendency_rate},
            {"d_daily", in.rates.daily_disposal_per_judge}};
}

}  // namespace pendency
