#pragma once

#include <algorithm>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "pendency/pipeline.hpp"
#include "pendency/scenario_api.hpp"

namespace pendency {

/// Request handling for the scenario endpoints, independent of the transport.
/// The court table is installed once by load() and is read-only afterwards;
/// until then every endpoint answers 503.
class ScenarioService {
public:
    struct Reply {
        int status = 200;
        nlohmann::json body;
    };

    void load(std::vector<CourtInputs> courts, double days_per_year = kDefaultDaysPerYear) {
        std::sort(courts.begin(), courts.end(),
                  [](const CourtInputs& a, const CourtInputs& b) { return a.court.court_id < b.court.court_id; });
        auto state = std::make_shared<const State>(State{std::move(courts), days_per_year});
        std::lock_guard lock(mutex_);
        state_ = std::move(state);
    }

    bool ready() const { return snapshot() != nullptr; }

    Reply courts() const {
        auto state = snapshot();
        if (!state) return not_ready();
        nlohmann::json list = nlohmann::json::array();
        for (const auto& c : state->courts) list.push_back(court_summary(c));
        return {200, list};
    }

    Reply project(std::string_view body) const {
        return dispatch(body, [](const CourtInputs& c, const ScenarioRequest& r, double dpy) {
            return project_response(c, r, dpy);
        });
    }

    Reply solve(std::string_view body) const {
        return dispatch(body, [](const CourtInputs& c, const ScenarioRequest& r, double dpy) {
            return solve_response(c, r, dpy);
        });
    }

private:
    struct State {
        std::vector<CourtInputs> courts;
        double days_per_year;
    };

    std::shared_ptr<const State> snapshot() const {
        std::lock_guard lock(mutex_);
        return state_;
    }

    static Reply not_ready() { return {503, {{"error", "dataset not loaded"}}}; }

    static Reply error(int status, const std::string& message) { return {status, {{"error", message}}}; }

    template <typename Handler>
    Reply dispatch(std::string_view body, Handler handler) const {
        auto state = snapshot();
        if (!state) return not_ready();
        try {
            const auto json = nlohmann::json::parse(body.begin(), body.end());
            const auto req = parse_scenario_request(json);
            const auto it = std::lower_bound(
                state->courts.begin(), state->courts.end(), req.court_id,
                [](const CourtInputs& c, const std::string& id) { return c.court.court_id < id; });
            if (it == state->courts.end() || it->court.court_id != req.court_id) {
                return error(404, "unknown court '" + req.court_id + "'");
            }
            return {200, handler(*it, req, state->days_per_year)};
        } catch (const nlohmann::json::parse_error& e) {
            return error(400, std::string("malformed JSON: ") + e.what());
        } catch (const RequestError& e) {
            return error(e.status(), e.what());
        } catch (const Infeasible& e) {
            return error(422, std::string("infeasible: ") + e.what());
        } catch (const Error& e) {
            return error(422, e.what());
        }
    }

    mutable std::mutex mutex_;
    std::shared_ptr<const State> state_;
};

/// HTTP/1.1 binding for ScenarioService with permissive CORS.
class ScenarioServer {
public:
    explicit ScenarioServer(const ScenarioService& service) : service_(service) {
        server_.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                     {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                     {"Access-Control-Allow-Headers", "Content-Type"}});
        server_.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
        server_.Get("/courts", [this](const httplib::Request&, httplib::Response& res) {
            send(res, service_.courts());
        });
        server_.Post("/project", [this](const httplib::Request& req, httplib::Response& res) {
            send(res, service_.project(req.body));
        });
        server_.Post("/solve", [this](const httplib::Request& req, httplib::Response& res) {
            send(res, service_.solve(req.body));
        });
    }

    /// Binds to an ephemeral port; returns it, or -1 on failure.
    int bind_any_port(const std::string& host = "127.0.0.1") { return server_.bind_to_any_port(host); }
    bool bind(const std::string& host, int port) { return server_.bind_to_port(host, port); }

    /// Blocks until stop() is called.
    bool listen_after_bind() { return server_.listen_after_bind(); }
    void stop() { server_.stop(); }
    void wait_until_ready() const { server_.wait_until_ready(); }
    bool is_running() const { return server_.is_running(); }

private:
    static void send(httplib::Response& res, const ScenarioService::Reply& reply) {
        res.status = reply.status;
        res.set_content(reply.body.dump(), "application/json");
    }

    const ScenarioService& service_;
    httplib::Server server_;
};

}  // namespace pendency
