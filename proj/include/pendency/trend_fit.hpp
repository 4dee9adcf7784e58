#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pendency/core.hpp"
#include "pendency/ingestion.hpp"

namespace pendency {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Least-squares line y = intercept + slope * x.
struct RegressionFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t n = 0;
    double residual_sum = 0.0;
    double sse = 0.0;

    double at(double x) const { return intercept + slope * x; }
};

/// Closed-form ordinary least squares, computed on centred x and y.
inline RegressionFit ols_fit(std::span<const Point> points) {
    const std::size_t n = points.size();
    if (n < 2) {
        throw DegenerateFit("need at least 2 points, got " + std::to_string(n));
    }
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (const auto& p : points) {
        mean_x += p.x;
        mean_y += p.y;
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& p : points) {
        const double dx = p.x - mean_x;
        sxx += dx * dx;
        sxy += dx * (p.y - mean_y);
    }
    if (!(sxx > 0.0)) {
        throw DegenerateFit("all points share the same x");
    }

    RegressionFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    for (const auto& p : points) {
        const double r = p.y - (mean_y + fit.slope * (p.x - mean_x));
        fit.residual_sum += r;
        fit.sse += r * r;
    }
    return fit;
}

inline RegressionFit ols_fit(const std::vector<Point>& points) { return ols_fit(std::span<const Point>(points)); }

/// How the projection-start pendency is taken from a windowed series.
enum class P0Mode {
    observed,  // pending_total on the last day in the window
    fitted,    // the fitted line evaluated on that day
};

inline std::optional<P0Mode> parse_p0_mode(std::string_view text) {
    if (text == "observed") return P0Mode::observed;
    if (text == "fitted") return P0Mode::fitted;
    return std::nullopt;
}

inline std::vector<Point> pendency_points(const SnapshotSeries& series) {
    std::vector<Point> pts;
    pts.reserve(series.observations.size());
    for (const auto& o : series.observations) {
        pts.push_back({static_cast<double>(days_since_epoch(o.date)), static_cast<double>(o.pending_total)});
    }
    return pts;
}

struct PendencyRate {
    double daily_pendency_rate = 0.0;
    double p0 = 0.0;
    RegressionFit fit;
    Date first_date{};
    Date last_date{};
};

inline PendencyRate pendency_rate(const SnapshotSeries& series, const WindowSpec& spec,
                                  P0Mode mode = P0Mode::observed) {
    const SnapshotSeries windowed = select_window(series, spec);
    const auto pts = pendency_points(windowed);
    PendencyRate out;
    out.fit = ols_fit(pts);
    out.daily_pendency_rate = out.fit.slope;
    out.first_date = windowed.observations.front().date;
    out.last_date = windowed.observations.back().date;
    out.p0 = mode == P0Mode::observed ? static_cast<double>(windowed.observations.back().pending_total)
                                      : out.fit.at(pts.back().x);
    return out;
}

}  // namespace pendency
