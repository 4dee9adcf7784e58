#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pendency/date.hpp"
#include "pendency/errors.hpp"

namespace pendency {

/// Portal disposal figures are monthly; a month counts as 30 days.
inline constexpr double kDaysPerMonth = 30.0;

/// Default yearly factor: 12 months of 30 days, so daily and yearly rates stay
/// on the same convention as the monthly/30 disposal figures.
inline constexpr double kDefaultDaysPerYear = 12.0 * kDaysPerMonth;

enum class DataSource { njdg, external_override };

struct CourtRecord {
    std::string court_id;
    std::string name;
    int sanctioned_strength = 0;
    /// Average over the observation period, so not necessarily integral.
    double working_strength = 0.0;
    DataSource data_source = DataSource::njdg;

    bool operator==(const CourtRecord&) const = default;
};

struct SnapshotObservation {
    Date date{};
    std::int64_t pending_civil = 0;
    std::int64_t pending_criminal = 0;
    std::int64_t pending_writ = 0;
    std::int64_t pending_total = 0;
    std::optional<std::int64_t> filed_monthly;
    std::optional<std::int64_t> disposed_monthly;

    bool operator==(const SnapshotObservation&) const = default;
};

/// Observations for one court, strictly increasing by date.
struct SnapshotSeries {
    std::string court_id;
    std::vector<SnapshotObservation> observations;

    bool operator==(const SnapshotSeries&) const = default;
};

struct RatesBundle {
    double daily_pendency_rate = 0.0;  // cases/day, may be negative
    double daily_disposal_per_judge = 0.0;
    double p0 = 0.0;

    bool operator==(const RatesBundle&) const = default;
};

inline double load_ratio(double pending, double working) {
    if (!(working > 0.0)) {
        throw DomainError("no working judges");
    }
    return pending / working;
}

inline double disposal_rate_per_judge_day(double monthly_disposed, double working) {
    if (!(working > 0.0)) {
        throw DomainError("no working judges");
    }
    if (monthly_disposed < 0.0) {
        throw DomainError("negative disposal count");
    }
    return monthly_disposed / kDaysPerMonth / working;
}

inline double annualize(double daily_rate, double days_per_year = kDefaultDaysPerYear) {
    return daily_rate * days_per_year;
}

struct Vacancy {
    /// Negative when the working strength exceeds the sanctioned strength.
    double count = 0.0;
    double fraction = 0.0;
};

inline Vacancy vacancy(double sanctioned, double working) {
    if (!(sanctioned > 0.0)) {
        throw DomainError("sanctioned strength must be positive");
    }
    const double count = sanctioned - working;
    return {count, count / sanctioned};
}

}  // namespace pendency
