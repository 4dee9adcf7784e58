#include <gtest/gtest.h>

#include "pendency/policy.hpp"
#include "test_support.hpp"

using namespace pendency;

namespace {

SolverRequest request(double p0, double r0, double d, double w0, std::int64_t floor, int T) {
    return {p0, r0, d, w0, floor, T};
}

/// Linear scan over integer strengths using the reference recurrence.
std::int64_t brute_force_required(const SolverRequest& r) {
    std::int64_t n = 0;
    while (ptest::reference_pending(r.p0, r.r0, r.d, r.w0, double(n), r.target_years, r.target_years) > 0) ++n;
    return std::max(n, r.sanctioned_floor);
}

}  // namespace

TEST(RequiredJudges, WorkedExample) {
    const auto req = request(1000, 0, 100, 10, 0, 5);
    const auto res = required_judges(req);
    EXPECT_EQ(res.required_judges, 15);
    EXPECT_EQ(res.binding, Binding::computed);
    EXPECT_TRUE(res.verified);
    // p = [1000, 1000, 900, 700, 400, 0]
    const double expect[] = {1000, 1000, 900, 700, 400, 0};
    for (int t = 0; t <= 5; ++t) EXPECT_EQ(ptest::reference_pending(1000, 0, 100, 10, 15, 5, t), expect[t]);
}

TEST(RequiredJudges, NothingToClearIsFloored) {
    for (double d : {0.0, 1.0, 250.0}) {
        const auto res = required_judges(request(0, -5, d, 10, 13, 5));
        EXPECT_EQ(res.required_judges, 13);
        EXPECT_EQ(res.binding, Binding::floored_at_sanctioned);
        EXPECT_TRUE(res.verified);
    }
}

TEST(RequiredJudges, Errors) {
    EXPECT_THROW(required_judges(request(100, 10, 0, 10, 12, 5)), Infeasible);
    EXPECT_THROW(required_judges(request(100, 10, 5, 10, 12, 1)), DomainError);
    EXPECT_THROW(required_judges(request(100, 10, 5, 10, 12, 0)), DomainError);
    EXPECT_THROW(required_judges(request(-1, 10, 5, 10, 12, 5)), DomainError);
}

TEST(RequiredJudges, MatchesBruteForceSearch) {
    ptest::Rng rng(51);
    for (int i = 0; i < 500; ++i) {
        const auto req = request(rng.integer(0, 200000), rng.integer(-5000, 20000), rng.uniform(50, 3000),
                                 rng.integer(1, 80), rng.integer(0, 120), rng.integer(2, 20));
        if (req.d == 0) continue;
        EXPECT_EQ(required_judges(req).required_judges, brute_force_required(req));
    }
}

TEST(RequiredJudges, SolverAgreesWithSimulator) {
    ptest::Rng rng(52);
    int checked = 0;
    while (checked < 1000) {
        const auto req = request(rng.uniform(0, 1e6), rng.uniform(-1e4, 1e4), rng.uniform(1, 1e4),
                                 rng.uniform(0, 100), rng.integer(0, 150), rng.integer(2, 30));
        const auto res = required_judges(req);
        ASSERT_TRUE(res.verified);
        EXPECT_LE(pending_after_ramp(req, double(res.required_judges)), 0.0);
        if (res.binding == Binding::computed) {
            EXPECT_GT(pending_after_ramp(req, double(res.required_judges - 1)), 0.0);
            ++checked;
        } else {
            EXPECT_EQ(res.required_judges, req.sanctioned_floor);
        }
    }
}

TEST(RequiredJudges, NonincreasingInTargetYears) {
    ptest::Rng rng(53);
    for (int i = 0; i < 1000; ++i) {
        const double w0 = rng.uniform(1, 100);
        const auto floor = static_cast<std::int64_t>(std::ceil(w0)) + rng.integer(0, 60);
        auto req = request(rng.uniform(0, 1e6), rng.uniform(-1e4, 1e4), rng.uniform(1, 1e4), w0, floor, 2);
        std::int64_t prev = std::numeric_limits<std::int64_t>::max();
        for (int T = 2; T <= 25; ++T) {
            req.target_years = T;
            const auto n = required_judges(req).required_judges;
            EXPECT_LE(n, prev) << "T=" << T;
            prev = n;
        }
    }
}

TEST(RequiredJudges, ClosedFormSumIdentity) {
    // sum_{t<T} [r0 - d (N - w0) t / T] = T r0 - d (N - w0)(T - 1)/2, on integer data
    ptest::Rng rng(54);
    for (int i = 0; i < 500; ++i) {
        const int T = rng.integer(2, 20);
        const long long r0 = rng.integer(-10000, 10000);
        const long long d = rng.integer(0, 500);
        const long long w0 = rng.integer(0, 60);
        const long long N = w0 + 2LL * T * rng.integer(0, 30);  // makes every term integral
        long long lhs_times_2T = 0;
        for (int t = 0; t < T; ++t) lhs_times_2T += 2LL * T * r0 - 2LL * d * (N - w0) * t;
        const long long rhs_times_2T = 2LL * T * T * r0 - T * d * (N - w0) * (T - 1);
        EXPECT_EQ(lhs_times_2T, rhs_times_2T);
        EXPECT_EQ(ptest::reference_pending(0, double(r0), double(d), double(w0), double(N), T, T),
                  double(lhs_times_2T) / (2.0 * T));
    }
}

TEST(JudgesToZeroRate, Examples) {
    EXPECT_EQ(judges_to_zero_rate(360, 36), 10);
    EXPECT_EQ(judges_to_zero_rate(-500, 40), 0);
    EXPECT_EQ(judges_to_zero_rate(365, 36), 11);
    EXPECT_EQ(judges_to_zero_rate(0, 0), 0);
    EXPECT_THROW(judges_to_zero_rate(10, 0), Infeasible);
}

TEST(ClassifySufficiency, Examples) {
    EXPECT_EQ(classify_sufficiency(10, 50, 25), Sufficiency::within_vacancy);
    EXPECT_EQ(classify_sufficiency(40, 85, 52), Sufficiency::exceeds_sanctioned);
    EXPECT_EQ(classify_sufficiency(0, 10, 10), Sufficiency::within_vacancy);
    EXPECT_EQ(classify_sufficiency(33, 85, 52), Sufficiency::within_vacancy);
}

TEST(ClassifySufficiency, ExceedingImpliesNeverClearsAtSanctioned) {
    ptest::Rng rng(55);
    int exceeding = 0;
    for (int i = 0; i < 3000; ++i) {
        // Integer strengths keep ceil(r/d) > vacancy equivalent to r/d > vacancy.
        const int w0 = rng.integer(1, 80);
        const int S = w0 + rng.integer(0, 50);
        const double r0 = rng.uniform(-1e4, 5e4);
        const double d = rng.uniform(10, 3000);
        if (r0 - d * (S - w0) == 0.0) continue;
        const auto delta = judges_to_zero_rate(r0, d);
        if (classify_sufficiency(double(delta), S, w0) != Sufficiency::exceeds_sanctioned) continue;
        ++exceeding;
        Scenario s;
        s.p0 = rng.uniform(1, 1e6);
        s.r0 = r0;
        s.d = d;
        s.schedule = build_ramp(w0, S, rng.integer(0, 30));
        EXPECT_FALSE(years_to_clear(s).clears());
    }
    EXPECT_GT(exceeding, 100);
}
