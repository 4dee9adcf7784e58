#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#ifndef PENDENCY_DATA_DIR
#error "PENDENCY_DATA_DIR must be defined by the build"
#endif

namespace pendency::ptest {

inline std::filesystem::path data_dir() { return PENDENCY_DATA_DIR; }

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline double rel_err(double got, double want) {
    const double scale = std::max({1.0, std::abs(got), std::abs(want)});
    return std::abs(got - want) / scale;
}

/// Reference iteration of the yearly recurrence, written directly from the
/// model definition: w_t interpolates linearly to the target and then holds.
/// Returns p_T. Deliberately shares no code with the engine.
inline double reference_pending(double p0, double r0, double d, double w0, double target, int ramp_years, int years) {
    auto w = [&](int t) {
        if (t == 0) return w0;
        if (ramp_years == 0) return target;
        const int c = t < ramp_years ? t : ramp_years;
        return w0 + (target - w0) * c / ramp_years;
    };
    double p = p0;
    double r = r0;
    for (int t = 1; t <= years; ++t) {
        p = p + r;
        r = r - d * (w(t) - w(t - 1));
    }
    return p;
}

/// Closed form of p_T for T <= ramp_years.
inline double closed_form_pending(double p0, double r0, double d, double w0, double target, int ramp_years, int T) {
    return p0 + T * r0 - d * (target - w0) * (T - 1.0) * T / (2.0 * ramp_years);
}

struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine); }
};

}  // namespace pendency::ptest
