#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "intertwine/specfun.hpp"

namespace intertwine {

/// Outcome of one identity check.
///
/// passed holds iff residual <= tolerance * reference_scale and, when a
/// convergence sequence is required, the residuals strictly decrease.
struct CheckReport {
    std::string check_name;
    std::vector<std::pair<std::string, Complex>> params;
    std::vector<int> bands;          // N for each convergence entry
    std::vector<double> residuals;   // residual at each N (or per sample)
    double residual = 0.0;
    double reference_scale = 1.0;
    double tolerance = 0.0;
    std::optional<double> slope;     // fitted d log(residual) / d log(N)
    bool require_decrease = false;
    bool passed = false;
    std::uint64_t seed = 0;
    double wall_time_ms = 0.0;
    std::vector<std::string> notes;
    nlohmann::json details = nlohmann::json::object();
    nlohmann::json config = nlohmann::json::object();

    // Recomputes passed from residual, tolerance and the sequence rule.
    void finalize();
    bool strictly_decreasing() const;
};

/// Least-squares slope of log(y) against log(x); nullopt if fewer than two
/// usable points.
std::optional<double> log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

nlohmann::json report_to_json(const CheckReport& r);
CheckReport report_from_json(const nlohmann::json& j);

/// Human-readable summary block.
void print_report(std::ostream& os, const CheckReport& r);

}  // namespace intertwine
