#include "intertwine/report.hpp"

#include <cmath>
#include <cstdio>

#include "intertwine/errors.hpp"

namespace intertwine {

void CheckReport::finalize() {
    passed = std::isfinite(residual) && residual >= 0.0 && residual <= tolerance * reference_scale;
    if (require_decrease && !strictly_decreasing()) passed = false;
}

bool CheckReport::strictly_decreasing() const {
    for (std::size_t i = 1; i < residuals.size(); ++i) {
        if (!(residuals[i] < residuals[i - 1])) return false;
    }
    return true;
}

std::optional<double> log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return std::nullopt;
    const double den = n * sxx - sx * sx;
    if (den == 0.0) return std::nullopt;
    return (n * sxy - sx * sy) / den;
}

nlohmann::json report_to_json(const CheckReport& r) {
    nlohmann::json j;
    j["check_name"] = r.check_name;
    nlohmann::json params = nlohmann::json::array();
    for (const auto& [name, v] : r.params) params.push_back({{"name", name}, {"value", {v.real(), v.imag()}}});
    j["params"] = params;
    j["N"] = r.bands;
    j["residuals"] = r.residuals;
    j["residual"] = r.residual;
    j["reference_scale"] = r.reference_scale;
    j["tolerance"] = r.tolerance;
    j["slope"] = r.slope ? nlohmann::json(*r.slope) : nlohmann::json(nullptr);
    j["require_decrease"] = r.require_decrease;
    j["passed"] = r.passed;
    j["seed"] = r.seed;
    j["wall_time_ms"] = r.wall_time_ms;
    j["notes"] = r.notes;
    j["details"] = r.details;
    j["config"] = r.config;
    return j;
}

CheckReport report_from_json(const nlohmann::json& j) {
    try {
        CheckReport r;
        r.check_name = j.at("check_name").get<std::string>();
        for (const auto& p : j.at("params")) {
            const auto& v = p.at("value");
            r.params.emplace_back(p.at("name").get<std::string>(),
                                  Complex(v.at(0).get<double>(), v.at(1).get<double>()));
        }
        r.bands = j.at("N").get<std::vector<int>>();
        r.residuals = j.at("residuals").get<std::vector<double>>();
        r.residual = j.at("residual").get<double>();
        r.reference_scale = j.at("reference_scale").get<double>();
        r.tolerance = j.at("tolerance").get<double>();
        if (!j.at("slope").is_null()) r.slope = j.at("slope").get<double>();
        r.require_decrease = j.at("require_decrease").get<bool>();
        r.passed = j.at("passed").get<bool>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.wall_time_ms = j.at("wall_time_ms").get<double>();
        r.notes = j.at("notes").get<std::vector<std::string>>();
        r.details = j.at("details");
        r.config = j.at("config");
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw StructureError(std::string("report document: ") + e.what());
    }
}

void print_report(std::ostream& os, const CheckReport& r) {
    char buf[160];
    os << "== " << r.check_name << " : " << (r.passed ? "PASS" : "FAIL") << "\n";
    for (const auto& [name, v] : r.params) {
        std::snprintf(buf, sizeof buf, "   %-10s % .6g %+.6gi\n", name.c_str(), v.real(), v.imag());
        os << buf;
    }
    if (!r.bands.empty()) {
        os << "   N        residual\n";
        for (std::size_t i = 0; i < r.bands.size() && i < r.residuals.size(); ++i) {
            std::snprintf(buf, sizeof buf, "   %-8d %.4e\n", r.bands[i], r.residuals[i]);
            os << buf;
        }
    }
    std::snprintf(buf, sizeof buf, "   residual %.4e  tolerance %.1e x %.4g", r.residual, r.tolerance,
                  r.reference_scale);
    os << buf;
    if (r.slope) {
        std::snprintf(buf, sizeof buf, "  slope %.3f", *r.slope);
        os << buf;
    }
    std::snprintf(buf, sizeof buf, "  seed %llu  %.1f ms\n", static_cast<unsigned long long>(r.seed),
                  r.wall_time_ms);
    os << buf;
    for (const auto& n : r.notes) os << "   note: " << n << "\n";
}

}  // namespace intertwine
