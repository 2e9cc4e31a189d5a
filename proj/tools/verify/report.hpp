#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace kudla::verify {

struct Report {
    std::string check_name;
    std::map<std::string, std::string> inputs;
    std::vector<double> values;
    double residual = 0;
    double tolerance = 0;
    bool passed = false;
    std::int64_t runtime_ms = 0;
};

inline Report make_report(std::string name, std::map<std::string, std::string> inputs, std::vector<double> values,
                          double residual, double tolerance) {
    Report r{std::move(name), std::move(inputs), std::move(values), residual, tolerance, false, 0};
    r.passed = residual <= tolerance;
    return r;
}

// Reports carry a zero runtime unless timing is requested, so repeated runs serialize identically.
inline nlohmann::ordered_json to_json(const Report& r, bool with_timing) {
    nlohmann::ordered_json j;
    j["check_name"] = r.check_name;
    j["inputs"] = r.inputs;
    auto vals = nlohmann::ordered_json::array();
    for (double v : r.values) vals.push_back(v);
    j["values"] = vals;
    j["residual"] = r.residual;
    j["tolerance"] = r.tolerance;
    j["passed"] = r.passed;
    j["runtime_ms"] = with_timing ? r.runtime_ms : 0;
    return j;
}

inline nlohmann::ordered_json to_json(const std::vector<Report>& rs, bool with_timing) {
    auto a = nlohmann::ordered_json::array();
    for (const auto& r : rs) a.push_back(to_json(r, with_timing));
    return a;
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }
    std::int64_t ms() const { return static_cast<std::int64_t>(seconds() * 1000.0); }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace kudla::verify
