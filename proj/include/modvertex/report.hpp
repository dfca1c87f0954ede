#pragma once

#include <chrono>
#include <string>
#include <vector>

#include <json.hpp>

namespace modvertex {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string details;
    nlohmann::json witness;  // null unless the check produced data or a failure witness
    double millis = 0.0;
};

/// One suite run.  The JSON form is byte-deterministic for a fixed config:
/// wall-clock timings appear only in the text summary.
struct SuiteResult {
    std::string suite;
    nlohmann::json params;
    std::vector<CheckResult> checks;

    bool pass() const {
        for (auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    nlohmann::json to_json() const {
        nlohmann::json jchecks = nlohmann::json::array();
        for (auto& c : checks) {
            nlohmann::json jc{{"name", c.name}, {"pass", c.pass}, {"details", c.details}};
            if (!c.witness.is_null()) jc["witness"] = c.witness;
            jchecks.push_back(std::move(jc));
        }
        return nlohmann::json{{"schema", "modvertex-report/1"},
                              {"suite", suite},
                              {"params", params},
                              {"pass", pass()},
                              {"checks", std::move(jchecks)}};
    }

    std::string text_summary() const {
        std::string out = "suite " + suite + ": " + (pass() ? "PASS" : "FAIL") + "\n";
        for (auto& c : checks) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%9.1f ms", c.millis);
            out += std::string("  [") + (c.pass ? "ok" : "FAIL") + "] " + c.name + "  (" + buf + ")";
            if (!c.details.empty()) out += "  " + c.details;
            out += "\n";
        }
        return out;
    }
};

class CheckTimer {
  public:
    CheckTimer() : start_(std::chrono::steady_clock::now()) {}
    double millis() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace modvertex
