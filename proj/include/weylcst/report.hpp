#pragma once

// Verification bookkeeping: each check records the computed and reference
// values (reduced to real magnitudes), the tolerance, and whether it is meant
// absolutely or relative to the reference.  pass holds exactly when
// |computed - reference| <= tolerance (scaled by |reference| in relative
// mode), so re-reading a serialized report reproduces the flag bit-exactly.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace weylcst {

enum class ToleranceMode { absolute, relative };

struct CheckResult {
    std::string name;
    double computed = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    ToleranceMode mode = ToleranceMode::absolute;
    bool pass = false;
    double runtime_ms = 0.0;

    double deviation() const {
        const double diff = std::abs(computed - reference);
        if (mode == ToleranceMode::relative) return diff / std::abs(reference);
        return diff;
    }
};

inline CheckResult make_check(std::string name, double computed, double reference,
                              double tolerance, ToleranceMode mode, double runtime_ms = 0.0) {
    CheckResult c;
    c.name = std::move(name);
    c.computed = computed;
    c.reference = reference;
    c.tolerance = tolerance;
    c.mode = mode;
    c.runtime_ms = runtime_ms;
    c.pass = c.deviation() <= tolerance;
    return c;
}

struct VerificationReport {
    std::string suite;
    uint64_t seed = 0;
    std::vector<CheckResult> checks;

    void add(CheckResult c) { checks.push_back(std::move(c)); }
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    double worst_deviation() const {
        double w = 0.0;
        for (const auto& c : checks) w = std::max(w, c.deviation());
        return w;
    }
};

}  // namespace weylcst
