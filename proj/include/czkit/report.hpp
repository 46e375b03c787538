#pragma once

#include <string>
#include <vector>

namespace czkit {

// One verified inequality: lhs <= claimed_constant * rhs, with a 1e-9
// multiplicative grace so exact-equality cases survive roundoff.
struct BoundReport {
    std::string name;
    double claimed_constant = 0.0;
    double measured_lhs = 0.0;
    double measured_rhs = 0.0;
    double ratio = 0.0;  // lhs / (claimed * rhs); 0 when the check is vacuous
    bool pass = false;
    std::string witness;  // input achieving the worst ratio, if any

    static constexpr double kGrace = 1e-9;

    static BoundReport make(std::string name, double claimed, double lhs, double rhs,
                            std::string witness = {}) {
        BoundReport r;
        r.name = std::move(name);
        r.claimed_constant = claimed;
        r.measured_lhs = lhs;
        r.measured_rhs = rhs;
        const double bound = claimed * rhs;
        r.ratio = bound > 0.0 ? lhs / bound : (lhs > 0.0 ? 1.0 / 0.0 : 0.0);
        r.pass = lhs <= bound * (1.0 + kGrace) || (lhs == 0.0 && bound == 0.0);
        r.witness = std::move(witness);
        return r;
    }
};

inline bool all_pass(const std::vector<BoundReport>& reports) {
    for (const auto& r : reports) {
        if (!r.pass) return false;
    }
    return true;
}

}  // namespace czkit
