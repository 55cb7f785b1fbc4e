#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fracq/errors.hpp"

namespace fracq {

enum class Algorithm : std::uint8_t { frac, traditional, random };

constexpr std::string_view algorithm_name(Algorithm a) noexcept {
    switch (a) {
        case Algorithm::frac: return "frac";
        case Algorithm::traditional: return "traditional";
        case Algorithm::random: return "random";
    }
    return "?";
}

// Accepts "q" as shorthand for traditional Q-learning.
inline Algorithm parse_algorithm(std::string_view name) {
    if (name == "frac") return Algorithm::frac;
    if (name == "traditional" || name == "q") return Algorithm::traditional;
    if (name == "random") return Algorithm::random;
    throw ValidationError("unknown algorithm '" + std::string(name) + "' (expected frac, traditional|q, random)");
}

// Branch probabilities for ranked selection: top-1, top-2, top-3, uniform.
struct SelectionProbs {
    double rank1 = 0.6;
    double rank2 = 0.25;
    double rank3 = 0.13;
    double uniform = 0.02;

    friend bool operator==(const SelectionProbs&, const SelectionProbs&) = default;
};

// Allowed slack on the branch-probability sum; the defaults sum to 1.0 exactly
// in double arithmetic, user overrides may not.
inline constexpr double kProbSumTolerance = 1e-9;

struct LearnerConfig {
    double alpha = 0.9;
    double gamma = 0.5;
    int t_f = 10;       // consecutive penalties before the Q-table is forgotten
    double c_m = 15.0;  // maximum recency suppression
    int t_s = 3;        // steps over which suppression decays to zero
    SelectionProbs selection_probs{};
    std::uint64_t seed = 0;

    friend bool operator==(const LearnerConfig&, const LearnerConfig&) = default;
};

inline std::vector<std::string> config_violations(const LearnerConfig& c) {
    Violations v;
    v.check(std::isfinite(c.alpha) && c.alpha > 0.0 && c.alpha <= 1.0, "alpha must satisfy 0 < alpha <= 1");
    v.check(std::isfinite(c.gamma) && c.gamma >= 0.0 && c.gamma < 1.0, "gamma must satisfy 0 <= gamma < 1");
    v.check(c.t_f >= 1, "t_f must be >= 1");
    v.check(std::isfinite(c.c_m) && c.c_m > 0.0, "c_m must be > 0");
    v.check(c.t_s > 0, "t_s must be > 0");
    const auto& p = c.selection_probs;
    const std::array<double, 4> probs{p.rank1, p.rank2, p.rank3, p.uniform};
    bool each_ok = true;
    for (double x : probs) each_ok = each_ok && std::isfinite(x) && x >= 0.0 && x <= 1.0;
    v.check(each_ok, "selection probabilities must each lie in [0, 1]");
    const double sum = ((p.rank1 + p.rank2) + p.rank3) + p.uniform;
    v.check(std::fabs(sum - 1.0) <= kProbSumTolerance, "selection probabilities must sum to 1");
    return v.items();
}

inline void validate(const LearnerConfig& c) {
    auto items = config_violations(c);
    if (!items.empty()) throw ValidationError(std::move(items));
}

}  // namespace fracq
