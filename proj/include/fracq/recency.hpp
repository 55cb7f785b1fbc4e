#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "fracq/catalog.hpp"
#include "fracq/errors.hpp"

namespace fracq {

// Recency suppression for a category last selected t_ca steps ago:
//   c_m * (t_s - t_ca) / t_s   for t_ca < t_s
//   0                          otherwise
// c_m right after selection, falling linearly to zero at t_s.
constexpr double r_value(long long t_ca, double c_m, long long t_s) noexcept {
    if (t_ca < 0 || t_ca >= t_s) return 0.0;
    return c_m * static_cast<double>(t_s - t_ca) / static_cast<double>(t_s);
}

// Steps since each category was last selected.
struct RecencyTrackers {
    std::array<long long, kNumCategories> t_ca{};

    // Every category starts stale (suppression zero).
    static RecencyTrackers fresh(int t_s) {
        RecencyTrackers r;
        r.t_ca.fill(t_s);
        return r;
    }

    friend bool operator==(const RecencyTrackers&, const RecencyTrackers&) = default;
};

// End-of-step bookkeeping: the selected category restarts at 0, the rest age by one.
inline void recency_tick(RecencyTrackers& trackers, std::size_t selected_category) {
    if (selected_category >= kNumCategories)
        throw ContractViolation("category id out of range: " + std::to_string(selected_category));
    for (std::size_t i = 0; i < kNumCategories; ++i) {
        if (i == selected_category)
            trackers.t_ca[i] = 0;
        else
            ++trackers.t_ca[i];
    }
}

}  // namespace fracq
