#pragma once

#include "fracq/q_table.hpp"

namespace fracq {

struct ForgettingCounter {
    int consecutive_penalties = 0;

    friend bool operator==(const ForgettingCounter&, const ForgettingCounter&) = default;
};

// Tracks the streak of penalty steps (reward < 0). When the streak reaches
// t_f the whole Q-table is zeroed and the streak restarts. Any positive
// reward clears the streak. Returns true when the table was forgotten.
inline bool forgetting_observe(ForgettingCounter& counter, double reward, QTable& q, int t_f) {
    if (reward > 0.0) {
        counter.consecutive_penalties = 0;
        return false;
    }
    if (reward < 0.0) ++counter.consecutive_penalties;
    if (counter.consecutive_penalties >= t_f) {
        q.zero();
        counter.consecutive_penalties = 0;
        return true;
    }
    return false;
}

}  // namespace fracq
