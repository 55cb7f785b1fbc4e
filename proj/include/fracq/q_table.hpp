#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fracq/errors.hpp"
#include "fracq/state_estimation.hpp"

namespace fracq {

// Dense 4 x K table of learned values, row-major. K is 5 (one column per
// action category) or 45 (one per action).
class QTable {
public:
    explicit QTable(std::size_t columns) : columns_(columns), values_(kNumStates * columns, 0.0) {
        if (columns == 0) throw ContractViolation("Q-table needs at least one column");
    }

    std::size_t rows() const noexcept { return kNumStates; }
    std::size_t columns() const noexcept { return columns_; }

    double at(StateId s, std::size_t column) const { return values_[offset(s, column)]; }
    double& at(StateId s, std::size_t column) { return values_[offset(s, column)]; }

    std::span<const double> row(StateId s) const noexcept {
        return {values_.data() + index_of(s) * columns_, columns_};
    }

    std::span<const double> values() const noexcept { return values_; }

    double row_max(StateId s) const noexcept {
        const auto r = row(s);
        return *std::max_element(r.begin(), r.end());
    }

    void zero() noexcept { std::fill(values_.begin(), values_.end(), 0.0); }

    bool all_zero() const noexcept {
        return std::all_of(values_.begin(), values_.end(), [](double x) { return x == 0.0; });
    }

    friend bool operator==(const QTable&, const QTable&) = default;

private:
    std::size_t offset(StateId s, std::size_t column) const {
        if (column >= columns_)
            throw ContractViolation("Q-table column " + std::to_string(column) + " out of range (width " +
                                    std::to_string(columns_) + ")");
        return index_of(s) * columns_ + column;
    }

    std::size_t columns_;
    std::vector<double> values_;
};

// One temporal-difference update of a single cell:
//   q[s][c] <- q[s][c] + alpha * (reward + gamma * max(q[s']) - q[s][c])
// The column is an action (traditional) or an action category (FRAC).
inline void update_q(QTable& q, StateId state_before, std::size_t column, double reward, StateId state_after,
                     double alpha, double gamma) {
    if (column >= q.columns())
        throw ContractViolation("update column " + std::to_string(column) + " out of range");
    if (!std::isfinite(reward)) throw ContractViolation("reward must be finite");
    const double target = reward + gamma * q.row_max(state_after);
    double& cell = q.at(state_before, column);
    cell = cell + alpha * (target - cell);
}

}  // namespace fracq
