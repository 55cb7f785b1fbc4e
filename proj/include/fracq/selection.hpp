#pragma once

// Probabilistic top-3 selection shared by both learners, the recency-adjusted
// category values used by FRAC, and the uniform baseline.

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "fracq/catalog.hpp"
#include "fracq/config.hpp"
#include "fracq/q_table.hpp"
#include "fracq/random.hpp"
#include "fracq/recency.hpp"

namespace fracq {

// Indices ordered by descending value. Equal values are ordered uniformly at
// random: shuffle first, then stable sort.
template <typename Generator>
std::vector<std::size_t> rank_descending(std::span<const double> values, Generator& gen) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[uniform_index(gen, i)]);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    return order;
}

// One categorical draw over {rank-1, rank-2, rank-3, uniform over all K}.
// The uniform branch may land on a top-3 index as well.
template <typename Generator>
std::size_t select_ranked(std::span<const double> values, const SelectionProbs& probs, Generator& gen) {
    if (values.size() < 3)
        throw ValidationError("ranked selection needs at least 3 candidates, got " + std::to_string(values.size()));
    const double u = uniform_unit(gen);
    std::size_t rank;
    if (u < probs.rank1)
        rank = 0;
    else if (u < probs.rank1 + probs.rank2)
        rank = 1;
    else if (u < (probs.rank1 + probs.rank2) + probs.rank3)
        rank = 2;
    else
        return uniform_index(gen, values.size());
    return rank_descending(values, gen)[rank];
}

// q[state][c] - R(c, t_ca[c]) for each category.
inline std::array<double, kNumCategories> frac_effective_values(const QTable& q, StateId state,
                                                                const RecencyTrackers& trackers,
                                                                const LearnerConfig& cfg) {
    if (q.columns() != kNumCategories) throw ContractViolation("FRAC selection needs a 4x5 Q-table");
    std::array<double, kNumCategories> out{};
    const auto row = q.row(state);
    for (std::size_t c = 0; c < kNumCategories; ++c) out[c] = row[c] - r_value(trackers.t_ca[c], cfg.c_m, cfg.t_s);
    return out;
}

struct Selection {
    std::size_t category_id = 0;
    std::size_t action_id = 0;
    std::vector<double> effective_values;  // values ranked at selection time; empty for the random baseline

    friend bool operator==(const Selection&, const Selection&) = default;
};

// Category by ranked selection over recency-adjusted values, then an action
// uniformly within it.
template <typename Generator>
Selection select_action_frac(const QTable& q, StateId state, const RecencyTrackers& trackers,
                             const ActionCatalog& catalog, const LearnerConfig& cfg, Generator& gen) {
    const auto effective = frac_effective_values(q, state, trackers, cfg);
    const std::size_t category = select_ranked(std::span<const double>(effective), cfg.selection_probs, gen);
    const auto& actions = catalog.category(category).actions;
    const std::size_t action = actions[uniform_index(gen, actions.size())].action_id;
    return {category, action, std::vector<double>(effective.begin(), effective.end())};
}

template <typename Generator>
std::size_t select_action_traditional(const QTable& q, StateId state, const LearnerConfig& cfg, Generator& gen) {
    if (q.columns() != kNumActions) throw ContractViolation("traditional selection needs a 4x45 Q-table");
    return select_ranked(q.row(state), cfg.selection_probs, gen);
}

template <typename Generator>
std::size_t select_action_random(const ActionCatalog& catalog, Generator& gen) {
    return uniform_index(gen, catalog.num_actions());
}

}  // namespace fracq
