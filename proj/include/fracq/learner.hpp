#pragma once

// The learner state machine. One step: inherit the previous post-action
// state, select an action, receive the user's readings, fuse them into a
// state and reward, then learn. FRAC additionally runs forgetting and ages
// the recency trackers; traditional Q-learning only updates its 4x45 table;
// the random baseline never learns.

#include <cstddef>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "fracq/catalog.hpp"
#include "fracq/config.hpp"
#include "fracq/forgetting.hpp"
#include "fracq/q_table.hpp"
#include "fracq/random.hpp"
#include "fracq/recency.hpp"
#include "fracq/selection.hpp"
#include "fracq/state_estimation.hpp"

namespace fracq {

struct StepRecord {
    long long step_index = 0;  // 1-based
    StateId state_before = kInitialState;
    std::size_t category_id = 0;
    std::size_t action_id = 0;
    StateId state_after = kInitialState;
    double reward = 0.0;
    bool forgot = false;
    std::vector<double> effective_values;
    SensorReadings readings;
    ScoreBreakdown scores;

    friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

constexpr std::size_t table_width(Algorithm a) noexcept {
    return a == Algorithm::frac ? kNumCategories : kNumActions;
}

class Learner {
public:
    Learner(Algorithm algorithm, const LearnerConfig& config, ActionCatalog catalog = ActionCatalog::builtin())
        : algorithm_(algorithm),
          config_((validate(config), config)),
          catalog_(std::move(catalog)),
          q_(table_width(algorithm)),
          trackers_(RecencyTrackers::fresh(config.t_s)),
          rng_(config.seed) {}

    // Chooses the next action without learning anything. Must be followed by observe().
    const Selection& select() {
        if (pending_) throw ContractViolation("select() called while a selection is awaiting observe()");
        Selection sel;
        switch (algorithm_) {
            case Algorithm::frac:
                sel = select_action_frac(q_, state_, trackers_, catalog_, config_, rng_);
                break;
            case Algorithm::traditional: {
                const auto row = q_.row(state_);
                sel.effective_values.assign(row.begin(), row.end());
                sel.action_id = select_action_traditional(q_, state_, config_, rng_);
                sel.category_id = catalog_.category_of(sel.action_id);
                break;
            }
            case Algorithm::random:
                sel.action_id = select_action_random(catalog_, rng_);
                sel.category_id = catalog_.category_of(sel.action_id);
                break;
        }
        pending_ = std::move(sel);
        return *pending_;
    }

    // Completes the pending step with the user's response. Invalid readings
    // throw ValidationError and leave the learner untouched.
    StepRecord observe(const SensorReadings& readings) {
        if (!pending_) throw ContractViolation("observe() called without a pending selection");
        const FusedState fused = fuse_state(readings);

        StepRecord rec;
        rec.step_index = steps_ + 1;
        rec.state_before = state_;
        rec.category_id = pending_->category_id;
        rec.action_id = pending_->action_id;
        rec.state_after = fused.state;
        rec.reward = reward_for_state(fused.state);
        rec.effective_values = std::move(pending_->effective_values);
        rec.readings = readings;
        rec.scores = fused.scores;
        pending_.reset();

        switch (algorithm_) {
            case Algorithm::frac:
                update_q(q_, rec.state_before, rec.category_id, rec.reward, rec.state_after, config_.alpha,
                         config_.gamma);
                rec.forgot = forgetting_observe(counter_, rec.reward, q_, config_.t_f);
                recency_tick(trackers_, rec.category_id);
                break;
            case Algorithm::traditional:
                update_q(q_, rec.state_before, rec.action_id, rec.reward, rec.state_after, config_.alpha,
                         config_.gamma);
                break;
            case Algorithm::random:
                break;
        }
        state_ = rec.state_after;
        ++steps_;
        return rec;
    }

    // Full cycle with readings known up front.
    StepRecord step(const SensorReadings& readings) {
        validate(readings);
        select();
        return observe(readings);
    }

    // Full cycle where the response depends on the chosen action.
    template <typename Responder>
        requires std::is_invocable_r_v<SensorReadings, Responder, const Selection&>
    StepRecord step(Responder&& respond) {
        const Selection& sel = select();
        return observe(std::forward<Responder>(respond)(sel));
    }

    Algorithm algorithm() const noexcept { return algorithm_; }
    const LearnerConfig& config() const noexcept { return config_; }
    const ActionCatalog& catalog() const noexcept { return catalog_; }
    const QTable& q_table() const noexcept { return q_; }
    const RecencyTrackers& trackers() const noexcept { return trackers_; }
    const ForgettingCounter& forgetting_counter() const noexcept { return counter_; }
    StateId current_state() const noexcept { return state_; }
    long long steps_completed() const noexcept { return steps_; }
    const std::optional<Selection>& pending() const noexcept { return pending_; }

private:
    Algorithm algorithm_;
    LearnerConfig config_;
    ActionCatalog catalog_;
    QTable q_;
    RecencyTrackers trackers_;
    ForgettingCounter counter_;
    StateId state_ = kInitialState;
    long long steps_ = 0;
    Rng rng_;
    std::optional<Selection> pending_;
};

}  // namespace fracq
