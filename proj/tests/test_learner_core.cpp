#include <gtest/gtest.h>

#include <array>
#include <random>
#include <vector>

#include "fracq/catalog.hpp"
#include "fracq/forgetting.hpp"
#include "fracq/learner.hpp"
#include "fracq/q_table.hpp"
#include "fracq/recency.hpp"
#include "fracq/selection.hpp"

#include "oracles.hpp"

using namespace fracq;

namespace {

constexpr SensorReadings kDelighted{9.5, 30.0, EmotionLabel::happy};  // state 3, +10
constexpr SensorReadings kMiserable{0.0, 120.0, EmotionLabel::sad};   // state 0, -10

LearnerConfig seeded(std::uint64_t seed) {
    LearnerConfig c;
    c.seed = seed;
    return c;
}

template <std::size_t N>
std::array<std::size_t, N> tally(std::span<const double> values, std::size_t draws, std::uint64_t seed) {
    std::array<std::size_t, N> counts{};
    Rng rng(seed);
    for (std::size_t i = 0; i < draws; ++i) ++counts.at(select_ranked(values, SelectionProbs{}, rng));
    return counts;
}

}  // namespace

// r_value

TEST(RValue, MatchesWorkedExamples) {
    EXPECT_EQ(r_value(0, 15.0, 3), 15.0);
    EXPECT_EQ(r_value(3, 15.0, 3), 0.0);
    EXPECT_EQ(r_value(1, 15.0, 3), 10.0);
    EXPECT_EQ(r_value(2, 15.0, 3), 5.0);
    EXPECT_EQ(r_value(100, 15.0, 3), 0.0);
}

TEST(RValue, LinearDecayThenZeroTail) {
    for (int t_s : {1, 2, 3, 4, 7}) {
        for (double c_m : {0.5, 1.0, 15.0}) {
            EXPECT_DOUBLE_EQ(r_value(0, c_m, t_s), c_m);
            const double step = c_m / t_s;
            for (int t = 1; t < t_s; ++t) {
                EXPECT_LT(r_value(t, c_m, t_s), r_value(t - 1, c_m, t_s));
                EXPECT_NEAR(r_value(t - 1, c_m, t_s) - r_value(t, c_m, t_s), step, 1e-12);
            }
            for (int t = t_s; t < t_s + 10; ++t) EXPECT_EQ(r_value(t, c_m, t_s), 0.0);
        }
    }
}

// update_q

TEST(UpdateQ, FromZeroTable) {
    QTable q(kNumCategories);
    update_q(q, StateId::neutral, 2, 10.0, StateId::positive, 0.9, 0.5);
    EXPECT_DOUBLE_EQ(q.at(StateId::neutral, 2), 9.0);
}

TEST(UpdateQ, SecondUpdateUsesOwnRowMax) {
    QTable q(kNumCategories);
    update_q(q, StateId::neutral, 2, 10.0, StateId::positive, 0.9, 0.5);
    update_q(q, StateId::neutral, 2, 10.0, StateId::neutral, 0.9, 0.5);
    EXPECT_NEAR(q.at(StateId::neutral, 2), 13.95, 1e-12);
}

TEST(UpdateQ, ContractsToZeroWithFullStepAndNoFuture) {
    QTable q(kNumCategories);
    q.at(StateId::positive, 4) = 7.25;
    update_q(q, StateId::positive, 4, 0.0, StateId::negative, 1.0, 0.0);
    EXPECT_EQ(q.at(StateId::positive, 4), 0.0);
}

TEST(UpdateQ, ColumnOutOfRangeIsContractViolation) {
    QTable q(kNumCategories);
    EXPECT_THROW(update_q(q, StateId::neutral, 5, 10.0, StateId::neutral, 0.9, 0.5), ContractViolation);
    QTable wide(kNumActions);
    EXPECT_NO_THROW(update_q(wide, StateId::neutral, 44, 10.0, StateId::neutral, 0.9, 0.5));
    EXPECT_THROW(update_q(wide, StateId::neutral, 45, 10.0, StateId::neutral, 0.9, 0.5), ContractViolation);
}

TEST(UpdateQ, TouchesExactlyOneEntry) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> value(-20.0, 20.0);
    std::uniform_int_distribution<int> state(0, 3);
    for (std::size_t width : {kNumCategories, kNumActions}) {
        std::uniform_int_distribution<std::size_t> column(0, width - 1);
        for (int trial = 0; trial < 200; ++trial) {
            QTable q(width);
            for (std::size_t s = 0; s < 4; ++s)
                for (std::size_t c = 0; c < width; ++c) q.at(static_cast<StateId>(s), c) = value(gen);
            const QTable before = q;
            const auto sb = static_cast<StateId>(state(gen));
            const auto sa = static_cast<StateId>(state(gen));
            const std::size_t col = column(gen);
            update_q(q, sb, col, value(gen), sa, 0.9, 0.5);
            for (std::size_t s = 0; s < 4; ++s)
                for (std::size_t c = 0; c < width; ++c) {
                    const auto st = static_cast<StateId>(s);
                    if (st == sb && c == col) continue;
                    EXPECT_EQ(std::bit_cast<std::uint64_t>(q.at(st, c)),
                              std::bit_cast<std::uint64_t>(before.at(st, c)));
                }
        }
    }
}

TEST(UpdateQ, SelfTransitionConvergesToDiscountedFixedPoint) {
    QTable q(kNumCategories);
    for (int i = 0; i < 200; ++i) update_q(q, StateId::very_positive, 1, 10.0, StateId::very_positive, 0.9, 0.5);
    EXPECT_NEAR(q.at(StateId::very_positive, 1), 20.0, 1e-9);
}

// select_ranked

TEST(SelectRanked, RejectsFewerThanThreeCandidates) {
    Rng rng(1);
    const std::vector<double> two{1.0, 2.0};
    EXPECT_THROW(select_ranked(two, SelectionProbs{}, rng), ValidationError);
}

TEST(SelectRanked, FiveDistinctValuesFollowBranchProbabilities) {
    const std::vector<double> values{3.0, -1.0, 7.0, 0.5, 2.0};  // ranks: 2, 0, 4, 3, 1
    constexpr std::size_t n = 100000;
    const auto counts = tally<5>(values, n, 2024);
    EXPECT_TRUE(oracle::within_binomial(counts[2], n, 0.604));
    EXPECT_TRUE(oracle::within_binomial(counts[0], n, 0.254));
    EXPECT_TRUE(oracle::within_binomial(counts[4], n, 0.134));
    EXPECT_TRUE(oracle::within_binomial(counts[3], n, 0.004));
    EXPECT_TRUE(oracle::within_binomial(counts[1], n, 0.004));
}

TEST(SelectRanked, FortyFiveValuesTailGetsOnlyUniformMass) {
    std::vector<double> values(kNumActions);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = static_cast<double>((i * 17) % 45);
    constexpr std::size_t n = 100000;
    const auto counts = tally<45>(values, n, 99);
    const double u = 0.02 / 45.0;
    std::size_t tail = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == 44.0)
            EXPECT_TRUE(oracle::within_binomial(counts[i], n, 0.6 + u));
        else if (values[i] == 43.0)
            EXPECT_TRUE(oracle::within_binomial(counts[i], n, 0.25 + u));
        else if (values[i] == 42.0)
            EXPECT_TRUE(oracle::within_binomial(counts[i], n, 0.13 + u));
        else
            tail += counts[i];
    }
    EXPECT_TRUE(oracle::within_binomial(tail, n, 42 * u));
}

TEST(SelectRanked, AllEqualValuesAreSymmetric) {
    const std::vector<double> zeros(5, 0.0);
    constexpr std::size_t n = 100000;
    const auto counts = tally<5>(zeros, n, 5);
    for (auto c : counts) EXPECT_TRUE(oracle::within_binomial(c, n, 0.2));
}

TEST(SelectRanked, TiedTopValuesShareTheirRanks) {
    const std::vector<double> values{5.0, 5.0, 1.0, 0.0, -1.0};
    constexpr std::size_t n = 100000;
    const auto counts = tally<5>(values, n, 77);
    EXPECT_TRUE(oracle::within_binomial(counts[0], n, 0.425 + 0.004));
    EXPECT_TRUE(oracle::within_binomial(counts[1], n, 0.425 + 0.004));
    EXPECT_TRUE(oracle::within_binomial(counts[2], n, 0.134));
}

TEST(SelectRanked, SameSeedSameDraws) {
    const std::vector<double> values{1.0, 2.0, 3.0, 4.0, 5.0};
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) EXPECT_EQ(select_ranked(values, {}, a), select_ranked(values, {}, b));
}

// frac_effective_values

TEST(FracEffectiveValues, StaleTrackersLeaveValuesAlone) {
    QTable q(kNumCategories);
    const auto eff = frac_effective_values(q, StateId::neutral, RecencyTrackers::fresh(3), LearnerConfig{});
    for (double x : eff) EXPECT_EQ(x, 0.0);
}

TEST(FracEffectiveValues, JustSelectedCategoryIsSuppressedByMaximum) {
    QTable q(kNumCategories);
    auto trackers = RecencyTrackers::fresh(3);
    trackers.t_ca[2] = 0;
    const auto eff = frac_effective_values(q, StateId::neutral, trackers, LearnerConfig{});
    EXPECT_EQ(eff, (std::array<double, 5>{0, 0, -15, 0, 0}));
}

TEST(FracEffectiveValues, SubtractsFromStateRow) {
    QTable q(kNumCategories);
    q.at(StateId::neutral, 0) = 5.0;
    q.at(StateId::neutral, 2) = 20.0;
    q.at(StateId::positive, 3) = 99.0;  // other rows ignored
    auto trackers = RecencyTrackers::fresh(3);
    trackers.t_ca[2] = 0;
    const QTable before = q;
    const auto eff = frac_effective_values(q, StateId::neutral, trackers, LearnerConfig{});
    EXPECT_EQ(eff, (std::array<double, 5>{5, 0, 5, 0, 0}));
    EXPECT_EQ(q, before);
}

TEST(FracEffectiveValues, RequiresCategoryTable) {
    QTable wide(kNumActions);
    EXPECT_THROW(frac_effective_values(wide, StateId::neutral, RecencyTrackers::fresh(3), {}), ContractViolation);
}

// select_action_frac / traditional / random

TEST(SelectActionFrac, ActionsUniformWithinChosenCategory) {
    const auto catalog = ActionCatalog::builtin();
    QTable q(kNumCategories);
    q.at(StateId::neutral, 0) = 50.0;  // category 0 dominates
    const auto trackers = RecencyTrackers::fresh(3);
    Rng rng(3);
    std::array<std::size_t, 3> within{};
    std::size_t cat0 = 0;
    for (int i = 0; i < 60000; ++i) {
        const auto sel = select_action_frac(q, StateId::neutral, trackers, catalog, LearnerConfig{}, rng);
        EXPECT_EQ(catalog.category_of(sel.action_id), sel.category_id);
        if (sel.category_id == 0) {
            ++cat0;
            ++within.at(sel.action_id);
        }
    }
    for (auto c : within) EXPECT_TRUE(oracle::within_binomial(c, cat0, 1.0 / 3.0));
}

TEST(SelectActionFrac, ZeroTableJointDistributionIsUniformThenUniform) {
    const auto catalog = ActionCatalog::builtin();
    QTable q(kNumCategories);
    const auto trackers = RecencyTrackers::fresh(3);
    Rng rng(8);
    constexpr std::size_t n = 100000;
    std::array<std::size_t, kNumActions> per_action{};
    std::array<std::size_t, kNumCategories> per_cat{};
    for (std::size_t i = 0; i < n; ++i) {
        const auto sel = select_action_frac(q, StateId::neutral, trackers, catalog, LearnerConfig{}, rng);
        ++per_cat[sel.category_id];
        ++per_action[sel.action_id];
    }
    for (auto c : per_cat) EXPECT_TRUE(oracle::within_binomial(c, n, 0.2));
    // chi-square over the 45 joint cells, p_a = 0.2 / |category|; 44 dof, 99.9% quantile ~ 78.7
    double chi2 = 0.0;
    for (std::size_t a = 0; a < kNumActions; ++a) {
        const double expected = n * 0.2 / static_cast<double>(kCategorySizes[catalog.category_of(a)]);
        chi2 += (per_action[a] - expected) * (per_action[a] - expected) / expected;
    }
    EXPECT_LT(chi2, 78.7);
}

TEST(SelectActionFrac, DominantCategoryChosenWithRankOneMass) {
    const auto catalog = ActionCatalog::builtin();
    QTable q(kNumCategories);
    q.at(StateId::positive, 0) = 10.0;
    Rng rng(21);
    constexpr std::size_t n = 100000;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i)
        hits += select_action_frac(q, StateId::positive, RecencyTrackers::fresh(3), catalog, {}, rng).category_id == 0;
    EXPECT_TRUE(oracle::within_binomial(hits, n, 0.604));
}

TEST(SelectActionTraditional, ZeroTableUniformOverActions) {
    QTable q(kNumActions);
    Rng rng(4);
    constexpr std::size_t n = 100000;
    std::array<std::size_t, kNumActions> counts{};
    for (std::size_t i = 0; i < n; ++i) ++counts.at(select_action_traditional(q, StateId::neutral, {}, rng));
    double chi2 = 0.0;
    const double expected = n / 45.0;
    for (auto c : counts) chi2 += (c - expected) * (c - expected) / expected;
    EXPECT_LT(chi2, 78.7);
}

TEST(SelectActionTraditional, TopThreeFollowRankMass) {
    QTable q(kNumActions);
    q.at(StateId::neutral, 10) = 3.0;
    q.at(StateId::neutral, 20) = 2.0;
    q.at(StateId::neutral, 30) = 1.0;
    Rng rng(6);
    constexpr std::size_t n = 100000;
    std::array<std::size_t, kNumActions> counts{};
    for (std::size_t i = 0; i < n; ++i) ++counts.at(select_action_traditional(q, StateId::neutral, {}, rng));
    const double u = 0.02 / 45.0;
    EXPECT_TRUE(oracle::within_binomial(counts[10], n, 0.6 + u));
    EXPECT_TRUE(oracle::within_binomial(counts[20], n, 0.25 + u));
    EXPECT_TRUE(oracle::within_binomial(counts[30], n, 0.13 + u));
}

TEST(SelectActionTraditional, RequiresActionTable) {
    QTable narrow(kNumCategories);
    Rng rng(1);
    EXPECT_THROW(select_action_traditional(narrow, StateId::neutral, {}, rng), ContractViolation);
}

TEST(Selection, DoesNotMutateInputs) {
    const auto catalog = ActionCatalog::builtin();
    QTable q(kNumCategories);
    q.at(StateId::neutral, 1) = 4.0;
    auto trackers = RecencyTrackers::fresh(3);
    trackers.t_ca[1] = 1;
    const QTable q_before = q;
    const auto trackers_before = trackers;
    Rng rng(12);
    for (int i = 0; i < 100; ++i) select_action_frac(q, StateId::neutral, trackers, catalog, {}, rng);
    EXPECT_EQ(q, q_before);
    EXPECT_EQ(trackers, trackers_before);
}

// forgetting

TEST(Forgetting, StreakReachingThresholdZeroesTable) {
    QTable q(kNumCategories);
    q.at(StateId::neutral, 0) = 3.0;
    ForgettingCounter counter{9};
    EXPECT_TRUE(forgetting_observe(counter, -5.0, q, 10));
    EXPECT_TRUE(q.all_zero());
    EXPECT_EQ(counter.consecutive_penalties, 0);
}

TEST(Forgetting, PositiveRewardClearsStreak) {
    QTable q(kNumCategories);
    q.at(StateId::neutral, 0) = 3.0;
    const QTable before = q;
    ForgettingCounter counter{9};
    EXPECT_FALSE(forgetting_observe(counter, 10.0, q, 10));
    EXPECT_EQ(counter.consecutive_penalties, 0);
    EXPECT_EQ(q, before);
}

TEST(Forgetting, TenPenaltiesFireExactlyOnce) {
    QTable q(kNumCategories);
    ForgettingCounter counter;
    for (int step = 1; step <= 19; ++step) {
        q.at(StateId::negative, 0) = 1.0;
        EXPECT_EQ(forgetting_observe(counter, -10.0, q, 10), step == 10) << "step " << step;
    }
}

// recency_tick

TEST(RecencyTick, ResetsSelectedAndAgesOthers) {
    RecencyTrackers t = RecencyTrackers::fresh(3);
    recency_tick(t, 2);
    EXPECT_EQ(t.t_ca, (std::array<long long, 5>{4, 4, 0, 4, 4}));
    recency_tick(t, 2);
    EXPECT_EQ(t.t_ca[2], 0);
    EXPECT_THROW(recency_tick(t, 5), ContractViolation);
}

TEST(RecencyTick, SuppressionSeenAtLaterSelections) {
    RecencyTrackers t = RecencyTrackers::fresh(3);
    recency_tick(t, 1);  // category 1 selected at step k
    std::vector<double> seen;
    for (int i = 0; i < 4; ++i) {
        seen.push_back(r_value(t.t_ca[1], 15.0, 3));
        recency_tick(t, 0);
    }
    EXPECT_EQ(seen, (std::vector<double>{15.0, 10.0, 5.0, 0.0}));
}

// Learner

TEST(Learner, FreshFracStepLearnsFromDelight) {
    Learner learner(Algorithm::frac, seeded(1));
    const auto rec = learner.step(kDelighted);
    EXPECT_EQ(rec.step_index, 1);
    EXPECT_EQ(rec.state_before, StateId::neutral);
    EXPECT_EQ(rec.state_after, StateId::very_positive);
    EXPECT_EQ(rec.reward, 10.0);
    EXPECT_FALSE(rec.forgot);
    EXPECT_DOUBLE_EQ(learner.q_table().at(StateId::neutral, rec.category_id), 9.0);
    EXPECT_EQ(learner.trackers().t_ca[rec.category_id], 0);
    EXPECT_EQ(learner.current_state(), StateId::very_positive);
    EXPECT_EQ(rec.effective_values.size(), kNumCategories);
}

TEST(Learner, RandomBaselineNeverLearns) {
    Learner learner(Algorithm::random, seeded(2));
    EXPECT_EQ(learner.q_table().columns(), kNumActions);
    for (int i = 0; i < 200; ++i) learner.step(i % 2 ? kDelighted : kMiserable);
    EXPECT_TRUE(learner.q_table().all_zero());
}

TEST(Learner, PenaltyTraceForgetsEveryTenSteps) {
    Learner learner(Algorithm::frac, seeded(3));
    for (int step = 1; step <= 30; ++step) {
        const auto rec = learner.step(kMiserable);
        EXPECT_EQ(rec.reward, -10.0);
        EXPECT_EQ(rec.forgot, step % 10 == 0) << "step " << step;
        if (rec.forgot) {
            EXPECT_TRUE(learner.q_table().all_zero());
        }
    }
}

TEST(Learner, ForgettingKeepsTrackers) {
    Learner learner(Algorithm::frac, seeded(4));
    StepRecord rec;
    for (int step = 1; step <= 10; ++step) rec = learner.step(kMiserable);
    ASSERT_TRUE(rec.forgot);
    EXPECT_EQ(learner.trackers().t_ca[rec.category_id], 0);
    bool some_aged = false;
    for (auto t : learner.trackers().t_ca) some_aged = some_aged || t > 0;
    EXPECT_TRUE(some_aged);
}

TEST(Learner, TraditionalHasNoForgettingOrRecency) {
    Learner learner(Algorithm::traditional, seeded(5));
    for (int step = 1; step <= 25; ++step) EXPECT_FALSE(learner.step(kMiserable).forgot);
    EXPECT_EQ(learner.trackers(), RecencyTrackers::fresh(3));
    EXPECT_FALSE(learner.q_table().all_zero());
}

TEST(Learner, InvalidReadingsLeaveLearnerUntouched) {
    Learner learner(Algorithm::frac, seeded(6));
    learner.step(kDelighted);
    const QTable q = learner.q_table();
    const auto trackers = learner.trackers();
    EXPECT_THROW(learner.step(SensorReadings{-1.0, 30.0, EmotionLabel::happy}), ValidationError);
    EXPECT_THROW(learner.step(SensorReadings{1.0, 0.0, EmotionLabel::happy}), ValidationError);
    EXPECT_FALSE(learner.pending().has_value());

    learner.select();
    EXPECT_THROW(learner.observe(SensorReadings{1.0, -3.0, EmotionLabel::happy}), ValidationError);
    EXPECT_TRUE(learner.pending().has_value());
    EXPECT_EQ(learner.q_table(), q);
    EXPECT_EQ(learner.trackers(), trackers);
    EXPECT_EQ(learner.steps_completed(), 1);
}

TEST(Learner, SelectObserveMustAlternate) {
    Learner learner(Algorithm::frac, seeded(7));
    EXPECT_THROW(learner.observe(kDelighted), ContractViolation);
    learner.select();
    EXPECT_THROW(learner.select(), ContractViolation);
}

TEST(Learner, RejectsInvalidConfig) {
    LearnerConfig bad;
    bad.alpha = 0.0;
    bad.gamma = 1.0;
    bad.selection_probs.uniform = 0.5;
    try {
        Learner learner(Algorithm::frac, bad);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.violations().size(), 3u);
    }
}

TEST(Learner, IdenticalInputsGiveIdenticalTraces) {
    std::mt19937_64 gen(9);
    std::vector<SensorReadings> trace;
    std::uniform_real_distribution<double> talk(0.0, 12.0), dist(5.0, 150.0);
    std::uniform_int_distribution<int> emo(0, 7);
    for (int i = 0; i < 300; ++i) trace.push_back({talk(gen), dist(gen), static_cast<EmotionLabel>(emo(gen))});

    for (auto algo : {Algorithm::frac, Algorithm::traditional, Algorithm::random}) {
        Learner a(algo, seeded(31)), b(algo, seeded(31));
        for (const auto& r : trace) EXPECT_EQ(a.step(r), b.step(r));
        EXPECT_EQ(a.q_table(), b.q_table());
    }
}

TEST(Learner, RewardsStayInDomainAndMatchState) {
    std::mt19937_64 gen(10);
    std::uniform_real_distribution<double> talk(0.0, 12.0), dist(5.0, 150.0);
    std::uniform_int_distribution<int> emo(0, 7);
    Learner learner(Algorithm::frac, seeded(10));
    for (int i = 0; i < 500; ++i) {
        const auto rec = learner.step(SensorReadings{talk(gen), dist(gen), static_cast<EmotionLabel>(emo(gen))});
        EXPECT_TRUE(rec.reward == -10 || rec.reward == -5 || rec.reward == 5 || rec.reward == 10);
        EXPECT_EQ(rec.reward, reward_for_state(rec.state_after));
    }
}

TEST(Learner, StateBeforeInheritsPreviousStateAfter) {
    Learner learner(Algorithm::traditional, seeded(13));
    StateId prev = kInitialState;
    for (int i = 0; i < 50; ++i) {
        const auto rec = learner.step(i % 3 ? kDelighted : kMiserable);
        EXPECT_EQ(rec.state_before, prev);
        prev = rec.state_after;
    }
}

TEST(Learner, MatchesIndependentReplayOfUpdateRule) {
    std::mt19937_64 gen(14);
    std::uniform_real_distribution<double> talk(0.0, 12.0), dist(5.0, 150.0);
    std::uniform_int_distribution<int> emo(0, 7);
    for (auto algo : {Algorithm::frac, Algorithm::traditional}) {
        Learner learner(algo, seeded(15));
        std::vector<oracle::StepView> views;
        std::vector<std::size_t> engine_forgets;
        for (int i = 0; i < 400; ++i) {
            const auto rec = learner.step(SensorReadings{talk(gen), dist(gen), static_cast<EmotionLabel>(emo(gen))});
            if (rec.forgot) engine_forgets.push_back(rec.step_index);
            views.push_back({static_cast<int>(index_of(rec.state_before)),
                             static_cast<int>(algo == Algorithm::frac ? rec.category_id : rec.action_id),
                             static_cast<int>(index_of(rec.state_after))});
        }
        const auto replay = oracle::replay_q(views, learner.q_table().columns(), 0.9, 0.5,
                                             algo == Algorithm::frac ? 10 : 0);
        EXPECT_EQ(replay.forget_steps, engine_forgets);
        const auto& ref = replay.q;
        for (std::size_t s = 0; s < 4; ++s)
            for (std::size_t c = 0; c < ref[s].size(); ++c)
                EXPECT_NEAR(learner.q_table().at(static_cast<StateId>(s), c), ref[s][c], 1e-12);
    }
}

TEST(Learner, ResponderOverloadSeesSelection) {
    Learner learner(Algorithm::frac, seeded(16));
    std::size_t seen_category = 99;
    const auto rec = learner.step([&](const Selection& sel) {
        seen_category = sel.category_id;
        return kDelighted;
    });
    EXPECT_EQ(rec.category_id, seen_category);
}
