#pragma once

// Seeded simulated sessions and cohorts, Welch comparisons between
// algorithms, and CSV/JSON exports of Q-table heatmaps and nSpeak timelines.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fracq/config.hpp"
#include "fracq/learner.hpp"
#include "fracq/random.hpp"
#include "fracq/session_log.hpp"
#include "fracq/simulator.hpp"
#include "fracq/stats.hpp"

namespace fracq {

inline constexpr long long kDefaultSessionSteps = 60;

// Child-seed streams derived from a session seed.
inline constexpr std::uint64_t kLearnerStream = 1;
inline constexpr std::uint64_t kUserStream = 2;

struct SessionConfig {
    Algorithm algorithm = Algorithm::frac;
    long long steps = kDefaultSessionSteps;
    LearnerConfig learner_config;
    UserProfile user_profile;
    std::uint64_t session_seed = 0;
};

inline void validate(const SessionConfig& cfg) {
    Violations v;
    v.check(cfg.steps >= 1, "steps must be >= 1");
    for (auto& item : config_violations(cfg.learner_config)) v.add("learner_config: " + item);
    for (auto& item : profile_violations(cfg.user_profile)) v.add("user_profile: " + item);
    v.throw_if_any();
}

// Runs one simulated session. Learner and user seeds are derived from
// session_seed (the seeds inside the config and profile are overwritten),
// so identical configs give bit-identical logs.
inline SessionLog run_session(const SessionConfig& cfg, const ActionCatalog& catalog = ActionCatalog::builtin()) {
    validate(cfg);
    LearnerConfig lc = cfg.learner_config;
    lc.seed = derive_seed(cfg.session_seed, kLearnerStream);
    UserProfile profile = cfg.user_profile;
    profile.seed = derive_seed(cfg.session_seed, kUserStream);

    Learner learner(cfg.algorithm, lc, catalog);
    SimulatedUser user(profile);
    SessionLog log = SessionLog::begin(learner);
    log.user_profile = profile;
    log.session_seed = cfg.session_seed;
    log.steps_configured = cfg.steps;
    log.records.reserve(static_cast<std::size_t>(cfg.steps));
    log.q_snapshots.reserve(static_cast<std::size_t>(cfg.steps));

    for (long long i = 0; i < cfg.steps; ++i) {
        const StepRecord rec =
            learner.step([&](const Selection& sel) { return user.respond(sel.category_id, sel.action_id); });
        log.append(rec, learner.q_table());
    }
    return log;
}

struct SessionMetrics {
    double mean_state = 0.0;
    double cumulative_reward = 0.0;
    double total_n_speak = 0.0;
};

inline SessionMetrics session_metrics(const SessionLog& log) {
    SessionMetrics m;
    double state_sum = 0.0;
    long long nspeak = 0;
    for (const auto& r : log.records) {
        state_sum += static_cast<double>(index_of(r.state_after));
        nspeak += r.scores.n_speak;
    }
    if (!log.records.empty()) m.mean_state = state_sum / static_cast<double>(log.records.size());
    m.cumulative_reward = log.cumulative_reward;
    m.total_n_speak = static_cast<double>(nspeak);
    return m;
}

inline constexpr std::array<const char*, 3> kMetricNames{"mean_state", "cumulative_reward", "total_n_speak"};

struct AlgorithmSamples {
    Algorithm algorithm = Algorithm::frac;
    std::vector<double> mean_state;
    std::vector<double> cumulative_reward;
    std::vector<double> total_n_speak;

    const std::vector<double>& metric(std::size_t i) const {
        switch (i) {
            case 0: return mean_state;
            case 1: return cumulative_reward;
            default: return total_n_speak;
        }
    }
};

struct PairwiseComparison {
    Algorithm a = Algorithm::frac;
    Algorithm b = Algorithm::frac;
    std::string metric;
    stats::SampleSummary summary_a;
    stats::SampleSummary summary_b;
    stats::WelchResult welch;
};

struct CohortSummary {
    std::vector<AlgorithmSamples> per_algorithm;
    std::vector<PairwiseComparison> comparisons;
    std::vector<std::uint64_t> session_seeds;
    std::uint64_t base_seed = 0;
    long long steps = kDefaultSessionSteps;
    LearnerConfig learner_config;
    UserProfile user_profile;
};

struct CohortOptions {
    long long steps = kDefaultSessionSteps;
    LearnerConfig learner_config{};
    unsigned threads = 0;  // 0 = hardware concurrency
};

// Every algorithm faces the same session seeds (and therefore the same user
// seeds). Sessions may run on several threads; results are stored by seed
// index so the output does not depend on scheduling.
inline CohortSummary run_cohort(const std::vector<Algorithm>& algorithms, const UserProfile& profile,
                                std::size_t n_seeds, std::uint64_t base_seed, const CohortOptions& options = {},
                                const ActionCatalog& catalog = ActionCatalog::builtin()) {
    Violations v;
    v.check(n_seeds >= 2, "n_seeds must be >= 2 for Welch comparisons");
    v.check(!algorithms.empty(), "at least one algorithm is required");
    v.check(options.steps >= 1, "steps must be >= 1");
    for (auto& item : config_violations(options.learner_config)) v.add("learner_config: " + item);
    for (auto& item : profile_violations(profile)) v.add("user_profile: " + item);
    v.throw_if_any();

    CohortSummary summary;
    summary.base_seed = base_seed;
    summary.steps = options.steps;
    summary.learner_config = options.learner_config;
    summary.user_profile = profile;
    for (std::size_t i = 0; i < n_seeds; ++i) summary.session_seeds.push_back(derive_seed(base_seed, i));

    const std::size_t n_algos = algorithms.size();
    std::vector<SessionMetrics> results(n_algos * n_seeds);
    auto run_one = [&](std::size_t job) {
        const std::size_t a = job / n_seeds;
        const std::size_t s = job % n_seeds;
        SessionConfig cfg{algorithms[a], options.steps, options.learner_config, profile, summary.session_seeds[s]};
        results[job] = session_metrics(run_session(cfg, catalog));
    };

    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, results.size()));
    if (threads <= 1) {
        for (std::size_t job = 0; job < results.size(); ++job) run_one(job);
    } else {
        std::vector<std::exception_ptr> errors(threads);
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < threads; ++w) {
                pool.emplace_back([&, w] {
                    try {
                        for (std::size_t job = w; job < results.size(); job += threads) run_one(job);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
        }
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    for (std::size_t a = 0; a < n_algos; ++a) {
        AlgorithmSamples samples;
        samples.algorithm = algorithms[a];
        for (std::size_t s = 0; s < n_seeds; ++s) {
            const auto& m = results[a * n_seeds + s];
            samples.mean_state.push_back(m.mean_state);
            samples.cumulative_reward.push_back(m.cumulative_reward);
            samples.total_n_speak.push_back(m.total_n_speak);
        }
        summary.per_algorithm.push_back(std::move(samples));
    }
    for (std::size_t i = 0; i < n_algos; ++i)
        for (std::size_t j = i + 1; j < n_algos; ++j)
            for (std::size_t m = 0; m < kMetricNames.size(); ++m) {
                const auto& xa = summary.per_algorithm[i].metric(m);
                const auto& xb = summary.per_algorithm[j].metric(m);
                PairwiseComparison cmp;
                cmp.a = algorithms[i];
                cmp.b = algorithms[j];
                cmp.metric = kMetricNames[m];
                cmp.summary_a = stats::summarize(xa);
                cmp.summary_b = stats::summarize(xb);
                cmp.welch = stats::welch_test(cmp.summary_a, cmp.summary_b);
                summary.comparisons.push_back(std::move(cmp));
            }
    return summary;
}

inline void to_json(nlohmann::json& j, const CohortSummary& c) {
    j = nlohmann::json::object();
    j["base_seed"] = c.base_seed;
    j["session_seeds"] = c.session_seeds;
    j["steps"] = c.steps;
    j["learner_config"] = c.learner_config;
    j["user_profile"] = c.user_profile;
    auto algos = nlohmann::json::object();
    for (const auto& s : c.per_algorithm)
        algos[std::string(algorithm_name(s.algorithm))] = {
            {"mean_state", s.mean_state},
            {"cumulative_reward", s.cumulative_reward},
            {"total_n_speak", s.total_n_speak}};
    j["algorithms"] = std::move(algos);
    auto cmps = nlohmann::json::array();
    for (const auto& cmp : c.comparisons)
        cmps.push_back(nlohmann::json{{"a", std::string(algorithm_name(cmp.a))},
                                      {"b", std::string(algorithm_name(cmp.b))},
                                      {"metric", cmp.metric},
                                      {"summary_a", cmp.summary_a},
                                      {"summary_b", cmp.summary_b},
                                      {"welch", cmp.welch}});
    j["comparisons"] = std::move(cmps);
}

// Exports

// Shortest round-trip decimal form.
inline std::string format_number(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

inline std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

inline void check_written(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline std::filesystem::path snapshots_path_for(const std::filesystem::path& csv_path) {
    auto p = csv_path;
    p.replace_filename(csv_path.stem().string() + "_snapshots.json");
    return p;
}

// Final Q-table as CSV (header "state,<column labels>", one row per state)
// plus every per-step snapshot in <stem>_snapshots.json beside it.
inline void export_heatmap(const SessionLog& log, const std::filesystem::path& path) {
    {
        auto out = open_for_write(path);
        out << "state";
        for (const auto& label : log.columns) out << ',' << csv_field(label);
        out << '\n';
        for (std::size_t s = 0; s < log.final_q.rows(); ++s) {
            out << s;
            for (double x : log.final_q.row(static_cast<StateId>(s))) out << ',' << format_number(x);
            out << '\n';
        }
        check_written(out, path);
    }
    nlohmann::json snaps = nlohmann::json::object();
    snaps["columns"] = log.columns;
    auto series = nlohmann::json::array();
    for (std::size_t i = 0; i < log.q_snapshots.size(); ++i)
        series.push_back({{"step", log.records[i].step_index}, {"q", q_to_json(log.q_snapshots[i])}});
    snaps["snapshots"] = std::move(series);
    const auto snap_path = snapshots_path_for(path);
    auto out = open_for_write(snap_path);
    out << snaps.dump() << '\n';
    check_written(out, snap_path);
}

struct TimelinePoint {
    long long step = 0;
    int n_speak = 0;

    friend bool operator==(const TimelinePoint&, const TimelinePoint&) = default;
};

inline std::vector<TimelinePoint> nspeak_timeline(const SessionLog& log) {
    std::vector<TimelinePoint> out;
    out.reserve(log.records.size());
    for (const auto& r : log.records) out.push_back({r.step_index, r.scores.n_speak});
    return out;
}

inline void write_nspeak_timeline(const SessionLog& log, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << "step,n_speak\n";
    for (const auto& p : nspeak_timeline(log)) out << p.step << ',' << p.n_speak << '\n';
    check_written(out, path);
}

inline void write_json(const nlohmann::json& j, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << j.dump(2) << '\n';
    check_written(out, path);
}

}  // namespace fracq
