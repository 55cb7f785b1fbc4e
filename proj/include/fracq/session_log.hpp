#pragma once

// Per-step trace of a session plus its JSON form. The same log type is
// produced by the experiment harness and the interactive session service.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fracq/config.hpp"
#include "fracq/learner.hpp"
#include "fracq/simulator.hpp"

namespace fracq {

// 7-point questionnaire answers coded -3..+3 (+3 = very interested /
// very hard to get bored).
struct Questionnaire {
    int interest = 0;
    int boredom_hardness = 0;

    friend bool operator==(const Questionnaire&, const Questionnaire&) = default;
};

inline void validate(const Questionnaire& q) {
    Violations v;
    v.check(q.interest >= -3 && q.interest <= 3, "interest must be in -3..3");
    v.check(q.boredom_hardness >= -3 && q.boredom_hardness <= 3, "boredom_hardness must be in -3..3");
    v.throw_if_any();
}

struct SessionLog {
    Algorithm algorithm = Algorithm::frac;
    LearnerConfig learner_config;
    std::optional<UserProfile> user_profile;    // absent for human-driven sessions
    std::optional<std::uint64_t> session_seed;  // harness sessions only
    std::optional<long long> steps_configured;  // harness sessions only
    std::vector<std::string> columns;
    std::vector<StepRecord> records;
    std::vector<QTable> q_snapshots;  // table after each step
    QTable final_q{kNumCategories};
    std::vector<int> n_speak;
    double cumulative_reward = 0.0;
    std::optional<Questionnaire> questionnaire;

    static SessionLog begin(const Learner& learner) {
        SessionLog log;
        log.algorithm = learner.algorithm();
        log.learner_config = learner.config();
        log.columns = learner.catalog().column_labels(learner.q_table().columns());
        log.final_q = learner.q_table();
        return log;
    }

    void append(const StepRecord& record, const QTable& q_after) {
        records.push_back(record);
        q_snapshots.push_back(q_after);
        final_q = q_after;
        n_speak.push_back(record.scores.n_speak);
        cumulative_reward += record.reward;
    }
};

// JSON

inline nlohmann::json q_to_json(const QTable& q) {
    auto rows = nlohmann::json::array();
    for (std::size_t s = 0; s < q.rows(); ++s) {
        const auto r = q.row(static_cast<StateId>(s));
        rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    return rows;
}

inline void to_json(nlohmann::json& j, const LearnerConfig& c) {
    j = {{"alpha", c.alpha},
         {"gamma", c.gamma},
         {"t_f", c.t_f},
         {"c_m", c.c_m},
         {"t_s", c.t_s},
         {"selection_probs",
          {c.selection_probs.rank1, c.selection_probs.rank2, c.selection_probs.rank3, c.selection_probs.uniform}},
         {"seed", c.seed}};
}

// Applies any of alpha, gamma, t_f, c_m, t_s, selection_probs, seed found in
// `j` on top of `base`. Type errors and unknown keys are reported together;
// range checks are left to validate().
inline LearnerConfig apply_config_overrides(LearnerConfig base, const nlohmann::json& j) {
    if (j.is_null()) return base;
    if (!j.is_object()) throw ValidationError("config overrides must be a JSON object");
    Violations v;
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "alpha") {
                base.alpha = value.get<double>();
            } else if (key == "gamma") {
                base.gamma = value.get<double>();
            } else if (key == "t_f") {
                if (!value.is_number_integer()) {
                    v.add("config field '" + key + "' must be an integer");
                    continue;
                }
                base.t_f = value.get<int>();
            } else if (key == "c_m") {
                base.c_m = value.get<double>();
            } else if (key == "t_s") {
                if (!value.is_number_integer()) {
                    v.add("config field '" + key + "' must be an integer");
                    continue;
                }
                base.t_s = value.get<int>();
            } else if (key == "seed") {
                if (!value.is_number_integer() || (!value.is_number_unsigned() && value.get<std::int64_t>() < 0)) {
                    v.add("config field 'seed' must be a non-negative integer");
                    continue;
                }
                base.seed = value.get<std::uint64_t>();
            } else if (key == "selection_probs") {
                auto p = value.get<std::vector<double>>();
                if (p.size() != 4) {
                    v.add("selection_probs must have 4 entries");
                    continue;
                }
                base.selection_probs = {p[0], p[1], p[2], p[3]};
            } else {
                v.add("unknown config field '" + key + "'");
            }
        } catch (const nlohmann::json::exception&) {
            v.add("config field '" + key + "' has the wrong type");
        }
    }
    v.throw_if_any();
    return base;
}

inline void to_json(nlohmann::json& j, const SensorReadings& r) {
    j = {{"talk_length_s", r.talk_length_s},
         {"distance_cm", r.distance_cm},
         {"emotion", std::string(emotion_name(r.emotion))}};
}

// Parses a response body; every problem is reported in one ValidationError.
inline SensorReadings readings_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("readings must be a JSON object");
    Violations v;
    SensorReadings r;
    auto number = [&](const char* key, double& out) {
        if (!j.contains(key))
            v.add(std::string("missing field '") + key + "'");
        else if (!j[key].is_number())
            v.add(std::string("field '") + key + "' must be a number");
        else
            out = j[key].get<double>();
    };
    number("talk_length_s", r.talk_length_s);
    number("distance_cm", r.distance_cm);
    if (!j.contains("emotion") || !j["emotion"].is_string()) {
        v.add("field 'emotion' must be one of the 8 emotion labels");
    } else {
        try {
            r.emotion = parse_emotion(j["emotion"].get<std::string>());
        } catch (const ValidationError& e) {
            v.add(e.what());
        }
    }
    v.throw_if_any();
    validate(r);
    return r;
}

inline void to_json(nlohmann::json& j, const ScoreBreakdown& s) {
    j = {{"n_speak", s.n_speak},
         {"distance_score", s.distance_score},
         {"emotion_score", s.emotion_score},
         {"total", s.total}};
}

inline void to_json(nlohmann::json& j, const StepRecord& r) {
    j = {{"step_index", r.step_index},
         {"state_before", index_of(r.state_before)},
         {"category_id", r.category_id},
         {"action_id", r.action_id},
         {"state_after", index_of(r.state_after)},
         {"reward", r.reward},
         {"forgot", r.forgot},
         {"effective_values", r.effective_values},
         {"readings", r.readings},
         {"scores", r.scores}};
}

inline void to_json(nlohmann::json& j, const Questionnaire& q) {
    j = {{"interest", q.interest}, {"boredom_hardness", q.boredom_hardness}};
}

inline void to_json(nlohmann::json& j, const SessionLog& log) {
    j = nlohmann::json::object();
    j["algorithm"] = std::string(algorithm_name(log.algorithm));
    j["learner_config"] = log.learner_config;
    if (log.user_profile) j["user_profile"] = *log.user_profile;
    if (log.session_seed) j["session_seed"] = *log.session_seed;
    if (log.steps_configured) j["steps"] = *log.steps_configured;
    j["columns"] = log.columns;
    j["records"] = log.records;
    auto snaps = nlohmann::json::array();
    for (const auto& q : log.q_snapshots) snaps.push_back(q_to_json(q));
    j["q_snapshots"] = std::move(snaps);
    j["final_q_table"] = q_to_json(log.final_q);
    j["n_speak"] = log.n_speak;
    j["cumulative_reward"] = log.cumulative_reward;
    if (log.questionnaire) j["questionnaire"] = *log.questionnaire;
}

// Structural check shared by harness and service logs. Returns every problem found.
inline std::vector<std::string> log_schema_violations(const nlohmann::json& j) {
    Violations v;
    if (!j.is_object()) {
        v.add("log must be a JSON object");
        return v.items();
    }
    for (const char* key : {"algorithm", "learner_config", "columns", "records", "q_snapshots", "final_q_table",
                            "n_speak", "cumulative_reward"})
        v.check(j.contains(key), std::string("missing field '") + key + "'");
    if (!v.empty()) return v.items();

    std::size_t width = 0;
    try {
        const Algorithm algo = parse_algorithm(j["algorithm"].get<std::string>());
        width = table_width(algo);
    } catch (const std::exception&) {
        v.add("algorithm must be frac, traditional or random");
        return v.items();
    }
    v.check(j["columns"].is_array() && j["columns"].size() == width, "columns must list one label per Q column");

    auto check_table = [&](const nlohmann::json& t, const std::string& what) {
        bool ok = t.is_array() && t.size() == kNumStates;
        if (ok)
            for (const auto& row : t) {
                ok = ok && row.is_array() && row.size() == width;
                if (ok)
                    for (const auto& x : row) ok = ok && x.is_number();
            }
        v.check(ok, what + " must be a 4x" + std::to_string(width) + " numeric table");
    };
    check_table(j["final_q_table"], "final_q_table");

    const auto& records = j["records"];
    const auto& snaps = j["q_snapshots"];
    const auto& nspeak = j["n_speak"];
    if (!records.is_array() || !snaps.is_array() || !nspeak.is_array()) {
        v.add("records, q_snapshots and n_speak must be arrays");
        return v.items();
    }
    v.check(snaps.size() == records.size(), "q_snapshots must have one entry per record");
    v.check(nspeak.size() == records.size(), "n_speak must have one entry per record");
    if (j.contains("steps")) v.check(j["steps"] == records.size(), "record count must equal configured steps");
    for (std::size_t i = 0; i < snaps.size(); ++i) check_table(snaps[i], "q_snapshots[" + std::to_string(i) + "]");

    double reward_sum = 0.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        const std::string at = "records[" + std::to_string(i) + "]";
        bool ok = r.is_object();
        for (const char* key : {"step_index", "state_before", "category_id", "action_id", "state_after", "reward",
                                "forgot", "effective_values", "readings", "scores"})
            ok = ok && r.contains(key);
        if (!ok) {
            v.add(at + " is missing fields");
            continue;
        }
        v.check(r["step_index"] == i + 1, at + ".step_index must be " + std::to_string(i + 1));
        for (const char* key : {"state_before", "state_after"})
            v.check(r[key].is_number_integer() && r[key].get<int>() >= 0 && r[key].get<int>() <= 3,
                    at + "." + key + " must be in 0..3");
        v.check(r["category_id"].is_number_integer() && r["category_id"].get<int>() >= 0 &&
                    r["category_id"].get<int>() < static_cast<int>(kNumCategories),
                at + ".category_id out of range");
        v.check(r["action_id"].is_number_integer() && r["action_id"].get<int>() >= 0 &&
                    r["action_id"].get<int>() < static_cast<int>(kNumActions),
                at + ".action_id out of range");
        const double reward = r["reward"].is_number() ? r["reward"].get<double>() : 0.0;
        v.check(reward == -10.0 || reward == -5.0 || reward == 5.0 || reward == 10.0,
                at + ".reward must be one of -10, -5, 5, 10");
        reward_sum += reward;
        v.check(r["forgot"].is_boolean(), at + ".forgot must be boolean");
        if (r["forgot"] == true && i < snaps.size()) {
            bool zero = true;
            for (const auto& row : snaps[i])
                for (const auto& x : row) zero = zero && x.is_number() && x.get<double>() == 0.0;
            v.check(zero, at + " forgot but its Q snapshot is not all zeros");
        }
        v.check(r["scores"].is_object() && r["scores"].contains("n_speak") && r["scores"]["n_speak"] == nspeak[i],
                at + ".scores.n_speak must match n_speak[" + std::to_string(i) + "]");
    }
    v.check(j["cumulative_reward"].is_number() && j["cumulative_reward"].get<double>() == reward_sum,
            "cumulative_reward must equal the sum of record rewards");
    if (j.contains("questionnaire")) {
        const auto& q = j["questionnaire"];
        bool ok = q.is_object() && q.contains("interest") && q.contains("boredom_hardness") &&
                  q["interest"].is_number_integer() && q["boredom_hardness"].is_number_integer();
        if (ok) ok = std::abs(q["interest"].get<int>()) <= 3 && std::abs(q["boredom_hardness"].get<int>()) <= 3;
        v.check(ok, "questionnaire answers must be integers in -3..3");
    }
    return v.items();
}

}  // namespace fracq
