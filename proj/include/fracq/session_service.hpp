#pragma once

// Human-in-the-loop sessions. Each session is a learner plus its log, driven
// by alternating begin (robot picks an action) and respond (human reaction)
// calls. Transport-agnostic: every call returns an HTTP-style status and a
// JSON body; http_routes.hpp mounts these on a server.

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>

#include "json.hpp"

#include "fracq/catalog.hpp"
#include "fracq/config.hpp"
#include "fracq/errors.hpp"
#include "fracq/learner.hpp"
#include "fracq/session_log.hpp"

namespace fracq {

enum class StepPhase : std::uint8_t { awaiting_begin, awaiting_response };

constexpr std::string_view phase_name(StepPhase p) noexcept {
    return p == StepPhase::awaiting_begin ? "awaiting_begin" : "awaiting_response";
}

struct ApiResponse {
    int status = 200;
    nlohmann::json body;
};

namespace http_status {
inline constexpr int ok = 200;
inline constexpr int created = 201;
inline constexpr int bad_request = 400;
inline constexpr int not_found = 404;
inline constexpr int conflict = 409;
inline constexpr int unprocessable = 422;
}  // namespace http_status

class SessionService {
public:
    using Clock = std::chrono::steady_clock;
    using ClockFn = std::function<Clock::time_point()>;

    struct Options {
        std::chrono::seconds idle_timeout{30 * 60};
        ClockFn clock;  // defaults to steady_clock::now
    };

    SessionService() : SessionService(Options{}) {}

    explicit SessionService(Options options, ActionCatalog catalog = ActionCatalog::builtin())
        : options_(std::move(options)), catalog_(std::move(catalog)), id_rng_(std::random_device{}()) {
        if (!options_.clock) options_.clock = [] { return Clock::now(); };
    }

    // POST /sessions  {algorithm, seed?, config?}
    ApiResponse create_session(const nlohmann::json& request) {
        return guarded([&]() -> ApiResponse {
            expire_idle();
            if (!request.is_object()) return error(http_status::unprocessable, "request body must be a JSON object");
            Violations v;
            std::optional<Algorithm> algorithm;
            if (!request.contains("algorithm") || !request["algorithm"].is_string()) {
                v.add("field 'algorithm' is required (frac, traditional|q, random)");
            } else {
                try {
                    algorithm = parse_algorithm(request["algorithm"].get<std::string>());
                } catch (const ValidationError& e) {
                    v.add(e.what());
                }
            }
            LearnerConfig cfg;
            try {
                if (request.contains("config")) cfg = apply_config_overrides(cfg, request["config"]);
            } catch (const ValidationError& e) {
                for (const auto& item : e.violations()) v.add(item);
            }
            if (request.contains("seed")) {
                const auto& seed = request["seed"];
                if (seed.is_number_unsigned() || (seed.is_number_integer() && seed.get<std::int64_t>() >= 0))
                    cfg.seed = seed.get<std::uint64_t>();
                else
                    v.add("field 'seed' must be a non-negative integer");
            }
            for (auto& item : config_violations(cfg)) v.add(item);
            v.throw_if_any();

            auto session = std::make_shared<Session>(*algorithm, cfg, catalog_);
            session->last_access = now();
            std::string id;
            {
                std::lock_guard lock(map_mutex_);
                do {
                    id = new_id();
                } while (sessions_.contains(id));
                sessions_.emplace(id, session);
            }
            std::lock_guard lock(session->mutex);
            nlohmann::json body = session_view(*session);
            body["session_id"] = id;
            return {http_status::created, std::move(body)};
        });
    }

    // POST /sessions/{id}/begin
    ApiResponse begin_step(const std::string& id) {
        return with_session(id, [&](Session& s) -> ApiResponse {
            if (s.phase != StepPhase::awaiting_begin)
                return error(http_status::conflict, "step already begun; submit a response first");
            const Selection& sel = s.learner.select();
            s.phase = StepPhase::awaiting_response;
            const auto& cat = s.learner.catalog();
            return {http_status::ok,
                    {{"step_index", s.learner.steps_completed() + 1},
                     {"category_id", sel.category_id},
                     {"category_label", cat.category(sel.category_id).label},
                     {"action_id", sel.action_id},
                     {"action_label", cat.action_label(sel.action_id)},
                     {"state_before", index_of(s.learner.current_state())},
                     {"effective_values", sel.effective_values}}};
        });
    }

    // POST /sessions/{id}/respond  {talk_length_s, distance_cm, emotion}
    ApiResponse submit_response(const std::string& id, const nlohmann::json& body) {
        return with_session(id, [&](Session& s) -> ApiResponse {
            if (s.phase != StepPhase::awaiting_response)
                return error(http_status::conflict, "no action pending; call begin first");
            const SensorReadings readings = readings_from_json(body);
            const StepRecord rec = s.learner.observe(readings);
            s.log.append(rec, s.learner.q_table());
            s.phase = StepPhase::awaiting_begin;
            return {http_status::ok,
                    {{"step_index", rec.step_index},
                     {"category_id", rec.category_id},
                     {"action_id", rec.action_id},
                     {"state_after", index_of(rec.state_after)},
                     {"reward", rec.reward},
                     {"forgot", rec.forgot},
                     {"q_table", q_to_json(s.learner.q_table())},
                     {"trackers", s.learner.trackers().t_ca},
                     {"n_speak", rec.scores.n_speak},
                     {"scores", rec.scores}}};
        });
    }

    // GET /sessions/{id}/log
    ApiResponse get_log(const std::string& id) {
        return with_session(id, [&](Session& s) -> ApiResponse { return {http_status::ok, s.log}; });
    }

    // POST /sessions/{id}/end  {interest?, boredom_hardness?}
    ApiResponse end_session(const std::string& id, const nlohmann::json& body) {
        return with_session(id, [&](Session& s) -> ApiResponse {
            if (!body.is_null() && !(body.is_object() && body.empty())) {
                if (!body.is_object()) return error(http_status::unprocessable, "body must be a JSON object");
                Violations v;
                Questionnaire q;
                auto item = [&](const char* key, int& out) {
                    if (!body.contains(key) || !body[key].is_number_integer())
                        v.add(std::string("field '") + key + "' must be an integer in -3..3");
                    else if (body[key].get<long long>() < -3 || body[key].get<long long>() > 3)
                        v.add(std::string("field '") + key + "' must be in -3..3");
                    else
                        out = body[key].get<int>();
                };
                item("interest", q.interest);
                item("boredom_hardness", q.boredom_hardness);
                v.throw_if_any();
                s.log.questionnaire = q;
            }
            s.ended = true;
            {
                std::lock_guard lock(map_mutex_);
                sessions_.erase(id);
            }
            return {http_status::ok, s.log};
        });
    }

    // Frees sessions idle longer than the timeout. Called on every request.
    std::size_t expire_idle() {
        const auto cutoff = now() - options_.idle_timeout;
        std::lock_guard lock(map_mutex_);
        std::size_t removed = 0;
        for (auto it = sessions_.begin(); it != sessions_.end();) {
            // A session whose lock is held is in use, hence not idle.
            bool idle = false;
            if (std::unique_lock session_lock(it->second->mutex, std::try_to_lock); session_lock.owns_lock()) {
                idle = it->second->last_access < cutoff;
                if (idle) it->second->ended = true;
            }
            if (idle) {
                it = sessions_.erase(it);
                ++removed;
            } else {
                ++it;
            }
        }
        return removed;
    }

    std::size_t live_sessions() const {
        std::lock_guard lock(map_mutex_);
        return sessions_.size();
    }

    const ActionCatalog& catalog() const noexcept { return catalog_; }

private:
    struct Session {
        Session(Algorithm algorithm, const LearnerConfig& cfg, const ActionCatalog& catalog)
            : learner(algorithm, cfg, catalog), log(SessionLog::begin(learner)), created(Clock::now()) {}

        std::mutex mutex;
        Learner learner;
        SessionLog log;
        StepPhase phase = StepPhase::awaiting_begin;
        Clock::time_point created;
        Clock::time_point last_access;
        bool ended = false;
    };

    Clock::time_point now() const { return options_.clock(); }

    static ApiResponse error(int status, const std::string& message,
                             const std::vector<std::string>& violations = {}) {
        nlohmann::json body{{"error", message}};
        if (!violations.empty()) body["violations"] = violations;
        return {status, std::move(body)};
    }

    template <typename F>
    static ApiResponse guarded(F&& f) {
        try {
            return f();
        } catch (const ValidationError& e) {
            return error(http_status::unprocessable, "validation failed", e.violations());
        } catch (const ContractViolation& e) {
            return error(http_status::conflict, e.what());
        }
    }

    template <typename F>
    ApiResponse with_session(const std::string& id, F&& f) {
        return guarded([&]() -> ApiResponse {
            expire_idle();
            std::shared_ptr<Session> session;
            {
                std::lock_guard lock(map_mutex_);
                auto it = sessions_.find(id);
                if (it != sessions_.end()) session = it->second;
            }
            if (!session) return error(http_status::not_found, "unknown session '" + id + "'");
            std::lock_guard lock(session->mutex);
            if (session->ended) return error(http_status::not_found, "unknown session '" + id + "'");
            session->last_access = now();
            return f(*session);
        });
    }

    nlohmann::json session_view(const Session& s) const {
        return {{"algorithm", std::string(algorithm_name(s.learner.algorithm()))},
                {"phase", std::string(phase_name(s.phase))},
                {"state", index_of(s.learner.current_state())},
                {"step_index", s.learner.steps_completed()},
                {"q_table", q_to_json(s.learner.q_table())},
                {"trackers", s.learner.trackers().t_ca},
                {"columns", s.log.columns},
                {"config", s.learner.config()}};
    }

    // Caller holds map_mutex_.
    std::string new_id() {
        static constexpr char kHex[] = "0123456789abcdef";
        std::string id;
        for (int word = 0; word < 2; ++word) {
            std::uint64_t bits = id_rng_();
            for (int i = 0; i < 16; ++i, bits >>= 4) id += kHex[bits & 0xf];
        }
        return id;
    }

    Options options_;
    ActionCatalog catalog_;
    mutable std::mutex map_mutex_;
    std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
    std::mt19937_64 id_rng_;
};

}  // namespace fracq
