#pragma once

// Synthetic participant. Each category has a base affinity and a current
// interest level; exposure drains interest (satiation), rest restores it
// (recovery). Engagement = affinity * interest (+ noise) is turned into
// sensor readings that span the full range of scores.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "fracq/catalog.hpp"
#include "fracq/errors.hpp"
#include "fracq/random.hpp"
#include "fracq/state_estimation.hpp"

namespace fracq {

struct UserProfile {
    std::array<double, kNumCategories> base_affinity{};
    double satiation_rate = 0.0;
    double recovery_rate = 0.0;
    double repeat_action_penalty = 0.0;
    double noise_std = 0.0;
    std::uint64_t seed = 0;

    friend bool operator==(const UserProfile&, const UserProfile&) = default;
};

inline std::vector<std::string> profile_violations(const UserProfile& p) {
    Violations v;
    auto unit = [](double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; };
    bool affinity_ok = std::all_of(p.base_affinity.begin(), p.base_affinity.end(), unit);
    v.check(affinity_ok, "base_affinity entries must lie in [0, 1]");
    v.check(unit(p.satiation_rate), "satiation_rate must lie in [0, 1]");
    v.check(unit(p.recovery_rate), "recovery_rate must lie in [0, 1]");
    v.check(unit(p.repeat_action_penalty), "repeat_action_penalty must lie in [0, 1]");
    v.check(std::isfinite(p.noise_std) && p.noise_std >= 0.0, "noise_std must be >= 0");
    return v.items();
}

inline void validate(const UserProfile& p) {
    auto items = profile_violations(p);
    if (!items.empty()) throw ValidationError(std::move(items));
}

struct UserState {
    std::array<double, kNumCategories> interest{1.0, 1.0, 1.0, 1.0, 1.0};
    std::optional<std::size_t> last_action_id;
    long long steps_elapsed = 0;

    friend bool operator==(const UserState&, const UserState&) = default;
};

// Deterministic engagement -> readings mapping.
// e = 0 gives (0 s, 120 cm, sad); e = 1 gives (12 s, 15 cm, happy).
inline SensorReadings readings_for_engagement(double e) {
    EmotionLabel emotion;
    if (e < 0.2)
        emotion = EmotionLabel::sad;
    else if (e < 0.35)
        emotion = EmotionLabel::disgust;
    else if (e < 0.5)
        emotion = EmotionLabel::not_detected;
    else if (e < 0.7)
        emotion = EmotionLabel::neutral;
    else if (e < 0.85)
        emotion = EmotionLabel::surprise;
    else
        emotion = EmotionLabel::happy;
    return {12.0 * e, 120.0 - 105.0 * e, emotion};
}

class SimulatedUser {
public:
    explicit SimulatedUser(const UserProfile& profile) : profile_((validate(profile), profile)), rng_(profile.seed) {}

    // Engagement the user would show for a category right now, before noise.
    double expected_engagement(std::size_t category_id) const {
        check_category(category_id);
        return std::clamp(profile_.base_affinity[category_id] * state_.interest[category_id], 0.0, 1.0);
    }

    SensorReadings respond(std::size_t category_id, std::size_t action_id) {
        check_category(category_id);
        double e = profile_.base_affinity[category_id] * state_.interest[category_id];
        if (profile_.noise_std > 0.0) e += profile_.noise_std * standard_normal(rng_);
        e = std::clamp(e, 0.0, 1.0);
        const SensorReadings out = readings_for_engagement(e);

        for (std::size_t j = 0; j < kNumCategories; ++j) {
            if (j == category_id) {
                double drop = profile_.satiation_rate;
                if (state_.last_action_id == action_id) drop += profile_.repeat_action_penalty;
                state_.interest[j] -= drop;
            } else {
                state_.interest[j] += profile_.recovery_rate;
            }
            state_.interest[j] = std::clamp(state_.interest[j], 0.0, 1.0);
        }
        state_.last_action_id = action_id;
        ++state_.steps_elapsed;
        return out;
    }

    const UserProfile& profile() const noexcept { return profile_; }
    const UserState& state() const noexcept { return state_; }

private:
    static void check_category(std::size_t c) {
        if (c >= kNumCategories) throw ContractViolation("category id out of range: " + std::to_string(c));
    }

    UserProfile profile_;
    UserState state_;
    Rng rng_;
};

inline constexpr std::array<std::string_view, 4> kPresetNames{"static-enthusiast", "bored-fast", "bored-slow",
                                                              "indifferent"};

// Preset parameter sets; mirrored by the files in profiles/.
inline UserProfile make_profile(std::string_view preset) {
    UserProfile p;
    if (preset == "static-enthusiast") {
        p.base_affinity = {0.0, 0.0, 1.0, 0.0, 0.0};
    } else if (preset == "bored-fast") {
        p.base_affinity = {0.6, 0.7, 1.0, 0.8, 0.9};
        p.satiation_rate = 0.25;
        p.recovery_rate = 0.05;
        p.repeat_action_penalty = 0.1;
        p.noise_std = 0.05;
    } else if (preset == "bored-slow") {
        p.base_affinity = {0.6, 0.7, 1.0, 0.8, 0.9};
        p.satiation_rate = 0.05;
        p.recovery_rate = 0.02;
        p.repeat_action_penalty = 0.02;
        p.noise_std = 0.05;
    } else if (preset == "indifferent") {
        p.base_affinity = {0.5, 0.5, 0.5, 0.5, 0.5};
        p.noise_std = 0.1;
    } else {
        throw ValidationError("unknown profile preset '" + std::string(preset) +
                              "' (valid: static-enthusiast, bored-fast, bored-slow, indifferent)");
    }
    return p;
}

inline void to_json(nlohmann::json& j, const UserProfile& p) {
    j = {{"base_affinity", p.base_affinity},
         {"satiation_rate", p.satiation_rate},
         {"recovery_rate", p.recovery_rate},
         {"repeat_action_penalty", p.repeat_action_penalty},
         {"noise_std", p.noise_std},
         {"seed", p.seed}};
}

// Missing fields keep their defaults; unknown fields are rejected.
inline UserProfile profile_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("profile JSON must be an object");
    UserProfile p;
    Violations v;
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "base_affinity") {
                auto arr = value.get<std::vector<double>>();
                if (arr.size() != kNumCategories) {
                    v.add("base_affinity must have 5 entries");
                    continue;
                }
                std::copy(arr.begin(), arr.end(), p.base_affinity.begin());
            } else if (key == "satiation_rate") {
                p.satiation_rate = value.get<double>();
            } else if (key == "recovery_rate") {
                p.recovery_rate = value.get<double>();
            } else if (key == "repeat_action_penalty") {
                p.repeat_action_penalty = value.get<double>();
            } else if (key == "noise_std") {
                p.noise_std = value.get<double>();
            } else if (key == "seed") {
                p.seed = value.get<std::uint64_t>();
            } else if (key == "name" || key == "description") {
                // informational
            } else {
                v.add("unknown profile field '" + key + "'");
            }
        } catch (const nlohmann::json::exception&) {
            v.add("profile field '" + key + "' has the wrong type");
        }
    }
    v.throw_if_any();
    validate(p);
    return p;
}

// A preset name or a path to a JSON profile file.
inline UserProfile resolve_profile(const std::string& preset_or_path) {
    if (std::find(kPresetNames.begin(), kPresetNames.end(), preset_or_path) != kPresetNames.end())
        return make_profile(preset_or_path);
    const std::filesystem::path path(preset_or_path);
    if (!std::filesystem::exists(path)) return make_profile(preset_or_path);  // reports valid presets
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open profile file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("profile JSON parse error: ") + e.what());
    }
    return profile_from_json(j);
}

}  // namespace fracq
