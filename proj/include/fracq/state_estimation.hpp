#pragma once

// Sensor-score fusion: talk length, distance and facial emotion each map to a
// small integer score; their sum picks one of four user states, and each
// state carries a fixed reward.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "fracq/errors.hpp"

namespace fracq {

enum class StateId : std::uint8_t { negative = 0, neutral = 1, positive = 2, very_positive = 3 };

inline constexpr std::size_t kNumStates = 4;
inline constexpr StateId kInitialState = StateId::neutral;

constexpr std::size_t index_of(StateId s) noexcept { return static_cast<std::size_t>(s); }

inline StateId state_from_index(long long value) {
    if (value < 0 || value > 3) throw ValidationError("state must be in 0..3, got " + std::to_string(value));
    return static_cast<StateId>(value);
}

constexpr std::string_view state_name(StateId s) noexcept {
    switch (s) {
        case StateId::negative: return "negative";
        case StateId::neutral: return "neutral";
        case StateId::positive: return "positive";
        case StateId::very_positive: return "very_positive";
    }
    return "?";
}

// Ordered from most negative to most positive affect.
enum class EmotionLabel : std::uint8_t { angry, sad, fear, disgust, not_detected, neutral, surprise, happy };

inline constexpr std::array<std::string_view, 8> kEmotionNames{
    "angry", "sad", "fear", "disgust", "not_detected", "neutral", "surprise", "happy"};

constexpr std::string_view emotion_name(EmotionLabel e) noexcept {
    return kEmotionNames[static_cast<std::size_t>(e)];
}

inline EmotionLabel parse_emotion(std::string_view name) {
    for (std::size_t i = 0; i < kEmotionNames.size(); ++i)
        if (kEmotionNames[i] == name) return static_cast<EmotionLabel>(i);
    throw ValidationError("unknown emotion label '" + std::string(name) +
                          "' (expected angry, sad, fear, disgust, not_detected, neutral, surprise, happy)");
}

struct SensorReadings {
    double talk_length_s = 0.0;
    double distance_cm = 100.0;
    EmotionLabel emotion = EmotionLabel::not_detected;

    friend bool operator==(const SensorReadings&, const SensorReadings&) = default;
};

inline void validate(const SensorReadings& r) {
    Violations v;
    v.check(std::isfinite(r.talk_length_s) && r.talk_length_s >= 0.0, "talk_length_s must be a finite value >= 0");
    v.check(std::isfinite(r.distance_cm) && r.distance_cm > 0.0, "distance_cm must be a finite value > 0");
    v.check(static_cast<std::size_t>(r.emotion) < kEmotionNames.size(), "emotion label out of range");
    v.throw_if_any();
}

struct ScoreBreakdown {
    int n_speak = 0;
    int distance_score = 0;
    int emotion_score = 0;
    int total = 0;

    friend bool operator==(const ScoreBreakdown&, const ScoreBreakdown&) = default;
};

// nSpeak: [0, 6) -> 0, [6, 9) -> 1, [9, inf) -> 2.
inline int talk_score(double talk_length_s) {
    if (!(talk_length_s >= 0.0)) throw ValidationError("talk_length_s must be >= 0");
    if (talk_length_s < 6.0) return 0;
    if (talk_length_s < 9.0) return 1;
    return 2;
}

// d > 100 -> -2; 40 <= d <= 100 -> 0; 20 < d < 40 -> +1; d <= 20 -> +2.
// 40 falls in the zero band, 20 in the +2 band.
inline int distance_score(double distance_cm) {
    if (!(distance_cm > 0.0)) throw ValidationError("distance_cm must be > 0");
    if (distance_cm > 100.0) return -2;
    if (distance_cm >= 40.0) return 0;
    if (distance_cm > 20.0) return 1;
    return 2;
}

inline int emotion_score(EmotionLabel emotion) {
    static constexpr std::array<int, 8> kScores{-2, -2, -2, -1, 0, 1, 1, 2};
    const auto i = static_cast<std::size_t>(emotion);
    if (i >= kScores.size()) throw ValidationError("emotion label out of range");
    return kScores[i];
}

// Integer total s: s < 0 -> 0, s == 0 -> 1, s in {1, 2} -> 2, s >= 3 -> 3.
constexpr StateId state_for_total(int total) noexcept {
    if (total < 0) return StateId::negative;
    if (total < 1) return StateId::neutral;
    if (total < 3) return StateId::positive;
    return StateId::very_positive;
}

struct FusedState {
    ScoreBreakdown scores;
    StateId state;
};

inline FusedState fuse_state(const SensorReadings& r) {
    validate(r);
    ScoreBreakdown s;
    s.n_speak = talk_score(r.talk_length_s);
    s.distance_score = distance_score(r.distance_cm);
    s.emotion_score = emotion_score(r.emotion);
    s.total = s.n_speak + s.distance_score + s.emotion_score;
    return {s, state_for_total(s.total)};
}

constexpr double reward_for_state(StateId s) noexcept {
    switch (s) {
        case StateId::negative: return -10.0;
        case StateId::neutral: return -5.0;
        case StateId::positive: return 5.0;
        case StateId::very_positive: return 10.0;
    }
    return 0.0;
}

}  // namespace fracq
