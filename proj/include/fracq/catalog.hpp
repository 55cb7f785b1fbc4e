#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "fracq/errors.hpp"

namespace fracq {

inline constexpr std::size_t kNumCategories = 5;
inline constexpr std::size_t kNumActions = 45;
inline constexpr std::array<std::size_t, kNumCategories> kCategorySizes{3, 5, 11, 10, 16};

struct ActionDescriptor {
    std::size_t action_id = 0;
    std::string label;
};

struct CategoryDescriptor {
    std::size_t category_id = 0;
    std::string label;
    std::vector<ActionDescriptor> actions;
};

// Five categories (dancing, greeting, questions, onomatopoeia, jokes) holding
// 3/5/11/10/16 actions. Action ids run 0..44 in category order.
class ActionCatalog {
public:
    // Builds a catalog from category labels and per-category action labels.
    // Throws ValidationError unless the shape matches 3/5/11/10/16.
    ActionCatalog(std::vector<std::string> category_labels,
                  std::vector<std::vector<std::string>> action_labels) {
        Violations v;
        v.check(category_labels.size() == kNumCategories,
                "catalog must have exactly 5 categories, got " + std::to_string(category_labels.size()));
        v.check(action_labels.size() == category_labels.size(),
                "category label count does not match action list count");
        if (v.empty()) {
            for (std::size_t c = 0; c < kNumCategories; ++c) {
                v.check(action_labels[c].size() == kCategorySizes[c],
                        "category " + std::to_string(c) + " must have " + std::to_string(kCategorySizes[c]) +
                            " actions, got " + std::to_string(action_labels[c].size()));
            }
        }
        v.throw_if_any();

        std::size_t next_id = 0;
        for (std::size_t c = 0; c < kNumCategories; ++c) {
            CategoryDescriptor cat{c, std::move(category_labels[c]), {}};
            for (auto& label : action_labels[c]) {
                cat.actions.push_back({next_id, std::move(label)});
                category_of_.push_back(c);
                ++next_id;
            }
            categories_.push_back(std::move(cat));
        }
    }

    const std::vector<CategoryDescriptor>& categories() const noexcept { return categories_; }
    std::size_t num_categories() const noexcept { return categories_.size(); }
    std::size_t num_actions() const noexcept { return category_of_.size(); }

    const CategoryDescriptor& category(std::size_t category_id) const {
        if (category_id >= categories_.size())
            throw ContractViolation("category id out of range: " + std::to_string(category_id));
        return categories_[category_id];
    }

    std::size_t category_of(std::size_t action_id) const {
        if (action_id >= category_of_.size())
            throw ContractViolation("action id out of range: " + std::to_string(action_id));
        return category_of_[action_id];
    }

    const std::string& action_label(std::size_t action_id) const {
        const auto& cat = category(category_of(action_id));
        return cat.actions[action_id - cat.actions.front().action_id].label;
    }

    // Column labels for a Q-table: category labels (5) or action labels (45).
    std::vector<std::string> column_labels(std::size_t width) const {
        std::vector<std::string> out;
        if (width == kNumCategories) {
            for (const auto& cat : categories_) out.push_back(cat.label);
        } else if (width == kNumActions) {
            for (const auto& cat : categories_)
                for (const auto& act : cat.actions) out.push_back(act.label);
        } else {
            throw ContractViolation("no column labels for table width " + std::to_string(width));
        }
        return out;
    }

    static ActionCatalog builtin() {
        return ActionCatalog(
            {"dancing", "greeting", "questions", "onomatopoeia", "jokes"},
            {
                {"wave right hand", "wave left hand", "wave both hands"},
                {"Hello!", "Good morning!", "Nice to meet you!", "How are you today?", "Good to see you again!"},
                {"What do you want to eat?", "What is your favorite color?", "Do you like music?",
                 "Where would you like to travel?", "What did you do today?", "Do you have any pets?",
                 "What is your favorite season?", "Do you like sports?", "What makes you happy?",
                 "What was your favorite subject at school?", "Do you like sweets?"},
                {"Boing boing!", "Pika pika!", "Fuwa fuwa!", "Doki doki!", "Waku waku!", "Kira kira!",
                 "Goro goro!", "Niko niko!", "Pyon pyon!", "Zawa zawa!"},
                {"Why did the robot go on vacation? To recharge!",
                 "I told my battery a joke. It got a charge out of it.",
                 "My servo motors are a little shy. They only move when asked.",
                 "What is a robot's favorite snack? Microchips!",
                 "I tried to catch fog yesterday. I mist.",
                 "Why was the math book sad? Too many problems.",
                 "I would tell you a construction joke, but I am still working on it.",
                 "Why do bees hum? They forgot the words.",
                 "What do you call a sleeping dinosaur? A dino-snore.",
                 "Why did the cookie go to the doctor? It felt crummy.",
                 "I only know 25 letters of the alphabet. I don't know y.",
                 "Why can't a bicycle stand up? It is two tired.",
                 "What did the ocean say to the beach? Nothing, it just waved.",
                 "Why did the scarecrow win an award? Outstanding in its field.",
                 "What do you call cheese that is not yours? Nacho cheese.",
                 "How does a penguin build its house? Igloos it together."},
            });
    }

private:
    std::vector<CategoryDescriptor> categories_;
    std::vector<std::size_t> category_of_;
};

// JSON form: {"categories": [{"label": "...", "actions": ["...", ...]}, ...]}
inline void to_json(nlohmann::json& j, const ActionCatalog& catalog) {
    j = nlohmann::json::object();
    auto& cats = j["categories"] = nlohmann::json::array();
    for (const auto& cat : catalog.categories()) {
        nlohmann::json actions = nlohmann::json::array();
        for (const auto& act : cat.actions) actions.push_back(act.label);
        cats.push_back({{"label", cat.label}, {"actions", std::move(actions)}});
    }
}

inline ActionCatalog catalog_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("categories") || !j["categories"].is_array())
        throw ValidationError("catalog JSON must be an object with a 'categories' array");
    std::vector<std::string> labels;
    std::vector<std::vector<std::string>> actions;
    for (const auto& cat : j["categories"]) {
        if (!cat.is_object() || !cat.contains("label") || !cat.contains("actions") || !cat["actions"].is_array())
            throw ValidationError("each category needs 'label' and an 'actions' array");
        labels.push_back(cat["label"].get<std::string>());
        actions.push_back(cat["actions"].get<std::vector<std::string>>());
    }
    return ActionCatalog(std::move(labels), std::move(actions));
}

inline ActionCatalog load_catalog(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open catalog file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("catalog JSON parse error: ") + e.what());
    }
    return catalog_from_json(j);
}

}  // namespace fracq
