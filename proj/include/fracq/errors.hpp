#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fracq {

// Rejected input: bad readings, bad config fields, unknown names.
// Carries every violation found, not just the first.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(std::vector<std::string> violations)
        : std::invalid_argument(join(violations)), violations_(std::move(violations)) {}

    explicit ValidationError(const std::string& violation)
        : ValidationError(std::vector<std::string>{violation}) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& items) {
        std::string out;
        for (const auto& item : items) {
            if (!out.empty()) out += "; ";
            out += item;
        }
        return out;
    }

    std::vector<std::string> violations_;
};

// A caller broke an operation precondition (index out of range, wrong table shape).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Collects violations, then throws them all at once.
class Violations {
public:
    void check(bool ok, std::string message) {
        if (!ok) items_.push_back(std::move(message));
    }
    void add(std::string message) { items_.push_back(std::move(message)); }
    bool empty() const noexcept { return items_.empty(); }
    const std::vector<std::string>& items() const noexcept { return items_; }

    void throw_if_any() const {
        if (!items_.empty()) throw ValidationError(items_);
    }

private:
    std::vector<std::string> items_;
};

}  // namespace fracq
