#pragma once

#include <string>
#include <vector>

namespace hbral {

// A single rule violation found while checking a model, hierarchy or
// scenario. `where` names the offending field/row/event, `message` says
// what is wrong. Violations are data, not failures: validators collect
// them instead of throwing.
struct Violation {
    std::string where;
    std::string message;

    std::string text() const { return where + ": " + message; }
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }

    void add(std::string where, std::string message) {
        violations.push_back({std::move(where), std::move(message)});
    }

    void merge(const ValidationReport& other) {
        violations.insert(violations.end(), other.violations.begin(),
                          other.violations.end());
    }
};

}  // namespace hbral
