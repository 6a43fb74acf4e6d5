#pragma once

// Pass/fail records for identity checks.

#include <string>
#include <utility>
#include <vector>

namespace ck {

struct Check {
    std::string id;        // short identity name, e.g. "jacobi3"
    std::string anchor;    // named result the identity belongs to
    std::string params;    // rendered parameter tuple
    bool pass = false;
    std::string residual;  // rendered residual when the check fails, or a note
};

struct Report {
    std::string suite;
    std::vector<Check> checks;
    double seconds = 0.0;

    void add(std::string id, std::string anchor, std::string params, bool pass, std::string residual = {}) {
        checks.push_back({std::move(id), std::move(anchor), std::move(params), pass, std::move(residual)});
    }
    void append(const Report& other) {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    }
    std::size_t failures() const {
        std::size_t f = 0;
        for (const auto& c : checks) f += !c.pass;
        return f;
    }
    bool ok() const { return failures() == 0; }
};

}  // namespace ck
