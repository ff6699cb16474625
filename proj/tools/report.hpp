#pragma once

#include <string>
#include <vector>

#include "fixture.hpp"

namespace eqz::cli {

enum class Status { Pass, Fail, Skipped, Refused };

std::string to_string(Status s);

struct Check {
    std::string name;
    Status status = Status::Pass;
    std::string detail;
    Json witness;  // null when there is nothing to show
};

struct Report {
    std::string fixture;
    std::string kind;
    std::string command;
    bool expect_failure = false;
    std::vector<Check> checks;
    Json tables = Json::object();

    /// Fail if any check failed, otherwise pass.
    Status status() const;
    /// Whether the outcome matches the fixture's declared expectation.
    bool as_expected() const { return (status() == Status::Fail) == expect_failure; }
    Json to_json() const;
};

std::string render_table(const Report& r);

}  // namespace eqz::cli
