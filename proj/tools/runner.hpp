#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fixture.hpp"
#include "report.hpp"

namespace eqz::cli {

enum class Command { ZeroScheme, GkmCohomology, GkmKtheory, Kostant, Series };

std::string to_string(Command c);
std::optional<Command> command_from_string(const std::string& s);

/// The command does not apply to the fixture kind.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunOptions {
    std::optional<long> degree_bound;  // overrides the fixture's truncation bound
    bool long_running = false;
    std::vector<std::string> only;     // restrict to these checks; others are skipped
};

Report run(Command command, const Fixture& fixture, const RunOptions& options);

/// Commands `all` runs for a fixture kind.
std::vector<Command> default_commands(FixtureKind kind);

/// Resolves a fixture argument: an existing path, or a bare name looked up
/// as <dir>/<name>.json.
std::filesystem::path resolve_fixture(const std::string& arg, const std::filesystem::path& dir);

}  // namespace eqz::cli
