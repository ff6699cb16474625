#include <iostream>

#include "CLI11.hpp"

#include "runner.hpp"

namespace {

using namespace eqz::cli;

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2 };

struct Args {
    std::string fixture;
    std::string dir = default_fixture_dir().string();
    std::optional<long> degree_bound;
    bool long_running = false;
    bool table = false;
    std::vector<std::string> checks;
    std::string kind;
};

void print(const std::vector<Report>& reports, bool table) {
    if (table) {
        for (const auto& r : reports) std::cout << render_table(r);
        return;
    }
    if (reports.size() == 1) {
        std::cout << reports.front().to_json().dump(2) << "\n";
        return;
    }
    Json all = Json::array();
    for (const auto& r : reports) all.push_back(r.to_json());
    std::cout << all.dump(2) << "\n";
}

RunOptions options_of(const Args& a) { return RunOptions{a.degree_bound, a.long_running, a.checks}; }

int run_one(Command command, const Args& a) {
    const Fixture f = load_fixture(resolve_fixture(a.fixture, a.dir));
    const Report r = run(command, f, options_of(a));
    print({r}, a.table);
    return r.status() == Status::Fail ? kCheckFailed : kOk;
}

int run_all(const Args& a) {
    std::vector<std::filesystem::path> paths;
    std::error_code ec;
    for (const auto& e : std::filesystem::directory_iterator(a.dir, ec))
        if (e.path().extension() == ".json") paths.push_back(e.path());
    if (ec) throw UsageError("cannot read fixture directory " + a.dir);
    std::sort(paths.begin(), paths.end());
    std::vector<Report> reports;
    bool expected = true;
    for (const auto& p : paths) {
        const Fixture f = load_fixture(p);
        for (Command c : default_commands(f.kind)) {
            reports.push_back(run(c, f, options_of(a)));
            expected = expected && reports.back().as_expected();
        }
    }
    print(reports, a.table);
    if (a.table) {
        long unexpected = 0;
        for (const auto& r : reports) unexpected += r.as_expected() ? 0 : 1;
        std::cout << reports.size() << " report(s), " << unexpected << " unexpected\n";
    }
    return expected ? kOk : kCheckFailed;
}

int run_list(const Args& a) {
    const auto fixtures = list_fixtures(a.dir, a.kind.empty() ? std::nullopt : std::optional(a.kind));
    if (a.table) {
        for (const auto& f : fixtures)
            std::cout << f.name << "  " << to_string(f.kind) << "  " << f.path.filename().string() << "  "
                      << f.description << "\n";
        return kOk;
    }
    Json out = Json::array();
    for (const auto& f : fixtures)
        out.push_back(Json{{"name", f.name},
                           {"kind", to_string(f.kind)},
                           {"file", f.path.filename().string()},
                           {"description", f.description}});
    std::cout << out.dump(2) << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equivariant cohomology of zero schemes"};
    app.require_subcommand(1);
    Args a;

    auto common = [&](CLI::App* sub, bool needs_fixture) {
        if (needs_fixture) sub->add_option("--fixture", a.fixture, "fixture file or name")->required();
        sub->add_option("--fixture-dir", a.dir, "directory searched for fixture names");
        sub->add_flag("--table", a.table, "human-readable output instead of JSON");
        sub->add_flag("--json", [&](std::int64_t) { a.table = false; }, "JSON output (default)");
    };
    auto computing = [&](CLI::App* sub) {
        sub->add_option("--degree-bound", a.degree_bound, "truncation bound; larger degrees are refused");
        sub->add_flag("--long-running", a.long_running, "run checks marked long-running");
        sub->add_option("--check", a.checks, "run only the named check (repeatable)");
    };

    std::vector<std::pair<CLI::App*, Command>> commands;
    for (Command c : {Command::ZeroScheme, Command::GkmCohomology, Command::GkmKtheory, Command::Kostant,
                      Command::Series}) {
        auto* sub = app.add_subcommand(to_string(c), "run the " + to_string(c) + " checks on one fixture");
        common(sub, true);
        computing(sub);
        commands.emplace_back(sub, c);
    }
    auto* all = app.add_subcommand("all", "run every fixture with its default commands");
    common(all, false);
    computing(all);
    auto* list = app.add_subcommand("list", "list fixtures");
    common(list, false);
    list->add_option("--kind", a.kind, "only fixtures of this kind");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        for (const auto& [sub, c] : commands)
            if (sub->parsed()) return run_one(c, a);
        if (all->parsed()) return run_all(a);
        return run_list(a);
    } catch (const FixtureError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return kUsage;
}
