#pragma once

// JSON fixtures and their translation into library objects.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "eqz/gkm.hpp"
#include "eqz/liegroup.hpp"
#include "eqz/zeroscheme.hpp"

namespace eqz::cli {

using Json = nlohmann::ordered_json;

/// Malformed fixture; the message starts with "<file>: <json pointer>".
class FixtureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class FixtureKind { ZeroScheme, GkmGraph, BundleData, Section, ComponentSet, Series };

std::string to_string(FixtureKind k);
std::optional<FixtureKind> kind_from_string(const std::string& s);

struct Fixture {
    std::string name;
    FixtureKind kind = FixtureKind::Series;
    std::string description;
    std::filesystem::path path;
    long degrees = 20;       // window of degrees to report
    long degree_bound = 20;  // truncation bound
    bool expect_failure = false;
    Json data;
};

Fixture load_fixture(const std::filesystem::path& path);
/// Every *.json under dir, sorted by name; unparseable files are skipped.
std::vector<Fixture> list_fixtures(const std::filesystem::path& dir, std::optional<std::string> kind = {});
std::filesystem::path default_fixture_dir();

// Field access with the JSON pointer carried along for error messages.
class Node {
public:
    Node(const Json& j, std::string file, std::string pointer = "")
        : j_(&j), file_(std::move(file)), ptr_(std::move(pointer)) {}

    bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }
    Node operator[](const std::string& key) const;
    Node operator[](std::size_t i) const;
    std::size_t size() const;

    long as_long() const;
    int as_int() const { return static_cast<int>(as_long()); }
    bool as_bool() const;
    std::string as_string() const;
    std::vector<std::string> as_strings() const;
    std::vector<int> as_ints() const;
    std::vector<long> as_longs() const;
    Rational as_rational() const;  // integer or "p/q"
    MultiPoly as_poly(const VarList& vars) const;
    LaurentPoly as_laurent(const VarList& vars) const;
    RationalMatrix as_matrix() const;

    [[noreturn]] void fail(const std::string& msg) const;
    const Json& json() const { return *j_; }
    const std::string& pointer() const { return ptr_; }

private:
    const Json* j_;
    std::string file_;
    std::string ptr_;
};

Node root(const Fixture& f);

// Builders for each payload.
ChartedSpace parse_space(const Node& n);
SectionFamily parse_section(const Node& n);
bool section_is_reductive(const Node& n);
ZeroSchemeModel parse_zero_scheme(const Fixture& f, long degree_bound);
MomentGraph parse_graph(const Node& n);
EquivariantBundleData parse_bundle(const Node& n, const MomentGraph& g);
ComponentCurveSet parse_component_set(const Fixture& f);

}  // namespace eqz::cli
