#include "fixture.hpp"

#include <algorithm>
#include <fstream>

#ifndef EQZ_FIXTURE_DIR
#define EQZ_FIXTURE_DIR "fixtures"
#endif

namespace eqz::cli {

namespace {

const std::vector<std::pair<FixtureKind, std::string>> kKinds = {
    {FixtureKind::ZeroScheme, "zeroscheme"},     {FixtureKind::GkmGraph, "gkm-graph"},
    {FixtureKind::BundleData, "bundle-data"},    {FixtureKind::Section, "section"},
    {FixtureKind::ComponentSet, "component-set"}, {FixtureKind::Series, "series"},
};

std::string escape_pointer(const std::string& key) {
    std::string r;
    for (char c : key) {
        if (c == '~') r += "~0";
        else if (c == '/') r += "~1";
        else r += c;
    }
    return r;
}

}  // namespace

std::string to_string(FixtureKind k) {
    for (const auto& [kind, name] : kKinds)
        if (kind == k) return name;
    return "?";
}

std::optional<FixtureKind> kind_from_string(const std::string& s) {
    for (const auto& [kind, name] : kKinds)
        if (name == s) return kind;
    return std::nullopt;
}

// ---------------------------------------------------------------- Node

void Node::fail(const std::string& msg) const {
    throw FixtureError(file_ + ": " + (ptr_.empty() ? "/" : ptr_) + ": " + msg);
}

Node Node::operator[](const std::string& key) const {
    if (!j_->is_object()) fail("expected an object");
    if (!j_->contains(key)) fail("missing field '" + key + "'");
    return Node(j_->at(key), file_, ptr_ + "/" + escape_pointer(key));
}

Node Node::operator[](std::size_t i) const {
    if (!j_->is_array()) fail("expected an array");
    if (i >= j_->size()) fail("index " + std::to_string(i) + " out of range");
    return Node(j_->at(i), file_, ptr_ + "/" + std::to_string(i));
}

std::size_t Node::size() const {
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
}

long Node::as_long() const {
    if (!j_->is_number_integer()) fail("expected an integer");
    return j_->get<long>();
}

bool Node::as_bool() const {
    if (!j_->is_boolean()) fail("expected true or false");
    return j_->get<bool>();
}

std::string Node::as_string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
}

std::vector<std::string> Node::as_strings() const {
    std::vector<std::string> r;
    for (std::size_t i = 0; i < size(); ++i) r.push_back((*this)[i].as_string());
    return r;
}

std::vector<int> Node::as_ints() const {
    std::vector<int> r;
    for (std::size_t i = 0; i < size(); ++i) r.push_back((*this)[i].as_int());
    return r;
}

std::vector<long> Node::as_longs() const {
    std::vector<long> r;
    for (std::size_t i = 0; i < size(); ++i) r.push_back((*this)[i].as_long());
    return r;
}

Rational Node::as_rational() const {
    if (j_->is_number_integer()) return Rational(j_->get<long>());
    if (!j_->is_string()) fail("expected an integer or a rational string");
    try {
        return Rational::parse(j_->get<std::string>());
    } catch (const std::exception& e) {
        fail(std::string("bad rational: ") + e.what());
    }
}

MultiPoly Node::as_poly(const VarList& vars) const {
    if (j_->is_number_integer()) return MultiPoly::constant(vars, Rational(j_->get<long>()));
    const std::string text = as_string();
    try {
        return MultiPoly::parse(text, vars);
    } catch (const std::exception& e) {
        fail(e.what());
    }
}

LaurentPoly Node::as_laurent(const VarList& vars) const {
    if (j_->is_number_integer()) return LaurentPoly::constant(vars, Rational(j_->get<long>()));
    const std::string text = as_string();
    try {
        return LaurentPoly::parse(text, vars);
    } catch (const std::exception& e) {
        fail(e.what());
    }
}

RationalMatrix Node::as_matrix() const {
    const std::size_t rows = size();
    if (rows == 0) fail("empty matrix");
    const std::size_t cols = (*this)[0].size();
    RationalMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        const Node row = (*this)[i];
        if (row.size() != cols) row.fail("ragged matrix row");
        for (std::size_t j = 0; j < cols; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j].as_rational();
    }
    return m;
}

Node root(const Fixture& f) { return Node(f.data, f.path.filename().string()); }

// ---------------------------------------------------------------- loading

Fixture load_fixture(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FixtureError(path.string() + ": cannot open file");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    Fixture f;
    f.path = path;
    try {
        f.data = Json::parse(text);
    } catch (const Json::parse_error& e) {
        // e.byte is one past the offending character
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') ++line, col = 1;
            else ++col;
        }
        throw FixtureError(path.filename().string() + ":" + std::to_string(line) + ":" + std::to_string(col) +
                           ": JSON parse error");
    }
    const Node r = root(f);
    f.name = r["name"].as_string();
    const std::string kind = r["kind"].as_string();
    const auto k = kind_from_string(kind);
    if (!k) r["kind"].fail("unknown kind '" + kind + "'");
    f.kind = *k;
    if (r.has("description")) f.description = r["description"].as_string();
    if (r.has("degree_bound")) f.degree_bound = r["degree_bound"].as_long();
    f.degrees = r.has("degrees") ? r["degrees"].as_long() : f.degree_bound;
    if (f.degrees < 0) r["degrees"].fail("must be nonnegative");
    if (r.has("expect_failure")) f.expect_failure = r["expect_failure"].as_bool();
    return f;
}

std::vector<Fixture> list_fixtures(const std::filesystem::path& dir, std::optional<std::string> kind) {
    std::vector<Fixture> out;
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) return out;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
        try {
            Fixture f = load_fixture(p);
            if (!kind || to_string(f.kind) == *kind) out.push_back(std::move(f));
        } catch (const FixtureError&) {
        }
    }
    return out;
}

std::filesystem::path default_fixture_dir() { return EQZ_FIXTURE_DIR; }

// ---------------------------------------------------------------- builders
//
// Schema problems raise FixtureError; mathematically inconsistent data
// (inhomogeneous ideals, bad incidences, ...) raises the library's
// StructuralError so callers can report it as a failed check.

ChartedSpace parse_space(const Node& n) {
    std::vector<std::vector<std::string>> charts;
    if (n.has("charts"))
        for (std::size_t i = 0; i < n["charts"].size(); ++i) charts.push_back(n["charts"][i].as_strings());
    if (n.has("grassmannian")) {
        if (n["grassmannian"].as_ints() != std::vector<int>{2, 4}) n["grassmannian"].fail("only Gr(2,4) is supported");
        if (!charts.empty()) n["charts"].fail("Plücker charts use default names");
        return ChartedSpace::grassmannian_2_4();
    }
    std::vector<std::string> coords;
    if (n.has("projective")) {
        const int dim = n["projective"].as_int();
        if (dim < 0) n["projective"].fail("dimension must be nonnegative");
        for (int i = 0; i <= dim; ++i) coords.push_back("x" + std::to_string(i));
    } else {
        coords = n["coordinates"].as_strings();
    }
    const VarList vars(coords);
    std::vector<MultiPoly> eqs;
    if (n.has("equations"))
        for (std::size_t i = 0; i < n["equations"].size(); ++i) eqs.push_back(n["equations"][i].as_poly(vars));
    return ChartedSpace(coords, eqs, charts);
}

SectionFamily parse_section(const Node& n) {
    if (n.has("reductive")) {
        const Node r = n["reductive"];
        const bool traceless = r.has("traceless") && r["traceless"].as_bool();
        const int size = r["n"].as_int();
        if (size < 1 || size > 6) r["n"].fail("supported sizes are 1..6");
        return kostant_section_reductive(size, traceless);
    }
    std::vector<RationalMatrix> dirs;
    const Node d = n["directions"];
    for (std::size_t i = 0; i < d.size(); ++i) dirs.push_back(d[i].as_matrix());
    return kostant_section_solvable(n["base"].as_matrix(), dirs, OneParamSubgroup{n["subgroup"].as_ints()},
                                    n["parameters"].as_strings());
}

bool section_is_reductive(const Node& n) { return n.has("reductive"); }

ZeroSchemeModel parse_zero_scheme(const Fixture& f, long degree_bound) {
    const Node r = root(f);
    const SectionFamily s = parse_section(r["section"]);
    const ChartedSpace space = parse_space(r["space"]);
    const std::string rep = r.has("representation") ? r["representation"].as_string() : "standard";
    ChartedAction::Representation kind = ChartedAction::Representation::Standard;
    if (rep == "wedge2") kind = ChartedAction::Representation::Wedge2;
    else if (rep != "standard") r["representation"].fail("expected \"standard\" or \"wedge2\"");
    CechOptions opt;
    opt.degree_bound = degree_bound;
    return build_zero_scheme(s, ChartedAction(space, kind, static_cast<int>(s.matrix_size())), opt);
}

MomentGraph parse_graph(const Node& n) {
    if (n.has("preset")) {
        const std::string p = n["preset"].as_string();
        if (p == "projective_line") return MomentGraph::projective_line();
        if (p == "projective_space") return MomentGraph::projective_space(n["n"].as_int());
        if (p == "p1_times_p1") return MomentGraph::p1_times_p1();
        if (p == "flag_sl3") return MomentGraph::flag_sl3();
        if (p == "grassmannian") return MomentGraph::grassmannian(n["k"].as_int(), n["n"].as_int());
        n["preset"].fail("unknown graph preset '" + p + "'");
    }
    const auto vertices = n["vertices"].as_strings();
    const int rank = n["rank"].as_int();
    std::vector<GkmEdge> edges;
    const Node es = n["edges"];
    for (std::size_t i = 0; i < es.size(); ++i) {
        const Node e = es[i];
        auto index = [&](const Node& label) {
            const std::string s = label.as_string();
            const auto it = std::find(vertices.begin(), vertices.end(), s);
            if (it == vertices.end()) label.fail("unknown vertex '" + s + "'");
            return static_cast<int>(it - vertices.begin());
        };
        edges.push_back(GkmEdge{index(e["from"]), index(e["to"]), e["alpha"].as_ints()});
    }
    return MomentGraph(rank, vertices, edges);
}

EquivariantBundleData parse_bundle(const Node& n, const MomentGraph& g) {
    if (n.has("preset")) {
        const std::string p = n["preset"].as_string();
        if (p == "projective_line_bundle") return projective_line_bundle(n["n"].as_int(), n["k"].as_int());
        if (p == "p1_tangent") return p1_tangent();
        if (p == "flag_line_bundle") return flag_line_bundle(n["j"].as_int());
        if (p == "grassmannian_tautological") return grassmannian_tautological(n["k"].as_int(), n["n"].as_int());
        n["preset"].fail("unknown bundle preset '" + p + "'");
    }
    // weights keyed by vertex label
    const Node w = n["weights"];
    if (!w.json().is_object()) w.fail("expected an object keyed by vertex label");
    EquivariantBundleData b{g.rank(), std::vector<std::vector<Weight>>(g.vertex_count())};
    std::vector<bool> seen(g.vertex_count(), false);
    for (const auto& [label, value] : w.json().items()) {
        const auto it = std::find(g.vertices().begin(), g.vertices().end(), label);
        if (it == g.vertices().end()) w[label].fail("unknown vertex '" + label + "'");
        const auto v = static_cast<std::size_t>(it - g.vertices().begin());
        seen[v] = true;
        const Node fiber = w[label];
        for (std::size_t i = 0; i < fiber.size(); ++i) {
            auto wt = fiber[i].as_ints();
            if (static_cast<int>(wt.size()) != g.rank()) fiber[i].fail("weight has the wrong rank");
            b.weights[v].push_back(std::move(wt));
        }
    }
    for (std::size_t v = 0; v < seen.size(); ++v)
        if (!seen[v]) w.fail("no weights for vertex '" + g.vertices()[v] + "'");
    try {
        (void)b.rank();
    } catch (const std::exception& e) {
        w.fail(e.what());
    }
    return b;
}

ComponentCurveSet parse_component_set(const Fixture& f) {
    const Node r = root(f);
    ComponentCurveSet c;
    c.ambient = VarList(r["ambient"].as_strings());
    const VarList u{"u"};
    const Node comps = r["components"];
    std::vector<std::string> names;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const Node n = comps[i];
        CurveComponent comp;
        comp.name = n["name"].as_string();
        if (std::find(names.begin(), names.end(), comp.name) != names.end()) n["name"].fail("duplicate component");
        names.push_back(comp.name);
        comp.weight = n["weight"].as_int();
        if (n.has("coordinates"))
            for (std::size_t k = 0; k < n["coordinates"].size(); ++k)
                comp.coordinates.push_back(n["coordinates"][k].as_poly(u));
        if (n.has("equations"))
            for (std::size_t k = 0; k < n["equations"].size(); ++k)
                comp.equations.push_back(n["equations"][k].as_poly(c.ambient));
        c.components.push_back(std::move(comp));
    }
    const Node incs = r["incidences"];
    for (std::size_t i = 0; i < incs.size(); ++i) {
        const Node n = incs[i];
        const Node pair = n["components"];
        if (pair.size() != 2) pair.fail("expected two component names");
        auto index = [&](std::size_t k) {
            const std::string name = pair[k].as_string();
            const auto it = std::find(names.begin(), names.end(), name);
            if (it == names.end()) pair[k].fail("unknown component '" + name + "'");
            return static_cast<std::size_t>(it - names.begin());
        };
        Incidence inc;
        inc.first = index(0);
        inc.second = index(1);
        if (n.has("parameters")) {
            inc.first_parameter = n["parameters"][0].as_rational();
            inc.second_parameter = n["parameters"][1].as_rational();
        }
        for (std::size_t k = 0; k < n["point"].size(); ++k) inc.point.push_back(n["point"][k].as_rational());
        c.incidences.push_back(std::move(inc));
    }
    return c;
}

}  // namespace eqz::cli
