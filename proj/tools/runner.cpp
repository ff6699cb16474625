#include "runner.hpp"

#include <algorithm>
#include <map>

#include "eqz/weyl.hpp"

namespace eqz::cli {

namespace {

const std::vector<std::pair<Command, std::string>> kCommands = {
    {Command::ZeroScheme, "zeroscheme"}, {Command::GkmCohomology, "gkm-cohomology"},
    {Command::GkmKtheory, "gkm-ktheory"}, {Command::Kostant, "kostant"},
    {Command::Series, "series"},
};

// Raised inside a check whose inputs could not be built.
struct Unavailable {
    std::string why;
};

class Context {
public:
    Context(Report& report, const RunOptions& options) : report_(report), options_(options) {}

    // Checks that build inputs for others run even when not selected.
    static bool prerequisite(const std::string& name) {
        const std::string base = name.substr(0, name.find('['));
        return base == "model" || base == "global_sections" || base == "reduced_dims" || base == "dims" ||
               base == "expansion";
    }

    bool selected(const std::string& name) const {
        if (options_.only.empty() || prerequisite(name)) return true;
        const std::string base = name.substr(0, name.find('['));
        return std::any_of(options_.only.begin(), options_.only.end(),
                           [&](const std::string& o) { return o == name || o == base; });
    }

    template <class F>
    void check(const std::string& name, F&& body, bool long_running = false) {
        Check c{name, Status::Pass, {}, nullptr};
        if (!selected(name)) {
            c.status = Status::Skipped;
            c.detail = "not selected";
        } else if (long_running && !options_.long_running) {
            c.status = Status::Skipped;
            c.detail = "long-running; pass --long-running";
        } else {
            try {
                body(c);
            } catch (const FixtureError&) {
                throw;
            } catch (const Unavailable& u) {
                c.status = Status::Skipped;
                c.detail = u.why;
            } catch (const TruncationRefused& e) {
                c.status = Status::Refused;
                c.detail = e.what();
            } catch (const StructuralError& e) {
                c.status = Status::Fail;
                c.detail = e.what();
            } catch (const std::logic_error& e) {
                c.status = Status::Fail;
                c.detail = e.what();
            }
        }
        report_.checks.push_back(std::move(c));
    }

    Json& table(const std::string& name) { return report_.tables[name]; }
    const RunOptions& options() const { return options_; }

private:
    Report& report_;
    const RunOptions& options_;
};

Json strings(const std::vector<MultiPoly>& ps) {
    Json j = Json::array();
    for (const auto& p : ps) j.push_back(p.str());
    return j;
}

Json range_json(long n) {
    Json j = Json::array();
    for (long d = 0; d < n; ++d) j.push_back(d);
    return j;
}

std::optional<Node> optional_field(const Node& n, const std::string& key) {
    if (n.has(key)) return n[key];
    return std::nullopt;
}

// Fails the check with a per-degree witness when computed and expected differ
// on their common range; refuses when the expectation reaches past it.
void compare_sequences(Check& c, const std::vector<long>& computed, const std::vector<long>& expected,
                       const std::string& what) {
    Json bad = Json::array();
    const std::size_t n = std::min(computed.size(), expected.size());
    for (std::size_t d = 0; d < n; ++d)
        if (computed[d] != expected[d])
            bad.push_back(Json{{"degree", d}, {"expected", expected[d]}, {"computed", computed[d]}});
    if (!bad.empty()) {
        c.status = Status::Fail;
        c.detail = what + " differs in " + std::to_string(bad.size()) + " degree(s)";
        c.witness = bad;
        return;
    }
    c.detail = what + " agrees for d = 0.." + std::to_string(static_cast<long>(n) - 1);
    if (expected.size() > computed.size()) {
        c.status = Status::Refused;
        c.detail += "; degrees up to " + std::to_string(expected.size() - 1) + " exceed the truncation bound";
    }
}

Json edge_witness(const MomentGraph& g, const EdgeReport& r) {
    Json j = Json::array();
    for (auto i : r.violated) {
        const auto& e = g.edges()[i];
        j.push_back(Json{{"edge", g.vertices()[static_cast<std::size_t>(e.from)] + "--" +
                                      g.vertices()[static_cast<std::size_t>(e.to)]},
                         {"alpha", e.alpha}});
    }
    return j;
}

void edge_check(Check& c, const MomentGraph& g, const EdgeReport& r) {
    if (r.ok) {
        c.detail = "all " + std::to_string(g.edges().size()) + " edges";
        return;
    }
    c.status = Status::Fail;
    c.detail = std::to_string(r.violated.size()) + " violated edge(s)";
    c.witness = edge_witness(g, r);
}

// ---------------------------------------------------------------- zero schemes

struct SchemeRun {
    const Fixture& f;
    Context& cx;
    long bound;
    std::optional<ZeroSchemeModel> z;
    std::vector<long> dims;

    const ZeroSchemeModel& model() const {
        if (!z) throw Unavailable{"model unavailable"};
        return *z;
    }
    long window_end() const { return std::min(f.degrees, bound); }
    void refuse_beyond_bound(Check& c) const {
        if (f.degrees > bound) {
            c.status = Status::Refused;
            c.detail += "; degrees " + std::to_string(bound + 1) + ".." + std::to_string(f.degrees) +
                        " exceed the truncation bound " + std::to_string(bound);
        }
    }

    void build() {
        cx.check("model", [&](Check& c) {
            z.emplace(parse_zero_scheme(f, bound));
            std::string ring;
            for (const auto& v : z->ring()) ring += (ring.empty() ? "" : ",") + v;
            c.detail = std::to_string(z->charts().size()) + " charts, homogeneous ring (" + ring + ")";
        });
    }

    void global_sections() {
        cx.check("global_sections", [&](Check& c) {
            const auto& m = model();
            for (long d = 0; d <= window_end(); ++d) dims.push_back(global_sections_dim(m, d));
            cx.table("global_sections") = Json{{"degree", range_json(static_cast<long>(dims.size()))}, {"dim", dims}};
            c.detail = "d = 0.." + std::to_string(window_end());
            refuse_beyond_bound(c);
        });
    }

    void closed_form(const Node& expect) {
        const auto want = optional_field(expect, "closed_form");
        cx.check("closed_form", [&](Check& c) {
            if (dims.empty()) throw Unavailable{"no dimensions computed"};
            const auto rep = detect_closed_form(dims, static_cast<int>(model().parameters().size()) + 2);
            cx.table("poincare") = Json{{"closed_form", rep.closed_form.empty() ? "none detected" : rep.closed_form}};
            c.detail = rep.closed_form.empty() ? "no closed form detected" : rep.closed_form;
            if (want && want->as_string() != rep.closed_form) {
                // a truncated window neither confirms nor refutes the expectation
                if (f.degrees > bound) {
                    c.status = Status::Refused;
                    c.detail += " from the truncated window; degrees past " + std::to_string(bound) + " were refused";
                    return;
                }
                c.status = Status::Fail;
                c.witness = Json{{"expected", want->as_string()}, {"computed", rep.closed_form}};
            }
        });
    }
};

Node expectations(const Fixture& f) {
    static const Json empty = Json::object();
    const Node r = root(f);
    return r.has("expect") ? r["expect"] : Node(empty, f.path.filename().string(), "/expect");
}

void run_zeroscheme(Context& cx, const Fixture& f, long bound, bool series_only) {
    SchemeRun s{f, cx, bound, std::nullopt, {}};
    const Node expect = expectations(f);
    s.build();
    if (!series_only) {
        cx.check("charts_compatible", [&](Check& c) {
            if (!charts_compatible(s.model())) {
                c.status = Status::Fail;
                c.detail = "chart ideals disagree on an overlap";
            }
        });
        if (const auto ideals = optional_field(expect, "chart_ideals"))
            for (std::size_t i = 0; i < ideals->size(); ++i) {
                const Node e = (*ideals)[i];
                const auto chart = static_cast<std::size_t>(e["chart"].as_long());
                cx.check("chart_ideal[" + std::to_string(chart) + "]", [&](Check& c) {
                    const ChartIdeal& ci = s.model().chart(chart);
                    std::vector<MultiPoly> want;
                    for (std::size_t k = 0; k < e["generators"].size(); ++k)
                        want.push_back(e["generators"][k].as_poly(ci.vars));
                    c.witness = strings(ci.generators);
                    if (!same_ideal(ci.generators, want)) {
                        c.status = Status::Fail;
                        c.detail = "ideal differs from the expected one";
                    }
                });
            }
        if (const auto sats = optional_field(expect, "saturation"))
            for (std::size_t i = 0; i < sats->size(); ++i) {
                const Node e = (*sats)[i];
                const auto chart = static_cast<std::size_t>(e["chart"].as_long());
                const std::string by = e["by"].as_string();
                cx.check("saturation[" + std::to_string(chart) + "," + by + "]", [&](Check& c) {
                    const ChartIdeal& ci = s.model().chart(chart);
                    const GroebnerBasis got = saturate(ci.generators, e["by"].as_poly(ci.vars));
                    std::vector<MultiPoly> want;
                    for (std::size_t k = 0; k < e["generators"].size(); ++k)
                        want.push_back(e["generators"][k].as_poly(ci.vars));
                    c.witness = strings(got.generators());
                    if (!same_ideal(got.generators(), want)) {
                        c.status = Status::Fail;
                        c.detail = "saturation differs from the expected ideal";
                    }
                });
            }
    }
    s.global_sections();
    if (!series_only) {
        if (const auto want = optional_field(expect, "global_dims"))
            cx.check("global_dims", [&](Check& c) {
                if (s.dims.empty()) throw Unavailable{"no dimensions computed"};
                compare_sequences(c, s.dims, want->as_longs(), "global sections");
            });
        if (const auto q = optional_field(expect, "quotient"))
            cx.check("quotient_oracle", [&](Check& c) {
                if (s.dims.empty()) throw Unavailable{"no dimensions computed"};
                const VarList vars((*q)["variables"].as_strings());
                std::vector<MultiPoly> gens;
                for (std::size_t k = 0; k < (*q)["generators"].size(); ++k)
                    gens.push_back((*q)["generators"][k].as_poly(vars));
                const GradedQuotient ring(buchberger(gens, MonomialOrder::grevlex(), vars),
                                          WeightedGrading{(*q)["weights"].as_ints()});
                std::vector<long> oracle;
                for (std::size_t d = 0; d < s.dims.size(); ++d)
                    oracle.push_back(hilbert_function(ring, static_cast<long>(d)));
                cx.table("quotient_oracle") = Json{{"degree", range_json(static_cast<long>(oracle.size()))},
                                                   {"dim", oracle}};
                compare_sequences(c, s.dims, oracle, "Hilbert function of the quotient");
                s.refuse_beyond_bound(c);
            });
        if (const auto vanish = optional_field(expect, "vanishing"))
            for (std::size_t k = 0; k < vanish->size(); ++k) {
                const int i = (*vanish)[k].as_int();
                cx.check("h" + std::to_string(i) + "_vanishing", [&](Check& c) {
                    const auto& m = s.model();
                    std::vector<long> h;
                    Json bad = Json::array();
                    for (long d = 0; d <= s.window_end(); ++d) {
                        const auto r = cech_cohomology(m, i, d);
                        h.push_back(r.dim);
                        if (r.dim != 0 || !r.stable)
                            bad.push_back(Json{{"degree", d}, {"dim", r.dim}, {"stable", r.stable}});
                    }
                    cx.table("h" + std::to_string(i)) = Json{{"degree", range_json(static_cast<long>(h.size()))}, {"dim", h}};
                    c.detail = "d = 0.." + std::to_string(s.window_end());
                    if (!bad.empty()) {
                        c.status = Status::Fail;
                        c.witness = bad;
                        return;
                    }
                    s.refuse_beyond_bound(c);
                });
            }
        if (const auto totals = optional_field(expect, "cohomology_total"))
            for (std::size_t k = 0; k < totals->size(); ++k) {
                const Node e = (*totals)[k];
                const int i = e["index"].as_int();
                const long want = e["total"].as_long();
                const bool slow = e.has("long_running") && e["long_running"].as_bool();
                cx.check(
                    "h" + std::to_string(i) + "_total",
                    [&](Check& c) {
                        const auto& m = s.model();
                        std::vector<long> h;
                        long total = 0;
                        Json unstable = Json::array();
                        for (long d = 0; d <= s.window_end(); ++d) {
                            const auto r = cech_cohomology(m, i, d);
                            h.push_back(r.dim);
                            total += r.dim;
                            if (!r.stable) unstable.push_back(d);
                        }
                        cx.table("h" + std::to_string(i)) =
                            Json{{"degree", range_json(static_cast<long>(h.size()))}, {"dim", h}};
                        c.detail = "total " + std::to_string(total) + " over d = 0.." + std::to_string(s.window_end());
                        if (total != want || !unstable.empty()) {
                            c.status = Status::Fail;
                            c.witness = Json{{"expected", want}, {"computed", total}, {"unstable_degrees", unstable}};
                            return;
                        }
                        s.refuse_beyond_bound(c);
                    },
                    slow);
            }
    }
    s.closed_form(expect);
}

void run_component_set(Context& cx, const Fixture& f, long bound) {
    const Node expect = expectations(f);
    std::optional<ComponentCurveSet> set;
    cx.check("model", [&](Check& c) {
        set.emplace(parse_component_set(f));
        set->validate();
        c.detail = std::to_string(set->components.size()) + " components, " +
                   std::to_string(set->incidences.size()) + " incidences";
    });
    std::vector<long> dims;
    cx.check("reduced_dims", [&](Check& c) {
        if (!set) throw Unavailable{"model unavailable"};
        for (long d = 0; d <= f.degrees; ++d) dims.push_back(reduced_ring_dims(*set, d));
        cx.table("reduced_dims") = Json{{"degree", range_json(static_cast<long>(dims.size()))}, {"dim", dims}};
        if (const auto want = optional_field(expect, "dims")) compare_sequences(c, dims, want->as_longs(), "reduced dims");
        else c.detail = "d = 0.." + std::to_string(f.degrees);
    });
    const Node r = root(f);
    if (!r.has("compare")) return;
    const Node cmp = r["compare"];
    const std::string other = cmp["fixture"].as_string();
    cx.check("compare[" + other + "]", [&](Check& c) {
        if (dims.empty()) throw Unavailable{"no dimensions computed"};
        const Fixture g = load_fixture(f.path.parent_path() / other);
        const ZeroSchemeModel z = parse_zero_scheme(g, bound);
        std::vector<long> scheme;
        Json diff = Json::array();
        std::map<long, long> got;
        for (std::size_t d = 0; d < dims.size(); ++d) {
            scheme.push_back(global_sections_dim(z, static_cast<long>(d)));
            diff.push_back(dims[d] - scheme.back());
            if (dims[d] != scheme.back()) got[static_cast<long>(d)] = dims[d] - scheme.back();
        }
        cx.table("reduced_vs_scheme") = Json{{"degree", range_json(static_cast<long>(dims.size()))},
                                              {"reduced", dims},
                                              {"scheme", scheme},
                                              {"difference", diff}};
        std::map<long, long> want;
        if (cmp.has("expected_differences"))
            for (const auto& [k, v] : cmp["expected_differences"].json().items()) {
                if (!v.is_number_integer()) cmp["expected_differences"][k].fail("expected an integer");
                want[std::stol(k)] = v.get<long>();
            }
        Json w = Json::object();
        for (const auto& [d, x] : got) w[std::to_string(d)] = x;
        c.detail = got.empty() ? "identical dimensions" : "differences " + w.dump();
        if (got != want) {
            c.status = Status::Fail;
            c.witness = w;
        }
    });
}

// ---------------------------------------------------------------- GKM

void run_gkm_graph(Context& cx, const Fixture& f) {
    const Node r = root(f);
    const Node expect = expectations(f);
    std::optional<MomentGraph> g;
    cx.check("model", [&](Check& c) {
        g.emplace(parse_graph(r["graph"]));
        c.detail = std::to_string(g->vertex_count()) + " vertices, " + std::to_string(g->edges().size()) +
                   " edges, torus rank " + std::to_string(g->rank());
    });
    std::vector<long> dims;
    cx.check("dims", [&](Check& c) {
        if (!g) throw Unavailable{"model unavailable"};
        for (long d = 0; d <= f.degrees; ++d) dims.push_back(gkm_cohomology_dim(*g, static_cast<int>(d)));
        cx.table("gkm_dims") = Json{{"degree", range_json(static_cast<long>(dims.size()))}, {"dim", dims}};
        if (const auto want = optional_field(expect, "dims")) compare_sequences(c, dims, want->as_longs(), "GKM dims");
        else c.detail = "d = 0.." + std::to_string(f.degrees);
    });
    if (!r.has("betti")) return;
    const auto betti = r["betti"].as_longs();
    cx.check("betti_count", [&](Check& c) {
        if (!g) throw Unavailable{"model unavailable"};
        long sum = 0;
        for (long b : betti) sum += b;
        c.detail = "sum of Betti numbers " + std::to_string(sum) + ", fixed points " + std::to_string(g->vertex_count());
        if (sum != static_cast<long>(g->vertex_count())) c.status = Status::Fail;
    });
    cx.check("formality", [&](Check& c) {
        if (!g || dims.empty()) throw Unavailable{"no dimensions computed"};
        std::vector<long> want;
        for (const auto& x : expand_series(formality_series(betti, g->rank()), static_cast<int>(f.degrees)))
            want.push_back(x.to_long());
        cx.table("formality_series") = Json{{"degree", range_json(static_cast<long>(want.size()))}, {"coefficient", want}};
        compare_sequences(c, dims, want, "P(t)/(1-t^2)^r");
    });
}

struct BundleSet {
    std::optional<MomentGraph> g;
    std::vector<std::pair<std::string, EquivariantBundleData>> bundles;
};

BundleSet load_bundles(Context& cx, const Fixture& f) {
    const Node r = root(f);
    BundleSet s;
    cx.check("model", [&](Check& c) {
        s.g.emplace(parse_graph(r["graph"]));
        if (r.has("bundles"))
            for (std::size_t i = 0; i < r["bundles"].size(); ++i) {
                const Node b = r["bundles"][i];
                s.bundles.emplace_back(b["name"].as_string(), parse_bundle(b, *s.g));
                const auto& data = s.bundles.back().second;
                if (data.torus_rank != s.g->rank() || data.weights.size() != s.g->vertex_count())
                    b.fail("bundle does not match the graph");
            }
        c.detail = std::to_string(s.bundles.size()) + " bundle(s) on " + std::to_string(s.g->vertex_count()) + " vertices";
    });
    return s;
}

void run_bundle_cohomology(Context& cx, const Fixture& f) {
    const Node r = root(f);
    BundleSet s = load_bundles(cx, f);
    const int order = r.has("chern_order") ? r["chern_order"].as_int() : 4;
    for (const auto& [name, b] : s.bundles) {
        cx.check("consistency[" + name + "]", [&](Check& c) { edge_check(c, *s.g, bundle_consistency(b, *s.g)); });
        cx.check("chern[" + name + "]", [&](Check& c) {
            EdgeReport all;
            for (int k = 1; k <= static_cast<int>(b.rank()); ++k) {
                const auto rep = gkm_cohomology_check(localize_chern(b, k), *s.g);
                for (auto e : rep.violated)
                    if (std::find(all.violated.begin(), all.violated.end(), e) == all.violated.end())
                        all.violated.push_back(e);
            }
            std::sort(all.violated.begin(), all.violated.end());
            all.ok = all.violated.empty();
            edge_check(c, *s.g, all);
        });
        cx.check("chern_character[" + name + "]", [&](Check& c) {
            c.detail = "order " + std::to_string(order);
            if (!chern_character_check(b, order)) c.status = Status::Fail;
        });
    }
    if (!r.has("classes")) return;
    for (std::size_t i = 0; i < r["classes"].size(); ++i) {
        const Node k = r["classes"][i];
        if (!k.has("cohomology")) continue;
        cx.check("class[" + k["name"].as_string() + "]", [&](Check& c) {
            if (!s.g) throw Unavailable{"model unavailable"};
            CohomologyClass cls;
            const VarList vars = s.g->variables();
            for (std::size_t v = 0; v < k["cohomology"].size(); ++v) cls.values.push_back(k["cohomology"][v].as_poly(vars));
            if (cls.values.size() != s.g->vertex_count()) k["cohomology"].fail("one value per vertex required");
            edge_check(c, *s.g, gkm_cohomology_check(cls, *s.g));
        });
    }
}

void run_bundle_ktheory(Context& cx, const Fixture& f) {
    const Node r = root(f);
    BundleSet s = load_bundles(cx, f);
    std::vector<KTheoryClass> passing;
    for (const auto& [name, b] : s.bundles)
        cx.check("ktheory[" + name + "]", [&](Check& c) {
            const KTheoryClass k = localize_bundle_K(b);
            const auto rep = gkm_ktheory_check(k, *s.g);
            edge_check(c, *s.g, rep);
            if (rep.ok) passing.push_back(k);
        });
    if (r.has("classes"))
        for (std::size_t i = 0; i < r["classes"].size(); ++i) {
            const Node k = r["classes"][i];
            if (!k.has("ktheory")) continue;
            cx.check("class[" + k["name"].as_string() + "]", [&](Check& c) {
                if (!s.g) throw Unavailable{"model unavailable"};
                KTheoryClass cls;
                const VarList vars = s.g->variables();
                for (std::size_t v = 0; v < k["ktheory"].size(); ++v) cls.values.push_back(k["ktheory"][v].as_laurent(vars));
                if (cls.values.size() != s.g->vertex_count()) k["ktheory"].fail("one value per vertex required");
                c.witness = nullptr;
                edge_check(c, *s.g, gkm_ktheory_check(cls, *s.g));
            });
        }
    if (s.bundles.size() < 2) return;
    cx.check("products", [&](Check& c) {
        long pairs = 0;
        for (std::size_t i = 0; i < passing.size(); ++i)
            for (std::size_t j = i; j < passing.size(); ++j) {
                ++pairs;
                const auto rep = gkm_ktheory_check(passing[i] * passing[j], *s.g);
                if (!rep.ok) {
                    c.status = Status::Fail;
                    c.witness = edge_witness(*s.g, rep);
                    c.detail = "product of passing classes " + std::to_string(i) + " and " + std::to_string(j) + " fails";
                    return;
                }
            }
        c.detail = std::to_string(pairs) + " products of passing classes";
    });
}

// ---------------------------------------------------------------- sections

void run_kostant(Context& cx, const Fixture& f) {
    const Node r = root(f);
    const Node expect = expectations(f);
    const Node sec = r["section"];
    std::optional<SectionFamily> s;
    cx.check("model", [&](Check& c) {
        s.emplace(parse_section(sec));
        std::string names;
        for (const auto& p : s->parameters) names += (names.empty() ? "" : ",") + p;
        c.detail = std::to_string(s->matrix_size()) + "x" + std::to_string(s->matrix_size()) + " matrices, parameters (" + names + ")";
    });
    auto model = [&]() -> const SectionFamily& {
        if (!s) throw Unavailable{"model unavailable"};
        return *s;
    };
    cx.check("weights", [&](Check& c) {
        // recomputed from the action, not read off the stored grading
        const auto w = cstar_act(model(), model().subgroup);
        Json names = Json::array();
        for (const auto& p : model().parameters) names.push_back(p);
        cx.table("section") = Json{{"parameter", names}, {"weight", w}};
        c.detail = Json(w).dump();
        if (std::any_of(w.begin(), w.end(), [](int x) { return x <= 0 || x % 2 != 0; })) {
            c.status = Status::Fail;
            c.detail += " contains a weight that is not positive and even";
        }
        if (w != model().grading.weights) {
            c.status = Status::Fail;
            c.witness = Json{{"grading", model().grading.weights}, {"action", w}};
        }
        if (const auto want = optional_field(expect, "weights"))
            if (want->as_ints() != w) {
                c.status = Status::Fail;
                c.witness = Json{{"expected", want->as_ints()}, {"computed", w}};
            }
    });
    cx.check("char_poly", [&](Check& c) {
        const auto cp = char_poly_on_section(model());
        Json j = Json::array();
        for (const auto& p : cp) j.push_back(p.str());
        cx.table("char_poly") = Json{{"coefficient", j}};
        c.detail = "c_1..c_" + std::to_string(cp.size());
        if (const auto want = optional_field(expect, "char_poly")) {
            const auto w = want->as_strings();
            std::vector<std::string> got;
            for (const auto& p : cp) got.push_back(p.str());
            if (w != got) {
                c.status = Status::Fail;
                c.witness = Json{{"expected", w}, {"computed", got}};
            }
        }
    });
    const bool reductive = section_is_reductive(sec);
    const bool want_jacobian = reductive || (expect.has("jacobian") && expect["jacobian"].as_bool());
    if (reductive)
        cx.check("regular", [&](Check& c) {
            const auto n = model().matrix_size();
            const auto dim = centralizer_dim(model().base);
            c.detail = "centralizer dimension " + std::to_string(dim);
            if (dim != n) c.status = Status::Fail;
        });
    if (want_jacobian)
        cx.check("jacobian", [&](Check& c) {
            // invariants that are not identically zero on the section
            std::vector<MultiPoly> fs;
            for (auto& p : char_poly_on_section(model()))
                if (!p.is_zero()) fs.push_back(p);
            if (fs.size() != model().parameters.size()) {
                c.status = Status::Fail;
                c.detail = "number of invariants differs from the number of parameters";
                return;
            }
            const MultiPoly j = jacobian_determinant(fs);
            c.detail = "Jacobian determinant " + j.str();
            if (j.is_zero() || !j.is_constant()) c.status = Status::Fail;
        });
    if (reductive)
        cx.check("weyl_molien", [&](Check& c) {
            const int n = static_cast<int>(model().matrix_size());
            const auto g = FiniteActionGroup::symmetric(n);
            const int top = 10;
            const auto molien = molien_coefficients(g, top);
            std::vector<long> inv, mol;
            for (int d = 0; d <= top; ++d) {
                inv.push_back(invariant_dim(g, d));
                mol.push_back(molien[static_cast<std::size_t>(d)].to_long());
            }
            cx.table("weyl_invariants") = Json{{"degree", range_json(top + 1)}, {"invariant_dim", inv}, {"molien", mol}};
            compare_sequences(c, inv, mol, "S_" + std::to_string(n) + " invariants vs Molien");
        });
}

// ---------------------------------------------------------------- series

void run_series(Context& cx, const Fixture& f) {
    const Node r = root(f);
    const std::string var = r.has("variable") ? r["variable"].as_string() : "t";
    const VarList vars{var};
    const int terms = r.has("terms") ? r["terms"].as_int() : static_cast<int>(f.degrees);
    if (terms < 0) r["terms"].fail("must be nonnegative");
    const Node list = r["series"];
    std::vector<std::string> labels;
    std::vector<std::vector<long>> values;
    Json table;
    table["degree"] = range_json(terms + 1);
    for (std::size_t i = 0; i < list.size(); ++i) {
        const Node e = list[i];
        const std::string label = e["label"].as_string();
        const MultiPoly num = e["numerator"].as_poly(vars), den = e["denominator"].as_poly(vars);
        labels.push_back(label);
        values.emplace_back();
        cx.check("expansion[" + label + "]", [&](Check& c) {
            const auto coeffs = expand_series(make_series(num, den), terms);
            Json shown = Json::array();
            for (const auto& x : coeffs) {
                shown.push_back(x.str());
                values.back().push_back(x.is_integer() ? x.to_long() : 0);
            }
            table[label] = shown;
            c.detail = "(" + num.str() + ")/(" + den.str() + ")";
            if (e.has("expected")) compare_sequences(c, values.back(), e["expected"].as_longs(), "expansion");
        });
    }
    if (r.has("compare")) {
        const Node cmp = r["compare"];
        const std::string a = cmp["first"].as_string(), b = cmp["second"].as_string();
        auto index = [&](const Node& n, const std::string& label) {
            const auto it = std::find(labels.begin(), labels.end(), label);
            if (it == labels.end()) n.fail("unknown series '" + label + "'");
            return static_cast<std::size_t>(it - labels.begin());
        };
        const std::size_t ia = index(cmp["first"], a), ib = index(cmp["second"], b);
        cx.check("difference", [&](Check& c) {
            if (values[ia].size() != static_cast<std::size_t>(terms + 1) || values[ib].size() != values[ia].size())
                throw Unavailable{"expansions unavailable"};
            Json diff = Json::array();
            std::map<long, long> got, want;
            for (std::size_t d = 0; d < values[ia].size(); ++d) {
                const long x = values[ia][d] - values[ib][d];
                diff.push_back(x);
                if (x != 0) got[static_cast<long>(d)] = x;
            }
            table[a + " - " + b] = diff;
            if (cmp.has("expected"))
                for (const auto& [k, v] : cmp["expected"].json().items()) {
                    if (!v.is_number_integer()) cmp["expected"][k].fail("expected an integer");
                    want[std::stol(k)] = v.get<long>();
                }
            Json w = Json::object();
            for (const auto& [d, x] : got) w["t^" + std::to_string(d)] = x;
            c.detail = got.empty() ? "identical" : "nonzero differences " + w.dump();
            if (got != want) {
                c.status = Status::Fail;
                c.witness = w;
            }
        });
    }
    cx.table("expansions") = table;
}

}  // namespace

std::string to_string(Command c) {
    for (const auto& [cmd, name] : kCommands)
        if (cmd == c) return name;
    return "?";
}

std::optional<Command> command_from_string(const std::string& s) {
    for (const auto& [cmd, name] : kCommands)
        if (name == s) return cmd;
    return std::nullopt;
}

std::vector<Command> default_commands(FixtureKind kind) {
    switch (kind) {
        case FixtureKind::ZeroScheme: return {Command::ZeroScheme};
        case FixtureKind::ComponentSet: return {Command::ZeroScheme};
        case FixtureKind::GkmGraph: return {Command::GkmCohomology};
        case FixtureKind::BundleData: return {Command::GkmCohomology, Command::GkmKtheory};
        case FixtureKind::Section: return {Command::Kostant};
        case FixtureKind::Series: return {Command::Series};
    }
    return {};
}

Report run(Command command, const Fixture& f, const RunOptions& options) {
    Report report;
    report.fixture = f.name;
    report.kind = to_string(f.kind);
    report.command = to_string(command);
    report.expect_failure = f.expect_failure;
    Context cx(report, options);
    const long bound = options.degree_bound.value_or(f.degree_bound);
    auto mismatch = [&]() {
        return UsageError("command '" + to_string(command) + "' does not apply to a " + to_string(f.kind) + " fixture");
    };
    switch (command) {
        case Command::ZeroScheme:
            if (f.kind == FixtureKind::ZeroScheme) run_zeroscheme(cx, f, bound, false);
            else if (f.kind == FixtureKind::ComponentSet) run_component_set(cx, f, bound);
            else throw mismatch();
            break;
        case Command::Series:
            if (f.kind == FixtureKind::Series) run_series(cx, f);
            else if (f.kind == FixtureKind::ZeroScheme) run_zeroscheme(cx, f, bound, true);
            else throw mismatch();
            break;
        case Command::GkmCohomology:
            if (f.kind == FixtureKind::GkmGraph) run_gkm_graph(cx, f);
            else if (f.kind == FixtureKind::BundleData) run_bundle_cohomology(cx, f);
            else throw mismatch();
            break;
        case Command::GkmKtheory:
            if (f.kind == FixtureKind::BundleData) run_bundle_ktheory(cx, f);
            else throw mismatch();
            break;
        case Command::Kostant:
            if (f.kind == FixtureKind::Section) run_kostant(cx, f);
            else throw mismatch();
            break;
    }
    return report;
}

std::filesystem::path resolve_fixture(const std::string& arg, const std::filesystem::path& dir) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) return arg;
    const auto named = dir / (arg + ".json");
    if (std::filesystem::is_regular_file(named, ec)) return named;
    return arg;
}

}  // namespace eqz::cli
