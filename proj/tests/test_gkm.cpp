#include "doctest.h"

#include <random>

#include "eqz/gkm.hpp"
#include "eqz/groebner.hpp"
#include "oracles.hpp"

using namespace eqz;
using namespace eqz::oracle;

namespace {

std::vector<long> series_longs(const RationalSeries& s, int n) {
    std::vector<long> r;
    for (const auto& c : expand_series(s, n)) r.push_back(c.to_long());
    return r;
}

}  // namespace

TEST_CASE("moment graph fixtures") {
    CHECK(MomentGraph::projective_line().edges().size() == 1);
    const auto flag = MomentGraph::flag_sl3();
    CHECK(flag.vertex_count() == 6);
    CHECK(flag.edges().size() == 9);
    const auto gr = MomentGraph::grassmannian(2, 4);
    CHECK(gr.vertex_count() == 6);
    CHECK(gr.edges().size() == 12);
    CHECK(gr.vertices().front() == "12");
    CHECK(MomentGraph::projective_space(3).edges().size() == 6);
    CHECK_THROWS_AS(MomentGraph(1, {"a", "b"}, {{0, 1, {0}}}), StructuralError);
    CHECK_THROWS_AS(MomentGraph(1, {"a", "b"}, {{0, 0, {1}}}), StructuralError);
    CHECK_THROWS_AS(MomentGraph(1, {"a", "a"}, {}), StructuralError);
    CHECK_THROWS_AS(MomentGraph(2, {"a", "b"}, {{0, 1, {1}}}), StructuralError);
}

TEST_CASE("gkm_cohomology_dim examples") {
    const auto p1 = MomentGraph::projective_line();
    CHECK(gkm_cohomology_dim(p1, 0) == 1);
    CHECK(gkm_cohomology_dim(p1, 2) == 2);
    // rank-one torus: pairs (a x^2, b x^2) all qualify
    CHECK(gkm_cohomology_dim(p1, 4) == 2);
    CHECK(gkm_cohomology_dim(p1, 3) == 0);
    CHECK(gkm_cohomology_dim(MomentGraph::p1_times_p1(), 2) == 4);
    for (int r = 1; r <= 3; ++r) {
        const MomentGraph point(r, {"pt"}, {});
        for (int d = 0; d <= 8; d += 2) CHECK(gkm_cohomology_dim(point, d) == binomial(d / 2 + r - 1, r - 1).get_si());
    }
    const MomentGraph two_points(1, {"a", "b"}, {});
    CHECK(gkm_cohomology_dim(two_points, 0) == 2);
}

TEST_CASE("gkm_cohomology_dim agrees with the quotient-unknown oracle") {
    std::vector<MomentGraph> graphs{MomentGraph::projective_line(), MomentGraph::p1_times_p1(),
                                    MomentGraph::flag_sl3(), MomentGraph::grassmannian(2, 4),
                                    MomentGraph::projective_space(2),
                                    MomentGraph(2, {"a", "b", "c"}, {{0, 1, {2, 0}}, {1, 2, {1, 1}}})};
    for (const auto& g : graphs)
        for (int d = 0; d <= 8; d += 2) {
            CAPTURE(d);
            CHECK(gkm_cohomology_dim(g, d) == gkm_dim_with_quotients(g, d));
        }
}

TEST_CASE("gkm dims match formality series") {
    struct Case {
        MomentGraph g;
        std::vector<long> betti;
    };
    const std::vector<Case> cases{{MomentGraph::projective_line(), {1, 0, 1}},
                                  {MomentGraph::p1_times_p1(), {1, 0, 2, 0, 1}},
                                  {MomentGraph::flag_sl3(), {1, 0, 2, 0, 2, 0, 1}},
                                  {MomentGraph::projective_space(3), {1, 0, 1, 0, 1, 0, 1}}};
    for (const auto& c : cases) {
        const auto expected = series_longs(formality_series(c.betti, c.g.rank()), 10);
        for (int d = 0; d <= 10; ++d) CHECK(gkm_cohomology_dim(c.g, d) == expected[static_cast<std::size_t>(d)]);
        CHECK(gkm_cohomology_dim(c.g, 0) == static_cast<long>(c.g.connected_components()));
    }
}

TEST_CASE("formality_series examples") {
    CHECK(series_longs(formality_series({1}, 0), 4) == std::vector<long>{1, 0, 0, 0, 0});
    CHECK(series_longs(formality_series({1, 0, 1}, 1), 6) == std::vector<long>{1, 0, 2, 0, 2, 0, 2});
    CHECK(series_longs(formality_series({1, 0, 1, 0, 1, 0, 1}, 1), 8) ==
          std::vector<long>{1, 0, 2, 0, 3, 0, 4, 0, 4});
    CHECK_THROWS_AS(formality_series({1, -1}, 1), std::domain_error);
}

TEST_CASE("gkm_ktheory_check examples") {
    const auto p1 = MomentGraph::projective_line();
    const VarList x = p1.variables();
    auto L = [&](const char* s) { return LaurentPoly::parse(s, x); };
    CHECK(gkm_ktheory_check({{L("3"), L("3")}}, p1).ok);
    CHECK(gkm_ktheory_check({{L("1"), L("x1")}}, p1).ok);
    const auto bad = gkm_ktheory_check({{L("1"), L("2")}}, p1);
    CHECK_FALSE(bad.ok);
    CHECK(bad.violated == std::vector<std::size_t>{0});
    CHECK_THROWS_AS(gkm_ktheory_check({{L("1")}}, p1), StructuralError);
}

TEST_CASE("localize_bundle_K") {
    const auto p1 = MomentGraph::projective_line();
    const EquivariantBundleData trivial{1, {{{0}, {0}}, {{0}, {0}}}};
    const auto t = localize_bundle_K(trivial);
    CHECK(t.values[0].str() == "2");
    CHECK(t.values[1].str() == "2");
    const EquivariantBundleData o1{1, {{{0}}, {{1}}}};
    const auto c = localize_bundle_K(o1);
    CHECK(c.values[1].str() == "x1");
    CHECK(gkm_ktheory_check(c, p1).ok);
    const auto tangent = localize_bundle_K(p1_tangent());
    CHECK(tangent.values[0].str() == "x1");
    CHECK(tangent.values[1].str() == "x1^-1");
    CHECK(gkm_ktheory_check(tangent, p1).ok);
    // label 3 does not divide the difference x - x^-1
    const MomentGraph p1_triple(1, {"0", "inf"}, {{0, 1, {3}}});
    CHECK_FALSE(gkm_ktheory_check(tangent, p1_triple).ok);
    CHECK_FALSE(bundle_consistency(p1_tangent(), p1_triple).ok);
    // additivity
    const auto sum = localize_bundle_K(o1 + p1_tangent());
    CHECK(sum.values == (c + tangent).values);
}

TEST_CASE("standard bundles are consistent and pass both GKM checks") {
    struct Case {
        MomentGraph g;
        EquivariantBundleData b;
    };
    std::vector<Case> cases{{MomentGraph::projective_line(), p1_tangent()},
                            {MomentGraph::projective_space(2), projective_line_bundle(2, 1)},
                            {MomentGraph::projective_space(3), projective_line_bundle(3, -2)},
                            {MomentGraph::flag_sl3(), flag_line_bundle(1)},
                            {MomentGraph::flag_sl3(), flag_line_bundle(2) + flag_line_bundle(3)},
                            {MomentGraph::grassmannian(2, 4), grassmannian_tautological(2, 4)}};
    for (const auto& c : cases) {
        CHECK(bundle_consistency(c.b, c.g).ok);
        CHECK(gkm_ktheory_check(localize_bundle_K(c.b), c.g).ok);
        for (std::size_t k = 0; k <= c.b.rank(); ++k)
            CHECK(gkm_cohomology_check(localize_chern(c.b, static_cast<int>(k)), c.g).ok);
    }
}

TEST_CASE("corrupted bundle data fails on the corrupted edge") {
    const auto g = MomentGraph::grassmannian(2, 4);
    auto b = grassmannian_tautological(2, 4);
    const int v = g.vertex_index("34");
    b.weights[static_cast<std::size_t>(v)][0] = {0, 0, 0, 0};
    const auto k = gkm_ktheory_check(localize_bundle_K(b), g);
    const auto consistency = bundle_consistency(b, g);
    CHECK_FALSE(k.ok);
    CHECK(k.violated == consistency.violated);
    for (auto e : k.violated) CHECK((g.edges()[e].from == v || g.edges()[e].to == v));
    CHECK(k.violated.size() == 4);
}

TEST_CASE("localize_chern examples") {
    const EquivariantBundleData b{2, {{{1, 0}, {0, 1}}, {{1, 0}, {-1, 0}}}};
    const auto c0 = localize_chern(b, 0);
    CHECK(c0.values[0].str() == "1");
    CHECK(localize_chern(b, 2).values[0].str() == "x1*x2");
    CHECK(localize_chern(b, 1).values[1].is_zero());
    CHECK_THROWS_AS(localize_chern(b, 3), std::out_of_range);
    CHECK_THROWS_AS(localize_chern(b, -1), std::out_of_range);
}

TEST_CASE("chern_character_check") {
    const EquivariantBundleData trivial{2, {{{0, 0}, {0, 0}, {0, 0}}}};
    CHECK(chern_character_check(trivial, 4));
    const EquivariantBundleData line{1, {{{3}}}};
    CHECK(chern_character_check(line, 3));
    std::mt19937 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const int r = 1 + trial % 3, rank = 1 + (trial / 3) % 3;
        const auto b = random_bundle(rng, r, rank, 2);
        CHECK(chern_character_check(b, 4));
        for (std::size_t v = 0; v < b.weights.size(); ++v) {
            std::vector<MultiPoly> e;
            for (int k = 0; k <= rank; ++k) e.push_back(localize_chern(b, k).values[v]);
            const auto p = power_sums_from_elementary(e, 4);
            const auto q = power_sums_by_series(e, 4);
            for (int m = 1; m <= 4; ++m) {
                // direct power sum of the linear forms
                MultiPoly direct(e[0].vars());
                for (const auto& w : b.weights[v]) direct += linear_form(e[0].vars(), w).pow(m);
                CHECK(p[static_cast<std::size_t>(m)] == direct);
                CHECK(q[static_cast<std::size_t>(m)] == direct);
            }
        }
    }
}

TEST_CASE("weyl_transport_check") {
    const auto p1 = MomentGraph::projective_line();
    const VarList x = p1.variables();
    const CohomologyClass c{{MultiPoly(x), MultiPoly::variable(x, 0)}};
    IntMatrix id = IntMatrix::Identity(1, 1);
    CHECK(weyl_transport_check(c, p1, {0, 1}, id));
    IntMatrix neg = -IntMatrix::Identity(1, 1);
    CHECK(weyl_transport_check(c, p1, {1, 0}, neg));
    const auto moved = weyl_transport(c, p1, {1, 0}, neg);
    CHECK(moved.values[0].str() == "-x1");

    const auto flag = MomentGraph::flag_sl3();
    const auto c1 = localize_chern(flag_line_bundle(1), 1);
    // simple reflection (1 2): w -> (1 2) w on vertices, swap x1, x2 on t
    std::vector<int> perm;
    for (const auto& label : flag.vertices()) {
        std::string t = label;
        for (auto& ch : t) ch = ch == '1' ? '2' : (ch == '2' ? '1' : ch);
        perm.push_back(flag.vertex_index(t));
    }
    IntMatrix s(3, 3);
    s << 0, 1, 0, 1, 0, 0, 0, 0, 1;
    CHECK(weyl_transport_check(c1, flag, perm, s));
    // a vertex permutation that breaks the edge structure
    std::vector<int> bad{1, 0, 2, 3, 4, 5};
    CHECK_THROWS_AS(weyl_transport_check(c1, flag, bad, s), StructuralError);
    CHECK_THROWS_AS(weyl_transport_check(c1, flag, perm, IntMatrix::Identity(3, 3)), StructuralError);
}
