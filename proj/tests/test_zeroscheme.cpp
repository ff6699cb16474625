#include "doctest.h"

#include "eqz/gkm.hpp"
#include "eqz/zeroscheme.hpp"
#include "oracles.hpp"

using namespace eqz;

namespace {

RationalMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    RationalMatrix m(n, static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (long x : r) m(i, j++) = Rational(x);
        ++i;
    }
    return m;
}

// P^2 with named charts and the family [[v,1,0],[0,0,0],[0,0,-v]].
ZeroSchemeModel exthick(CechOptions opt = {}) {
    const ChartedSpace p2({"x0", "x1", "x2"}, {}, {{"a", "b"}, {"a1", "b1"}, {"c", "d"}});
    const auto s = kostant_section_solvable(mat({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}), {mat({{1, 0, 0}, {0, 0, 0}, {0, 0, -1}})},
                                            OneParamSubgroup{{2, 0, -2}}, {"v"});
    return build_zero_scheme(s, ChartedAction(p2, ChartedAction::Representation::Standard, 3), opt);
}

// Rank-one torus diag(w, 0) on P^1.
ZeroSchemeModel torus_p1() {
    const ChartedSpace p1({"x0", "x1"}, {}, {{"a"}, {"b"}});
    const auto s = kostant_section_solvable(mat({{0, 0}, {0, 0}}), {mat({{1, 0}, {0, 0}})}, OneParamSubgroup{{0, 0}}, {"w"});
    return build_zero_scheme(s, ChartedAction(p1, ChartedAction::Representation::Standard, 2));
}

std::vector<MultiPoly> polys(const VarList& vars, std::initializer_list<const char*> texts) {
    std::vector<MultiPoly> r;
    for (auto t : texts) r.push_back(MultiPoly::parse(t, vars));
    return r;
}

}  // namespace

TEST_CASE("charted spaces") {
    const auto p2 = ChartedSpace::projective(2);
    CHECK(p2.dimension() == 2);
    CHECK(p2.chart_vars(1)[0] == "x0_1");
    CHECK(p2.transitions_consistent(3));
    const auto gr = ChartedSpace::grassmannian_2_4();
    CHECK(gr.chart_count() == 6);
    CHECK(gr.transitions_consistent(2));

    const VarList ring{"x0_1", "x2_1"};
    const MultiPoly f = MultiPoly::parse("x0*x1 + x2^2", p2.homogeneous_vars());
    const MultiPoly g = p2.dehomogenize(f, 1, ring);
    CHECK(g == MultiPoly::parse("x0_1 + x2_1^2", ring));
    CHECK(p2.homogenize(g, 1, p2.homogeneous_vars()) == f);

    CHECK_THROWS_AS(ChartedSpace({"x0", "x1"}, {MultiPoly::parse("x0 + x1^2", VarList{"x0", "x1"})}), StructuralError);
    CHECK_THROWS_AS(ChartedSpace({"x0", "x1"}, {}, {{"a"}}), StructuralError);
}

TEST_CASE("wedge square representation") {
    const ChartedAction act(ChartedSpace::grassmannian_2_4(), ChartedAction::Representation::Wedge2, 4);
    RationalMatrix e12 = RationalMatrix::Constant(4, 4, Rational(0));
    e12(0, 1) = Rational(1);
    const RationalMatrix r = act.rho(e12);
    // E12 sends e2^e3 to e1^e3 and e2^e4 to e1^e4
    CHECK(r(1, 3) == Rational(1));
    CHECK(r(2, 4) == Rational(1));
    long nonzero = 0;
    for (Eigen::Index i = 0; i < 6; ++i)
        for (Eigen::Index j = 0; j < 6; ++j) nonzero += !r(i, j).is_zero();
    CHECK(nonzero == 2);

    // rho is a Lie algebra map on random-ish integer matrices
    const RationalMatrix a = mat({{1, 2, 0, -1}, {0, 3, 1, 0}, {2, 0, 0, 1}, {1, 1, -2, 0}});
    const RationalMatrix b = mat({{0, 1, 1, 0}, {-1, 0, 2, 3}, {0, 1, 0, 0}, {2, 0, 1, -1}});
    const RationalMatrix lhs = act.rho(RationalMatrix(a * b - b * a));
    const RationalMatrix ra = act.rho(a), rb = act.rho(b);
    CHECK(lhs == RationalMatrix(ra * rb - rb * ra));

    CHECK(act.coordinate_weights(OneParamSubgroup{{1, 0, 0, -1}}) == std::vector<int>{-1, -1, 0, 0, 1, 1});
    CHECK_THROWS_AS(ChartedAction(ChartedSpace::projective(3), ChartedAction::Representation::Wedge2, 4), StructuralError);
}

TEST_CASE("vector field on charts") {
    const ChartedAction act(ChartedSpace::projective(2), ChartedAction::Representation::Standard, 3);
    const VarList none{};
    PolyMatrix e12(none, 3);
    e12(0, 1) = MultiPoly::constant(none, 1);
    const auto f = vector_field_chart(e12, act, 0);
    const VarList ring{"x1_0", "x2_0"};
    CHECK(f == polys(ring, {"-x1_0^2", "-x1_0*x2_0"}));

    const VarList v{"v"};
    PolyMatrix dv(v, 3);
    dv(0, 0) = MultiPoly::variable(v, 0);
    dv(2, 2) = -MultiPoly::variable(v, 0);
    const VarList ring_v{"v", "x1_0", "x2_0"};
    CHECK(vector_field_chart(dv, act, 0) == polys(ring_v, {"-v*x1_0", "-2*v*x2_0"}));

    // scalars act trivially on projective space
    const PolyMatrix scalar = PolyMatrix::identity(none, 3);
    for (std::size_t c = 0; c < 3; ++c)
        for (const auto& g : vector_field_chart(scalar, act, c)) CHECK(g.is_zero());
    CHECK_THROWS_AS(vector_field_chart(scalar, act, 3), std::out_of_range);
}

TEST_CASE("fixed locus") {
    const auto p1 = ChartedSpace::projective(1);
    const VarList none{};
    PolyMatrix g = PolyMatrix::identity(none, 2);
    g(1, 1) = MultiPoly::constant(none, 2);
    CHECK(fixed_locus_ideal(g, p1, 0) == polys(VarList{"x1_0"}, {"x1_0"}));
    CHECK(fixed_locus_ideal(PolyMatrix::identity(none, 2), p1, 1).empty());
    PolyMatrix swap(none, 2);
    swap(0, 1) = MultiPoly::constant(none, 1);
    swap(1, 0) = MultiPoly::constant(none, 1);
    CHECK(fixed_locus_ideal(swap, p1, 0) == polys(VarList{"x1_0"}, {"1 - x1_0^2"}));
}

TEST_CASE("exthick chart ideals") {
    const auto z = exthick();
    CHECK(z.coordinate_weights() == std::vector<int>{-2, 0, 2});
    CHECK(z.section().grading.weights == std::vector<int>{2});
    const auto& u0 = z.chart(0);
    CHECK(u0.grading.weights == std::vector<int>{2, 2, 4});
    CHECK(same_ideal(u0.generators, polys(u0.vars, {"a^2 + v*a", "a*b + 2*v*b"})));
    const auto& u2 = z.chart(2);
    CHECK(u2.grading.weights == std::vector<int>{2, -4, -2});
    CHECK(same_ideal(u2.generators, polys(u2.vars, {"d + 2*v*c", "v*d"})));
    const auto& u1 = z.chart(1);
    CHECK(same_ideal(u1.generators, polys(u1.vars, {"v*a1 + 1", "b1"})));

    // away from b = 0 only the thickened point at v = 0 survives
    const auto sat = saturate(u0.generators, MultiPoly::variable(u0.vars, "b"));
    CHECK(sat == buchberger(polys(u0.vars, {"v^2", "a + 2*v"}), MonomialOrder::grevlex(), u0.vars));
    CHECK(charts_compatible(z));
}

TEST_CASE("exthick global functions match the quotient ring") {
    const auto z = exthick();
    const VarList va{"v", "a"};
    for (long d = 0; d <= 20; ++d) {
        CAPTURE(d);
        CHECK(global_sections_dim(z, d) == oracle::quotient_dim(va, {"a*(a + v)*(a + 2*v)"}, {2, 2}, d));
    }
    for (long d : {0L, 2L, 4L, 6L}) {
        const auto h1 = cech_cohomology(z, 1, d);
        CHECK(h1.dim == 0);
        CHECK(h1.stable);
        CHECK(cech_cohomology_dim(z, 2, d) == 0);
    }
    CHECK(global_sections_dim(z, -2) == 0);
    for (long d : {2L, 4L}) {
        // the line over [0:0:1] is invisible from the first chart
        const long r0 = restriction_rank(z, 0, d), r2 = restriction_rank(z, 2, d);
        CHECK(r0 <= global_sections_dim(z, d));
        CHECK(r0 + r2 >= global_sections_dim(z, d));
    }
    CHECK(restriction_rank(z, 0, 4) < global_sections_dim(z, 4));

    const auto report = poincare_series_report(z, 12);
    REQUIRE(report.numerator);
    CHECK(*report.numerator == std::vector<long>{1, 0, 1, 0, 1});
    CHECK(report.denominator_exponent == 1);
    CHECK(report.closed_form == "(1 + t^2 + t^4)/(1 - t^2)");
}

TEST_CASE("fixed denominator power agrees with stabilization") {
    CechOptions opt;
    opt.power = 3;
    const auto z = exthick(opt);
    for (long d : {0L, 2L, 4L}) {
        const auto h = cech_cohomology(z, 0, d);
        CHECK(h.power == 3);
        CHECK(h.lifted_power == 7);
        CHECK(h.dim == global_sections_dim(exthick(), d));
    }
}

TEST_CASE("truncation bound is enforced") {
    CechOptions opt;
    opt.degree_bound = 6;
    const auto z = exthick(opt);
    CHECK(global_sections_dim(z, 6) == 3);
    CHECK_THROWS_AS(global_sections_dim(z, 7), TruncationRefused);
    CHECK_THROWS_AS(cech_cohomology(z, 1, 8), TruncationRefused);
    CHECK_THROWS_AS(poincare_series_report(z, 10), TruncationRefused);
    CHECK(global_sections_dim(z.with_options({}), 8) == 3);
}

TEST_CASE("torus on the projective line") {
    const auto z = torus_p1();
    CHECK(same_ideal(z.chart(0).generators, polys(z.chart(0).vars, {"w*a"})));
    CHECK(same_ideal(z.chart(1).generators, polys(z.chart(1).vars, {"w*b"})));
    for (long d = 0; d <= 10; ++d) {
        const long expected = d == 0 ? 1 : (d % 2 ? 0 : 2);
        CHECK(global_sections_dim(z, d) == expected);
        CHECK(cech_cohomology_dim(z, 1, d) == 0);
    }
    CHECK(poincare_series_report(z, 12).closed_form == "(1 + t^2)/(1 - t^2)");
    // w times the indicator of the line over infinity dies on the first chart
    CHECK(restriction_rank(z, 0, 0) == 1);
    CHECK(restriction_rank(z, 0, 2) == 1);
    CHECK(restriction_rank(z, 1, 2) == 1);
}

TEST_CASE("double point and empty scheme") {
    // nilpotent E12 on P^1: the zero scheme is Spec Q[b]/b^2 with b of weight 2
    const ChartedSpace p1({"x0", "x1"}, {}, {{"b"}, {"a"}});
    const auto s = kostant_section_solvable(mat({{0, 1}, {0, 0}}), {}, OneParamSubgroup{{1, -1}}, {});
    const auto z = build_zero_scheme(s, ChartedAction(p1, ChartedAction::Representation::Standard, 2));
    CHECK(z.chart(1).basis.is_unit_ideal());
    for (long d = 0; d <= 6; ++d) {
        CHECK(global_sections_dim(z, d) == (d == 0 || d == 2 ? 1 : 0));
        CHECK(cech_cohomology_dim(z, 1, d) == 0);
    }
    CHECK(poincare_series_report(z, 8).closed_form == "1 + t^2");

    const VarList xy{"x0", "x1"};
    const ChartedSpace empty({"x0", "x1"}, polys(xy, {"x0", "x1"}));
    const auto s0 = kostant_section_solvable(mat({{0, 0}, {0, 0}}), {}, OneParamSubgroup{{0, 0}}, {});
    const auto ze = build_zero_scheme(s0, ChartedAction(empty, ChartedAction::Representation::Standard, 2));
    for (long d = 0; d <= 4; ++d) {
        CHECK(global_sections_dim(ze, d) == 0);
        CHECK(cech_cohomology_dim(ze, 1, d) == 0);
    }

    // the whole line (zero field, no parameters): H^0 = Q, H^1 = 0
    const auto zl = build_zero_scheme(s0, ChartedAction(ChartedSpace::projective(1), ChartedAction::Representation::Standard, 2));
    CHECK(global_sections_dim(zl, 0) == 1);
    CHECK(global_sections_dim(zl, 2) == 0);
    CHECK(cech_cohomology_dim(zl, 1, 0) == 0);
}

TEST_CASE("inhomogeneous data is rejected") {
    const ChartedSpace p1 = ChartedSpace::projective(1);
    // E12 with a trivial subgroup is not fixed by the C*-action
    CHECK_THROWS_AS(kostant_section_solvable(mat({{0, 1}, {0, 0}}), {}, OneParamSubgroup{{0, 0}}, {}), StructuralError);
    const auto s = kostant_section_solvable(mat({{0, 0}, {0, 0}}), {}, OneParamSubgroup{{0, 0}}, {});
    CHECK_THROWS_AS(build_zero_scheme(s, ChartedAction(ChartedSpace::projective(2), ChartedAction::Representation::Standard, 3)),
                    StructuralError);
}

TEST_CASE("closed form detection") {
    CHECK(detect_closed_form({1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1}).closed_form == "1/(1 - t^2)");
    const auto two = detect_closed_form({1, 0, 2, 0, 3, 0, 4, 0, 5, 0, 6, 0});
    CHECK(two.closed_form == "1/(1 - t^2)^2");
    CHECK(two.denominator_exponent == 2);
    const auto poly = detect_closed_form({1, 0, 2, 0, 0, 0, 0, 0});
    CHECK(poly.closed_form == "1 + 2*t^2");
    // too short to decide
    CHECK_FALSE(detect_closed_form({1, 0, 1}).numerator);
    CHECK_FALSE(detect_closed_form({1, 1, 2, 3, 5, 8, 13, 21, 34, 55}).numerator);
}

TEST_CASE("reduced curve configurations") {
    const VarList amb{"v", "x0", "x1", "x2"};
    const VarList u{"u"};
    auto line = [&](std::string name, int w, std::initializer_list<const char*> coords) {
        return CurveComponent{std::move(name), w, polys(u, coords), {}};
    };
    auto pt = [](std::initializer_list<long> xs) {
        std::vector<Rational> p;
        for (long x : xs) p.emplace_back(x);
        return p;
    };

    SUBCASE("single line") {
        ComponentCurveSet c{amb, {line("L", 2, {"u", "1", "0", "0"})}, {}};
        for (long d = 0; d <= 8; ++d) CHECK(reduced_ring_dims(c, d) == (d % 2 ? 0 : 1));
    }
    SUBCASE("two lines through one point") {
        ComponentCurveSet c{amb,
                            {line("L1", 1, {"u", "1", "0", "0"}), line("L2", 1, {"u", "1", "u", "0"})},
                            {Incidence{0, 1, Rational(0), Rational(0), pt({0, 1, 0, 0})}}};
        CHECK(reduced_ring_dims(c, 0) == 1);
        CHECK(reduced_ring_dims(c, 1) == 2);
        CHECK(reduced_ring_dims(c, 2) == 2);
    }
    SUBCASE("two weight-two lines through one point") {
        ComponentCurveSet c{amb,
                            {line("L1", 2, {"u", "1", "0", "0"}), line("L2", 2, {"u", "1", "u", "0"})},
                            {Incidence{0, 1, Rational(0), Rational(0), pt({0, 1, 0, 0})}}};
        CHECK(reduced_ring_dims(c, 0) == 1);
        CHECK(reduced_ring_dims(c, 1) == 0);
        CHECK(reduced_ring_dims(c, 2) == 2);
        CHECK(reduced_ring_dims(c, 4) == 2);
    }
    SUBCASE("lines meeting away from the origin") {
        ComponentCurveSet c{amb,
                            {line("L1", 1, {"u", "1", "0", "0"}), line("L2", 1, {"u", "1", "0", "u - 1"})},
                            {Incidence{0, 1, Rational(1), Rational(1), pt({1, 1, 0, 0})}}};
        for (long d = 0; d <= 4; ++d) CHECK(reduced_ring_dims(c, d) == 1);
    }
    SUBCASE("exthick reduction differs from the scheme") {
        CurveComponent proper{"P", 0, {}, polys(amb, {"v", "x1"})};
        ComponentCurveSet c{amb,
                            {proper, line("A", 2, {"u", "1", "0", "0"}), line("B", 2, {"u", "1", "-u", "0"}),
                             line("C", 2, {"u", "0", "0", "1"})},
                            {Incidence{0, 1, Rational(0), Rational(0), pt({0, 1, 0, 0})},
                             Incidence{0, 2, Rational(0), Rational(0), pt({0, 1, 0, 0})},
                             Incidence{0, 3, Rational(0), Rational(0), pt({0, 0, 0, 1})}}};
        const std::vector<long> reduced{1, 0, 3, 0, 3, 0, 3};
        const auto z = exthick();
        for (long d = 0; d <= 6; ++d) CHECK(reduced_ring_dims(c, d) == reduced[static_cast<std::size_t>(d)]);
        CHECK(global_sections_dim(z, 2) == 2);
        CHECK(global_sections_dim(z, 4) == 3);
    }
    SUBCASE("bad incidence") {
        ComponentCurveSet c{amb, {line("L", 1, {"u", "1", "0", "0"}), line("M", 1, {"u", "0", "1", "0"})},
                            {Incidence{0, 1, Rational(0), Rational(0), pt({0, 1, 0, 0})}}};
        CHECK_THROWS_AS(c.validate(), StructuralError);
        CHECK_THROWS_AS(reduced_ring_dims(c, 0), StructuralError);
    }
}

TEST_CASE("torus on Gr(2,4): global functions are equivariant cohomology") {
    std::vector<RationalMatrix> dirs;
    for (int k = 0; k < 3; ++k) {
        RationalMatrix m = RationalMatrix::Constant(4, 4, Rational(0));
        m(k, k) = Rational(1);
        m(3, 3) = Rational(-1);
        dirs.push_back(m);
    }
    const auto s = kostant_section_solvable(RationalMatrix::Constant(4, 4, Rational(0)), dirs,
                                            OneParamSubgroup{{0, 0, 0, 0}}, {"s1", "s2", "s3"});
    const auto z = build_zero_scheme(
        s, ChartedAction(ChartedSpace::grassmannian_2_4(), ChartedAction::Representation::Wedge2, 4));
    CHECK(charts_compatible(z));
    // Betti numbers 1,1,2,1,1 over a rank-3 polynomial ring
    const auto series = formality_series({1, 0, 1, 0, 2, 0, 1, 0, 1}, 3);
    const auto expected = expand_series(series, 6);
    for (long d = 0; d <= 6; ++d)
        CHECK(global_sections_dim(z, d) == expected[static_cast<std::size_t>(d)].to_long());
    CHECK(cech_cohomology_dim(z, 1, 2) == 0);
}
