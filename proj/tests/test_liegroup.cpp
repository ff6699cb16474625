#include "doctest.h"

#include <random>

#include "eqz/liegroup.hpp"

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

RationalMatrix zero(Eigen::Index n) { return RationalMatrix::Constant(n, n, Rational(0)); }

// Oracle: determinant as a sum over permutations.
MultiPoly leibniz_det(const PolyMatrix& m) {
    std::vector<int> perm(static_cast<std::size_t>(m.size()));
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    MultiPoly det(m.vars());
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < perm.size(); ++i)
            for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
        MultiPoly term = MultiPoly::constant(m.vars(), inversions % 2 ? -1 : 1);
        for (std::size_t i = 0; i < perm.size(); ++i) term = term * m(static_cast<Eigen::Index>(i), perm[i]);
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

// Oracle: char poly coefficients from det(lambda - M) with lambda a new variable.
std::vector<MultiPoly> char_poly_by_det(const PolyMatrix& m) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < m.vars().size(); ++i) names.push_back(m.vars()[i]);
    names.push_back("lambda_");
    const VarList ext(names);
    PolyMatrix shifted(ext, m.size());
    for (Eigen::Index i = 0; i < m.size(); ++i)
        for (Eigen::Index j = 0; j < m.size(); ++j) {
            shifted(i, j) = -m(i, j).embed(ext);
            if (i == j) shifted(i, j) += MultiPoly::variable(ext, "lambda_");
        }
    const MultiPoly det = leibniz_det(shifted);
    std::vector<MultiPoly> out;
    const std::size_t lam = names.size() - 1;
    for (Eigen::Index k = 1; k <= m.size(); ++k) {
        MultiPoly c(m.vars());
        for (const auto& [e, coef] : det.terms())
            if (e[lam] == m.size() - k) c.add_term(Exponent(e.begin(), e.end() - 1), coef);
        out.push_back(c);
    }
    return out;
}

}  // namespace

TEST_CASE("bracket examples") {
    const auto p = principal_pair_gl(2);
    CHECK(bracket(p.e, *p.f) == p.h);
    CHECK(bracket(p.h, p.e) == RationalMatrix(p.e * Rational(2)));
    const auto x = mat({{1, 2}, {3, 4}});
    CHECK(bracket(x, x) == zero(2));
    CHECK_THROWS_AS(bracket(zero(2), zero(3)), StructuralError);
}

TEST_CASE("principal_pair_gl") {
    const auto p2 = principal_pair_gl(2);
    CHECK(p2.e == mat({{0, 1}, {0, 0}}));
    CHECK(p2.h == mat({{1, 0}, {0, -1}}));
    const auto p3 = principal_pair_gl(3);
    CHECK(p3.h == mat({{2, 0, 0}, {0, 0, 0}, {0, 0, -2}}));
    const auto p1 = principal_pair_gl(1);
    CHECK(p1.e == zero(1));
    CHECK(p1.h == zero(1));
    CHECK_THROWS_AS(principal_pair_gl(0), std::domain_error);
    CHECK(subgroup_of(p3).exponents == std::vector<int>{2, 0, -2});
    for (int n = 1; n <= 6; ++n) {
        const auto p = principal_pair_gl(n);
        CHECK(p.relations_hold());
        // e is regular
        CHECK(centralizer_dim(p.e) == n);
    }
}

TEST_CASE("centralizer basis solves the bracket equation") {
    const auto x = mat({{1, 1, 0}, {0, 1, 0}, {0, 0, 2}});
    const auto basis = centralizer_basis(x);
    CHECK(static_cast<Eigen::Index>(basis.size()) == centralizer_dim(x));
    CHECK(basis.size() == 3);
    for (const auto& b : basis) CHECK(bracket(x, b) == zero(3));
}

TEST_CASE("kostant section examples") {
    SUBCASE("solvable, the three-point example") {
        const auto e = mat({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}});
        const auto s = kostant_section_solvable(e, {mat({{1, 0, 0}, {0, 0, 0}, {0, 0, -1}})},
                                                OneParamSubgroup{{2, 0, -2}}, {"v"});
        const auto m = s.generic_element();
        CHECK(m.entry_strings() == std::vector<std::vector<std::string>>{
                                       {"v", "1", "0"}, {"0", "0", "0"}, {"0", "0", "-v"}});
        CHECK(s.grading.weights == std::vector<int>{2});
        const auto c = char_poly_on_section(s);
        REQUIRE(c.size() == 3);
        CHECK(c[0].is_zero());
        CHECK(c[1].str() == "-v^2");
        CHECK(c[2].is_zero());
    }
    SUBCASE("reductive sl2") {
        const auto s = kostant_section_reductive(2, true);
        REQUIRE(s.rank() == 1);
        const auto m = s.generic_element();
        const std::string p = s.parameters[0];
        CHECK(m.entry_strings() == std::vector<std::vector<std::string>>{{"0", "1"}, {p, "0"}});
        CHECK(s.grading.weights == std::vector<int>{4});
        const auto c = char_poly_on_section(s);
        CHECK(c[0].is_zero());
        CHECK(c[1] == -MultiPoly::variable(s.parameters, 0));
    }
    SUBCASE("torus") {
        const auto s = kostant_section_solvable(zero(2), {mat({{1, 0}, {0, 0}}), mat({{0, 0}, {0, 1}})},
                                                OneParamSubgroup{{0, 0}}, {"x", "y"});
        CHECK(s.generic_element().entry_strings() ==
              std::vector<std::vector<std::string>>{{"x", "0"}, {"0", "y"}});
        CHECK(s.grading.weights == std::vector<int>{2, 2});
    }
    SUBCASE("structural errors") {
        const auto e = mat({{0, 1}, {0, 0}});
        // a direction that is not an eigenvector of the action
        CHECK_THROWS_AS(kostant_section_solvable(e, {mat({{1, 1}, {0, 0}})}, OneParamSubgroup{{1, -1}}, {"v"}),
                        StructuralError);
        // H does not fix e
        CHECK_THROWS_AS(kostant_section_solvable(e, {mat({{1, 0}, {0, -1}})}, OneParamSubgroup{{0, 0}}, {"v"}),
                        StructuralError);
        CHECK_THROWS_AS(kostant_section_solvable(e, {mat({{1, 0}, {0, 0}}), mat({{2, 0}, {0, 0}})},
                                                 OneParamSubgroup{{1, -1}}, {"a", "b"}),
                        StructuralError);
        CHECK_THROWS_AS(kostant_section_solvable(e, {mat({{1, 0}, {0, 0}})}, OneParamSubgroup{{1, -1}}, {}),
                        StructuralError);
    }
}

TEST_CASE("reductive sections: weights, centralizer and invariants") {
    for (int n = 1; n <= 4; ++n) {
        for (bool traceless : {false, true}) {
            if (traceless && n == 1) continue;
            CAPTURE(n);
            CAPTURE(traceless);
            const auto s = kostant_section_reductive(n, traceless);
            const auto pair = principal_pair_gl(n);
            CHECK(s.rank() == static_cast<std::size_t>(traceless ? n - 1 : n));
            for (const auto& d : s.directions) {
                CHECK(bracket(*pair.f, d) == zero(n));
                if (traceless) CHECK(d.trace().is_zero());
            }
            std::vector<int> expected;
            for (int k = traceless ? 1 : 0; k < n; ++k) expected.push_back(2 * k + 2);
            CHECK(s.grading.weights == expected);
            CHECK(cstar_act(s, s.subgroup) == s.grading.weights);
            for (int w : s.grading.weights) CHECK((w > 0 && w % 2 == 0));

            const auto m = s.generic_element();
            const auto c = char_poly_on_section(s);
            CHECK(c == char_poly_by_det(m));
            if (!traceless) {
                const auto j = jacobian_determinant(c);
                CHECK(j.is_constant());
                CHECK_FALSE(j.is_zero());
            } else {
                // c_1 vanishes; the rest are coordinates
                CHECK(c[0].is_zero());
                const auto j = jacobian_determinant(std::vector<MultiPoly>(c.begin() + 1, c.end()));
                CHECK(j.is_constant());
                CHECK_FALSE(j.is_zero());
            }
        }
    }
}

TEST_CASE("determinant agrees with the permutation expansion") {
    std::mt19937 rng(23);
    const VarList xy{"x", "y"};
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = 1 + trial % 4;
        PolyMatrix m(xy, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                m(i, j) = MultiPoly::constant(xy, coef(rng)) + MultiPoly::variable(xy, 0) * Rational(coef(rng)) +
                          MultiPoly::variable(xy, 1) * Rational(coef(rng));
        CHECK(determinant(m) == leibniz_det(m));
        CHECK(char_poly_coefficients(m) == char_poly_by_det(m));
    }
}
