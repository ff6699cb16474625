#include "doctest.h"

#include <random>

#include "eqz/groebner.hpp"
#include "eqz/linalg.hpp"

using namespace eqz;

namespace {

MultiPoly P(const char* s, const VarList& v) { return MultiPoly::parse(s, v); }

std::vector<MultiPoly> Ps(std::initializer_list<const char*> ss, const VarList& v) {
    std::vector<MultiPoly> r;
    for (auto s : ss) r.push_back(P(s, v));
    return r;
}

// Straight-line Buchberger without criteria, written against the public
// polynomial API only; lex order via leading term search.
struct NaiveGB {
    std::vector<MultiPoly> g;

    static Exponent lead(const MultiPoly& p) {
        Exponent best;
        for (const auto& [e, c] : p.terms())
            if (best.empty() || e > best) best = e;
        return best;
    }
    static bool divides(const Exponent& a, const Exponent& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] > b[i]) return false;
        return true;
    }
    MultiPoly reduce(MultiPoly p) const {
        MultiPoly r(p.vars());
        while (!p.is_zero()) {
            const Exponent lp = lead(p);
            const Rational cp = p.coefficient(lp);
            bool done = false;
            for (const auto& q : g) {
                const Exponent lq = lead(q);
                if (!divides(lq, lp)) continue;
                Exponent s(lp.size());
                for (std::size_t i = 0; i < s.size(); ++i) s[i] = lp[i] - lq[i];
                p -= MultiPoly::monomial(p.vars(), s, cp / q.coefficient(lq)) * q;
                done = true;
                break;
            }
            if (!done) {
                r += MultiPoly::monomial(p.vars(), lp, cp);
                p -= MultiPoly::monomial(p.vars(), lp, cp);
            }
        }
        return r;
    }
    explicit NaiveGB(std::vector<MultiPoly> gens) {
        for (auto& x : gens)
            if (!x.is_zero()) g.push_back(x);
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::size_t i = 0; i < g.size() && !grew; ++i)
                for (std::size_t j = i + 1; j < g.size() && !grew; ++j) {
                    const Exponent a = lead(g[i]), b = lead(g[j]);
                    Exponent m(a.size()), sa(a.size()), sb(a.size());
                    for (std::size_t k = 0; k < m.size(); ++k) {
                        m[k] = std::max(a[k], b[k]);
                        sa[k] = m[k] - a[k];
                        sb[k] = m[k] - b[k];
                    }
                    auto s = MultiPoly::monomial(g[i].vars(), sa, g[i].coefficient(a).inverse()) * g[i] -
                             MultiPoly::monomial(g[j].vars(), sb, g[j].coefficient(b).inverse()) * g[j];
                    auto h = reduce(s);
                    if (!h.is_zero()) {
                        g.push_back(h);
                        grew = true;
                    }
                }
        }
    }
};

// Cofactor search for homogeneous p: p = sum h_i g_i with deg h_i = deg p - deg g_i.
bool member_by_cofactors(const MultiPoly& p, const std::vector<MultiPoly>& gens) {
    const VarList& vars = p.vars();
    const int d = p.degree();
    std::vector<int> ones(vars.size(), 1);
    std::map<Exponent, int> rows;
    auto row_of = [&](const Exponent& e) {
        auto it = rows.find(e);
        if (it == rows.end()) it = rows.emplace(e, static_cast<int>(rows.size())).first;
        return it->second;
    };
    std::vector<std::tuple<int, int, Rational>> entries;
    int col = 0;
    for (const auto& g : gens) {
        const int k = d - g.degree();
        if (k < 0) continue;
        for (const auto& m : monomials_of_weighted_degree(ones, k)) {
            for (const auto& [e, c] : g.terms()) {
                Exponent s(e);
                for (std::size_t i = 0; i < s.size(); ++i) s[i] += m[i];
                entries.emplace_back(row_of(s), col, c);
            }
            ++col;
        }
    }
    for (const auto& [e, c] : p.terms()) row_of(e);
    RationalMatrix a = RationalMatrix::Constant(static_cast<Eigen::Index>(rows.size()), col + 1, Rational(0));
    for (const auto& [r, c, v] : entries) a(r, c) += v;
    for (const auto& [e, c] : p.terms()) a(rows.at(e), col) = c;
    return exact_rank(a.leftCols(col)) == exact_rank(a);
}

MultiPoly random_homogeneous(std::mt19937& rng, const VarList& vars, int deg, int terms) {
    std::vector<int> ones(vars.size(), 1);
    auto mons = monomials_of_weighted_degree(ones, deg);
    MultiPoly p(vars);
    for (int t = 0; t < terms; ++t)
        p.add_term(mons[rng() % mons.size()], Rational(static_cast<int>(rng() % 7) - 3));
    return p;
}

}  // namespace

TEST_CASE("buchberger examples") {
    VarList xy{"x", "y"};
    auto gb = buchberger(Ps({"x^2", "x*y"}, xy), MonomialOrder::grevlex());
    CHECK(gb.strings() == std::vector<std::string>{"x*y", "x^2"});
    CHECK(satisfies_s_pair_criterion(gb));

    VarList x{"x"};
    CHECK(buchberger(Ps({"x - 1"}, x), MonomialOrder::grevlex()).strings() == std::vector<std::string>{"x - 1"});

    CHECK(buchberger(std::vector<MultiPoly>{}, MonomialOrder::grevlex(), xy).is_zero_ideal());
    CHECK_THROWS_AS(buchberger({P("x", xy), P("x", x)}, MonomialOrder::grevlex()), StructuralError);
}

TEST_CASE("chart ideal basis contains v*a*b") {
    VarList vab{"v", "a", "b"};
    const auto gens = Ps({"a^2 + v*a", "a*b + 2*v*b"}, vab);
    const auto vab_poly = P("v*a*b", vab);
    // explicit certificate: vab = a*(ab + 2vb) - b*(a^2 + va)
    CHECK(P("a", vab) * gens[1] - P("b", vab) * gens[0] == vab_poly);

    for (const auto& order : {MonomialOrder::grevlex(), MonomialOrder::lex(), MonomialOrder::grlex(),
                              MonomialOrder::weighted_grevlex({{2, 2, 4}})}) {
        auto gb = buchberger(gens, order);
        CHECK(satisfies_s_pair_criterion(gb));
        CHECK(is_autoreduced(gb));
        CHECK(gb.contains(vab_poly));
        // the naive closure generates the same ideal
        NaiveGB naive(gens);
        for (const auto& g : naive.g) CHECK(gb.contains(g));
        for (const auto& g : gb.generators()) CHECK(naive.reduce(g).is_zero());
    }
}

TEST_CASE("normal_form examples") {
    VarList av{"a", "v"};
    auto gb = buchberger(Ps({"a*(a+v)*(a+2*v)"}, av), MonomialOrder::grevlex());
    CHECK(normal_form(P("a^3 + 3*a^2*v + 2*a*v^2", av), gb).is_zero());
    CHECK(normal_form(gb.generators()[0], gb).is_zero());
    VarList x{"x"};
    auto g1 = buchberger(Ps({"x - 1"}, x), MonomialOrder::grevlex());
    CHECK(normal_form(P("1", x), g1) == P("1", x));
    CHECK(normal_form(P("x^5 + 2", x), g1) == P("3", x));
}

TEST_CASE("normal_form is idempotent and the remainder is standard") {
    std::mt19937 rng(23);
    VarList xyz{"x", "y", "z"};
    for (int i = 0; i < 25; ++i) {
        std::vector<MultiPoly> gens;
        for (int k = 0; k < 3; ++k) gens.push_back(random_homogeneous(rng, xyz, 2, 3));
        auto gb = buchberger(gens, MonomialOrder::grevlex(), xyz);
        CHECK(satisfies_s_pair_criterion(gb));
        CHECK(is_autoreduced(gb));
        auto p = random_homogeneous(rng, xyz, 3, 5) + random_homogeneous(rng, xyz, 4, 3);
        auto r = normal_form(p, gb);
        CHECK(normal_form(r, gb) == r);
        for (const auto& [e, c] : r.terms()) CHECK(gb.is_standard(e));
        CHECK(gb.contains(p - r));
    }
}

TEST_CASE("ideal_membership examples") {
    VarList vab{"v", "a", "b"};
    CHECK(ideal_membership(P("v*a*b", vab), Ps({"a^2 + v*a", "a*b + 2*v*b"}, vab)));
    VarList x{"x"};
    CHECK_FALSE(ideal_membership(P("1", x), Ps({"x"}, x)));
    CHECK(ideal_membership(MultiPoly(x), Ps({"x"}, x)));
}

TEST_CASE("ideal_membership agrees with cofactor search") {
    std::mt19937 rng(29);
    VarList xyz{"x", "y", "z"};
    int members = 0;
    for (int i = 0; i < 40; ++i) {
        std::vector<MultiPoly> gens;
        const int ng = 1 + static_cast<int>(rng() % 3);
        for (int k = 0; k < ng; ++k) gens.push_back(random_homogeneous(rng, xyz, 1 + static_cast<int>(rng() % 3), 3));
        MultiPoly p(xyz);
        if (i % 2 == 0) {
            for (const auto& g : gens) {
                const int k = 3 - g.degree();
                if (k >= 0) p += random_homogeneous(rng, xyz, k, 2) * g;
            }
        } else {
            p = random_homogeneous(rng, xyz, 3, 3);
        }
        const bool expected = p.is_zero() || member_by_cofactors(p, gens);
        members += expected;
        CHECK(ideal_membership(p, gens) == expected);
    }
    CHECK(members >= 15);
}

TEST_CASE("saturate examples") {
    VarList vab{"v", "a", "b"};
    auto sat = saturate(Ps({"a^2 + v*a", "a*b + 2*v*b"}, vab), P("b", vab));
    CHECK(same_ideal(sat.generators(), Ps({"v^2", "a + 2*v"}, vab)));

    VarList xy{"x", "y"};
    CHECK(same_ideal(saturate(Ps({"x*y"}, xy), P("y", xy)).generators(), Ps({"x"}, xy)));
    auto unit = saturate(Ps({"x"}, xy), P("x", xy));
    CHECK(unit.is_unit_ideal());
    CHECK_THROWS_AS(saturate(Ps({"x"}, xy), MultiPoly(xy)), std::domain_error);

    // auxiliary naming does not leak into the result
    VarList clash{"_sat", "y"};
    CHECK(same_ideal(saturate(Ps({"_sat*y"}, clash), P("y", clash)).generators(), Ps({"_sat"}, clash)));
}

TEST_CASE("saturation is idempotent") {
    std::mt19937 rng(31);
    VarList xyz{"x", "y", "z"};
    for (int i = 0; i < 10; ++i) {
        std::vector<MultiPoly> gens{random_homogeneous(rng, xyz, 2, 3) * P("x", xyz),
                                    random_homogeneous(rng, xyz, 2, 2)};
        auto s1 = saturate(gens, P("x", xyz));
        auto s2 = saturate(s1.generators(), P("x", xyz));
        CHECK(s1.strings() == s2.strings());
    }
}

TEST_CASE("eliminate examples") {
    VarList xy{"x", "y"};
    CHECK(eliminate(Ps({"x - y^2"}, xy), {"x"}).is_zero_ideal());
    VarList txy{"t", "x", "y"};
    auto e = eliminate(Ps({"x - t", "y - t^2"}, txy), {"x", "y"});
    CHECK(e.vars() == VarList{"x", "y"});
    CHECK(e.strings() == std::vector<std::string>{"x^2 - y"});
}

TEST_CASE("hilbert_function examples") {
    VarList va{"v", "a"};
    GradedQuotient q(buchberger(Ps({"a*(a+v)*(a+2*v)"}, va), MonomialOrder::grevlex()), {{2, 2}});
    std::vector<long> got;
    for (long d : {0, 2, 4, 6, 8}) got.push_back(hilbert_function(q, d));
    CHECK(got == std::vector<long>{1, 2, 3, 3, 3});
    CHECK(hilbert_function(q, 3) == 0);

    VarList x{"x"};
    GradedQuotient free1(buchberger(std::vector<MultiPoly>{}, MonomialOrder::grevlex(), x), {{2}});
    for (long d = 0; d <= 10; d += 2) CHECK(hilbert_function(free1, d) == 1);

    VarList xy{"x", "y"};
    GradedQuotient field(buchberger(Ps({"x", "y"}, xy), MonomialOrder::grevlex()), {{2, 2}});
    CHECK(hilbert_function(field, 0) == 1);
    for (long d = 1; d <= 8; ++d) CHECK(hilbert_function(field, d) == 0);

    CHECK_THROWS_AS(GradedQuotient(buchberger(Ps({"v + a^2"}, va), MonomialOrder::grevlex()), {{2, 2}}),
                    StructuralError);
}

TEST_CASE("hilbert function of a principal quotient is a shifted difference") {
    std::mt19937 rng(37);
    VarList xyz{"x", "y", "z"};
    WeightedGrading w{{2, 4, 6}};
    auto free = GradedQuotient(buchberger(std::vector<MultiPoly>{}, MonomialOrder::grevlex(), xyz), w);
    for (int i = 0; i < 8; ++i) {
        const long k = 2 * (2 + static_cast<long>(rng() % 4));
        MultiPoly f(xyz);
        for (const auto& e : monomials_of_weighted_degree(w.weights, k))
            if (rng() % 2) f.add_term(e, Rational(1 + static_cast<int>(rng() % 5)));
        if (f.is_zero()) continue;
        GradedQuotient q(buchberger({f}, MonomialOrder::weighted_grevlex(w)), w);
        for (long d = 0; d <= 24; d += 2)
            CHECK(hilbert_function(q, d) ==
                  hilbert_function(free, d) - (d >= k ? hilbert_function(free, d - k) : 0));
    }
}

TEST_CASE("buchberger is deterministic") {
    VarList vab{"v", "a", "b"};
    const auto gens = Ps({"a^2 + v*a", "a*b + 2*v*b", "v^3 - a*b"}, vab);
    CHECK(buchberger(gens, MonomialOrder::grevlex()) == buchberger(gens, MonomialOrder::grevlex()));
    CHECK(buchberger(gens, MonomialOrder::grevlex()).strings() ==
          buchberger({gens[2], gens[0], gens[1]}, MonomialOrder::grevlex()).strings());
}
