#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance runner.

#include <map>
#include <random>

#include "eqz/gkm.hpp"
#include "eqz/groebner.hpp"
#include "eqz/weyl.hpp"

namespace eqz::oracle {

inline VarList xs(int r) {
    std::vector<std::string> n;
    for (int i = 1; i <= r; ++i) n.push_back("x" + std::to_string(i));
    return VarList(n);
}

// Solve f_from - f_to = <alpha,x> h_e with explicit quotient
// unknowns h_e.  The map (f, h) -> f is injective on solutions, so the
// solution space dimension is the answer.
inline long gkm_dim_with_quotients(const MomentGraph& g, int d) {
    if (d % 2) return 0;
    const int k = d / 2;
    const VarList vars = g.variables();
    const std::vector<int> ones(static_cast<std::size_t>(g.rank()), 1);
    const auto fb = monomials_of_weighted_degree(ones, k);
    const auto hb = k > 0 ? monomials_of_weighted_degree(ones, k - 1) : std::vector<Exponent>{};
    const int nf = static_cast<int>(fb.size()), nh = static_cast<int>(hb.size());
    const int s = static_cast<int>(g.vertex_count());
    const int total = s * nf + static_cast<int>(g.edges().size()) * nh;
    std::map<Exponent, int> fidx;
    for (int i = 0; i < nf; ++i) fidx[fb[static_cast<std::size_t>(i)]] = i;
    SparseEchelon<Rational> ech;
    for (std::size_t ei = 0; ei < g.edges().size(); ++ei) {
        const auto& e = g.edges()[ei];
        std::map<int, std::map<int, Rational>> rows;  // target monomial -> row
        for (int i = 0; i < nf; ++i) {
            rows[i][e.from * nf + i] += Rational(1);
            rows[i][e.to * nf + i] -= Rational(1);
        }
        const MultiPoly l = linear_form(vars, e.alpha);
        for (int j = 0; j < nh; ++j) {
            const MultiPoly prod = l * MultiPoly::monomial(vars, hb[static_cast<std::size_t>(j)]);
            for (const auto& [mono, c] : prod.terms())
                rows[fidx.at(mono)][s * nf + static_cast<int>(ei) * nh + j] -= c;
        }
        for (const auto& [t, row] : rows) {
            SparseVector<Rational> v;
            for (const auto& [col, x] : row)
                if (!x.is_zero()) v.emplace_back(col, x);
            if (!v.empty()) ech.insert(v);
        }
    }
    return total - static_cast<long>(ech.rank());
}

// Power sums from t E'(t) / E(t) by series division.
inline std::vector<MultiPoly> power_sums_by_series(const std::vector<MultiPoly>& e, int n) {
    const VarList& vars = e.front().vars();
    auto ek = [&](int k) { return static_cast<std::size_t>(k) < e.size() ? e[static_cast<std::size_t>(k)] : MultiPoly(vars); };
    std::vector<MultiPoly> q(static_cast<std::size_t>(n + 1), MultiPoly(vars));
    for (int m = 1; m <= n; ++m) {
        MultiPoly v = ek(m) * Rational(m);
        for (int k = 1; k <= m; ++k) v -= ek(k) * q[static_cast<std::size_t>(m - k)];
        q[static_cast<std::size_t>(m)] = v;
    }
    for (int m = 1; m <= n; ++m)
        if (m % 2 == 0) q[static_cast<std::size_t>(m)] = -q[static_cast<std::size_t>(m)];
    return q;
}

inline EquivariantBundleData random_bundle(std::mt19937& rng, int r, int rank, int vertices) {
    std::uniform_int_distribution<int> w(-3, 3);
    EquivariantBundleData b{r, {}};
    for (int v = 0; v < vertices; ++v) {
        std::vector<Weight> fiber;
        for (int i = 0; i < rank; ++i) {
            Weight x(static_cast<std::size_t>(r));
            for (auto& c : x) c = w(rng);
            fiber.push_back(x);
        }
        b.weights.push_back(fiber);
    }
    return b;
}

// Average trace of g on the degree-d monomial basis (character
// inner product with the trivial representation).
inline Rational trace_average(const FiniteActionGroup& g, int d) {
    const VarList vars = xs(g.rank());
    const auto basis = monomials_of_weighted_degree(std::vector<int>(static_cast<std::size_t>(g.rank()), 1), d);
    Rational sum(0);
    for (const auto& m : g.elements())
        for (const auto& e : basis) sum += act(m, MultiPoly::monomial(vars, e)).coefficient(e);
    return sum * Rational(1, static_cast<long>(g.order()));
}

// Hilbert function of a weighted quotient by a fresh Buchberger run.
inline long quotient_dim(const VarList& vars, const std::vector<std::string>& gens, std::vector<int> w, long d) {
    if (d < 0) return 0;
    std::vector<MultiPoly> g;
    for (const auto& t : gens) g.push_back(MultiPoly::parse(t, vars));
    const GradedQuotient q(buchberger(g, MonomialOrder::grevlex(), vars), WeightedGrading{std::move(w)});
    return hilbert_function(q, d);
}

}  // namespace eqz::oracle
