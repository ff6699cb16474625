#pragma once

// Buchberger Gröbner bases with Gebauer–Möller pair elimination, normal
// forms, elimination, saturation and Hilbert functions of graded quotients.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqz/poly.hpp"

namespace eqz {

/// Multiplicative well-order on exponent vectors.
class MonomialOrder {
public:
    enum class Kind { Lex, GradedLex, GradedRevLex, WeightedGradedRevLex, Elimination };

    static MonomialOrder lex() { return MonomialOrder(Kind::Lex); }
    static MonomialOrder grlex() { return MonomialOrder(Kind::GradedLex); }
    static MonomialOrder grevlex() { return MonomialOrder(Kind::GradedRevLex); }
    static MonomialOrder weighted_grevlex(WeightedGrading g) {
        if (!g.all_positive())
            throw StructuralError("weighted order needs strictly positive weights");
        MonomialOrder o(Kind::WeightedGradedRevLex);
        o.weights_ = std::move(g.weights);
        return o;
    }
    /// Block order: eliminated variables (mask true) dominate; grevlex inside
    /// each block.
    static MonomialOrder elimination(std::vector<bool> eliminated) {
        MonomialOrder o(Kind::Elimination);
        o.eliminated_ = std::move(eliminated);
        return o;
    }
    /// Weighted grevlex when the grading is strictly positive, else grevlex.
    static MonomialOrder default_for(const std::optional<WeightedGrading>& g) {
        if (g && g->all_positive()) return weighted_grevlex(*g);
        return grevlex();
    }

    Kind kind() const { return kind_; }
    const std::vector<int>& weights() const { return weights_; }
    const std::vector<bool>& eliminated() const { return eliminated_; }

    /// Strict comparison a > b.
    bool greater(const Exponent& a, const Exponent& b) const {
        switch (kind_) {
        case Kind::Lex:
            return a > b;
        case Kind::GradedLex: {
            const int da = total_degree(a), db = total_degree(b);
            if (da != db) return da > db;
            return a > b;
        }
        case Kind::GradedRevLex:
            return grevlex_greater(a, b, nullptr, true);
        case Kind::WeightedGradedRevLex: {
            long wa = 0, wb = 0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                wa += static_cast<long>(weights_[i]) * a[i];
                wb += static_cast<long>(weights_[i]) * b[i];
            }
            if (wa != wb) return wa > wb;
            return grevlex_greater(a, b, nullptr, true);
        }
        case Kind::Elimination: {
            if (grevlex_greater(a, b, &eliminated_, true)) return true;
            if (grevlex_greater(b, a, &eliminated_, true)) return false;
            return grevlex_greater(a, b, &eliminated_, false);
        }
        }
        return false;
    }

    std::string describe() const {
        auto join = [](const auto& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
            return s;
        };
        switch (kind_) {
        case Kind::Lex: return "lex";
        case Kind::GradedLex: return "grlex";
        case Kind::GradedRevLex: return "grevlex";
        case Kind::WeightedGradedRevLex: return "wgrevlex(" + join(weights_) + ")";
        case Kind::Elimination: {
            std::vector<int> m(eliminated_.begin(), eliminated_.end());
            return "elim(" + join(m) + ")";
        }
        }
        return "?";
    }

private:
    explicit MonomialOrder(Kind k) : kind_(k) {}

    // grevlex restricted to variables with mask == want (all when mask null)
    static bool grevlex_greater(const Exponent& a, const Exponent& b, const std::vector<bool>* mask,
                                bool want) {
        auto in = [&](std::size_t i) { return mask == nullptr || (*mask)[i] == want; };
        int da = 0, db = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (in(i)) {
                da += a[i];
                db += b[i];
            }
        if (da != db) return da > db;
        for (std::size_t i = a.size(); i-- > 0;)
            if (in(i) && a[i] != b[i]) return a[i] < b[i];
        return false;
    }

    Kind kind_;
    std::vector<int> weights_;
    std::vector<bool> eliminated_;
};

namespace gb_detail {

template <class Scalar>
struct Term {
    Exponent exp;
    Scalar coef;
};

template <class Scalar>
using Sparse = std::vector<Term<Scalar>>;  // sorted descending by the order

inline bool divides(const Exponent& a, const Exponent& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Exponent lcm(const Exponent& a, const Exponent& b) {
    Exponent m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = std::max(a[i], b[i]);
    return m;
}

inline bool coprime(const Exponent& a, const Exponent& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) return false;
    return true;
}

template <class Scalar, bool L>
Sparse<Scalar> to_sparse(const Polynomial<Scalar, L>& p, const MonomialOrder& ord) {
    Sparse<Scalar> s;
    s.reserve(p.size());
    for (const auto& [e, c] : p.terms()) s.push_back({e, c});
    std::sort(s.begin(), s.end(),
              [&](const Term<Scalar>& a, const Term<Scalar>& b) { return ord.greater(a.exp, b.exp); });
    return s;
}

template <class Scalar>
Polynomial<Scalar, false> from_sparse(const Sparse<Scalar>& s, const VarList& vars) {
    Polynomial<Scalar, false> p(vars);
    for (const auto& t : s) p.add_term(t.exp, t.coef);
    return p;
}

// a - c * x^shift * b
template <class Scalar>
Sparse<Scalar> sub_mul(const Sparse<Scalar>& a, const Scalar& c, const Exponent& shift,
                       const Sparse<Scalar>& b, const MonomialOrder& ord, std::size_t a_from = 0) {
    Sparse<Scalar> r;
    r.reserve(a.size() - a_from + b.size());
    std::size_t i = a_from, j = 0;
    Exponent e(shift.size());
    auto shifted = [&](std::size_t k) {
        for (std::size_t v = 0; v < e.size(); ++v) e[v] = b[k].exp[v] + shift[v];
    };
    if (j < b.size()) shifted(j);
    while (i < a.size() || j < b.size()) {
        if (j >= b.size() || (i < a.size() && ord.greater(a[i].exp, e))) {
            r.push_back(a[i++]);
        } else if (i >= a.size() || ord.greater(e, a[i].exp)) {
            r.push_back({e, -(c * b[j].coef)});
            if (++j < b.size()) shifted(j);
        } else {
            Scalar v = a[i].coef - c * b[j].coef;
            if (!(v == Scalar(0))) r.push_back({a[i].exp, std::move(v)});
            ++i;
            if (++j < b.size()) shifted(j);
        }
    }
    return r;
}

template <class Scalar>
void make_monic(Sparse<Scalar>& s) {
    if (s.empty()) return;
    const Scalar inv = Scalar(1) / s.front().coef;
    for (auto& t : s) t.coef *= inv;
}

// Full reduction of p modulo the reducers (indices into polys).
template <class Scalar>
Sparse<Scalar> reduce(Sparse<Scalar> p, const std::vector<Sparse<Scalar>>& polys,
                      const std::vector<std::size_t>& reducers, const MonomialOrder& ord) {
    Sparse<Scalar> rem;
    std::size_t head = 0;
    Exponent shift;
    while (head < p.size()) {
        const Term<Scalar>& lt = p[head];
        const Sparse<Scalar>* div = nullptr;
        for (std::size_t k : reducers) {
            if (divides(polys[k].front().exp, lt.exp)) {
                div = &polys[k];
                break;
            }
        }
        if (!div) {
            rem.push_back(lt);
            ++head;
            continue;
        }
        shift.assign(lt.exp.size(), 0);
        for (std::size_t v = 0; v < shift.size(); ++v) shift[v] = lt.exp[v] - div->front().exp[v];
        const Scalar c = lt.coef / div->front().coef;
        p = sub_mul(p, c, shift, *div, ord, head);
        head = 0;
    }
    return rem;
}

}  // namespace gb_detail

/// Reduced Gröbner basis: monic generators sorted by decreasing leading
/// monomial.
template <class Scalar>
class BasicGroebnerBasis {
public:
    using Poly = Polynomial<Scalar, false>;

    BasicGroebnerBasis(VarList vars, MonomialOrder order, std::vector<Poly> gens)
        : vars_(std::move(vars)), order_(std::move(order)), gens_(std::move(gens)) {}

    const VarList& vars() const { return vars_; }
    const MonomialOrder& order() const { return order_; }
    const std::vector<Poly>& generators() const { return gens_; }
    std::size_t size() const { return gens_.size(); }
    bool is_zero_ideal() const { return gens_.empty(); }
    bool is_unit_ideal() const { return gens_.size() == 1 && gens_.front().is_constant(); }

    Exponent leading_exponent(const Poly& p) const {
        const Exponent* best = nullptr;
        for (const auto& [e, c] : p.terms())
            if (!best || order_.greater(e, *best)) best = &e;
        return best ? *best : Exponent(vars_.size(), 0);
    }
    std::vector<Exponent> leading_exponents() const {
        std::vector<Exponent> r;
        for (const auto& g : gens_) r.push_back(leading_exponent(g));
        return r;
    }

    /// True iff no leading monomial divides e.
    bool is_standard(const Exponent& e) const {
        for (const auto& g : leads())
            if (gb_detail::divides(g, e)) return false;
        return true;
    }

    Poly normal_form(const Poly& p) const {
        if (!(p.vars() == vars_)) throw StructuralError("variable-list mismatch");
        const auto& sp = sparse();
        return gb_detail::from_sparse(gb_detail::reduce(gb_detail::to_sparse(p, order_), sp, all_, order_),
                                      vars_);
    }

    bool contains(const Poly& p) const { return normal_form(p).is_zero(); }

    /// Canonical serialization: sorted canonical strings plus the order.
    std::vector<std::string> strings() const {
        std::vector<std::string> s;
        for (const auto& g : gens_) s.push_back(g.str());
        std::sort(s.begin(), s.end());
        return s;
    }

    friend bool operator==(const BasicGroebnerBasis& a, const BasicGroebnerBasis& b) {
        return a.vars_ == b.vars_ && a.order_.describe() == b.order_.describe() && a.gens_ == b.gens_;
    }

private:
    const std::vector<Exponent>& leads() const {
        if (leads_.size() != gens_.size()) leads_ = leading_exponents();
        return leads_;
    }
    const std::vector<gb_detail::Sparse<Scalar>>& sparse() const {
        if (sparse_.size() != gens_.size()) {
            sparse_.clear();
            all_.clear();
            for (std::size_t i = 0; i < gens_.size(); ++i) {
                sparse_.push_back(gb_detail::to_sparse(gens_[i], order_));
                all_.push_back(i);
            }
        }
        return sparse_;
    }

    VarList vars_;
    MonomialOrder order_;
    std::vector<Poly> gens_;
    mutable std::vector<Exponent> leads_;
    mutable std::vector<gb_detail::Sparse<Scalar>> sparse_;
    mutable std::vector<std::size_t> all_;
};

using GroebnerBasis = BasicGroebnerBasis<Rational>;

/// Buchberger's algorithm with the Gebauer–Möller criteria. Generators are
/// consumed in input order and pairs are processed by (lcm degree, indices).
template <class Scalar>
BasicGroebnerBasis<Scalar> basic_buchberger(const std::vector<Polynomial<Scalar, false>>& gens,
                                      const MonomialOrder& order,
                                      std::optional<VarList> vars_hint = std::nullopt) {
    using namespace gb_detail;
    VarList vars = vars_hint ? *vars_hint : (gens.empty() ? VarList() : gens.front().vars());
    for (const auto& g : gens)
        if (!(g.vars() == vars)) throw StructuralError("buchberger: variable-list mismatch");

    std::vector<Sparse<Scalar>> polys;
    std::vector<std::size_t> basis;  // active generator indices
    struct Pair {
        std::size_t i, j;
        Exponent lcm;
        int deg;
    };
    std::vector<Pair> pairs;

    auto lead = [&](std::size_t k) -> const Exponent& { return polys[k].front().exp; };

    auto update = [&](std::size_t h) {
        // candidate pairs (h, g)
        std::vector<Pair> c;
        for (std::size_t g : basis) {
            Exponent m = lcm(lead(h), lead(g));
            c.push_back({g, h, m, total_degree(m)});
        }
        std::vector<Pair> d;
        for (std::size_t a = 0; a < c.size(); ++a) {
            bool keep = coprime(lead(h), lead(c[a].i));
            if (!keep) {
                keep = true;
                for (std::size_t b = a + 1; b < c.size() && keep; ++b)
                    if (divides(c[b].lcm, c[a].lcm)) keep = false;
                for (std::size_t b = 0; b < d.size() && keep; ++b)
                    if (divides(d[b].lcm, c[a].lcm)) keep = false;
            }
            if (keep) d.push_back(c[a]);
        }
        std::vector<Pair> e;
        for (auto& p : d)
            if (!coprime(lead(h), lead(p.i))) e.push_back(p);
        std::vector<Pair> kept;
        for (auto& p : pairs) {
            const bool drop = divides(lead(h), p.lcm) && lcm(lead(p.i), lead(h)) != p.lcm &&
                              lcm(lead(h), lead(p.j)) != p.lcm;
            if (!drop) kept.push_back(std::move(p));
        }
        pairs = std::move(kept);
        for (auto& p : e) pairs.push_back(std::move(p));
        std::vector<std::size_t> nb;
        for (std::size_t g : basis)
            if (!divides(lead(h), lead(g))) nb.push_back(g);
        nb.push_back(h);
        basis = std::move(nb);
    };

    auto add = [&](Sparse<Scalar> h) {
        make_monic(h);
        polys.push_back(std::move(h));
        update(polys.size() - 1);
    };

    for (const auto& g : gens) {
        auto s = to_sparse(g, order);
        if (s.empty()) continue;
        s = reduce(std::move(s), polys, basis, order);
        if (!s.empty()) add(std::move(s));
    }

    while (!pairs.empty()) {
        auto it = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
            if (a.deg != b.deg) return a.deg < b.deg;
            if (a.j != b.j) return a.j < b.j;
            return a.i < b.i;
        });
        Pair p = std::move(*it);
        pairs.erase(it);
        const auto& f = polys[p.i];
        const auto& g = polys[p.j];
        Exponent sf(p.lcm.size()), sg(p.lcm.size());
        for (std::size_t v = 0; v < sf.size(); ++v) {
            sf[v] = p.lcm[v] - f.front().exp[v];
            sg[v] = p.lcm[v] - g.front().exp[v];
        }
        // monic generators: S = x^sf f - x^sg g
        Sparse<Scalar> sp;
        for (const auto& t : f) {
            Exponent e(t.exp);
            for (std::size_t v = 0; v < e.size(); ++v) e[v] += sf[v];
            sp.push_back({std::move(e), t.coef});
        }
        sp = sub_mul(sp, Scalar(1), sg, g, order);
        auto h = reduce(std::move(sp), polys, basis, order);
        if (!h.empty()) add(std::move(h));
    }

    // minimalize and interreduce
    std::vector<std::size_t> minimal;
    for (std::size_t a : basis) {
        bool redundant = false;
        for (std::size_t b : basis) {
            if (a == b) continue;
            if (divides(lead(b), lead(a)) && (lead(b) != lead(a) || b < a)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) minimal.push_back(a);
    }
    std::vector<Sparse<Scalar>> reduced;
    for (std::size_t a : minimal) {
        std::vector<std::size_t> others;
        for (std::size_t b : minimal)
            if (b != a) others.push_back(b);
        Sparse<Scalar> tail(polys[a].begin() + 1, polys[a].end());
        Sparse<Scalar> r{polys[a].front()};
        for (auto& t : reduce(std::move(tail), polys, others, order)) r.push_back(std::move(t));
        make_monic(r);
        reduced.push_back(std::move(r));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Sparse<Scalar>& a, const Sparse<Scalar>& b) {
        return order.greater(a.front().exp, b.front().exp);
    });
    std::vector<Polynomial<Scalar, false>> out;
    for (const auto& r : reduced) out.push_back(from_sparse(r, vars));
    return BasicGroebnerBasis<Scalar>(vars, order, std::move(out));
}

/// Re-checks the S-pair criterion from scratch (no pair elimination).
template <class Scalar>
bool satisfies_s_pair_criterion(const BasicGroebnerBasis<Scalar>& gb) {
    using namespace gb_detail;
    const auto& gens = gb.generators();
    const auto& ord = gb.order();
    std::vector<Sparse<Scalar>> polys;
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        polys.push_back(to_sparse(gens[i], ord));
        all.push_back(i);
    }
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (std::size_t j = i + 1; j < polys.size(); ++j) {
            const auto& f = polys[i];
            const auto& g = polys[j];
            Exponent m = lcm(f.front().exp, g.front().exp), sf(m.size()), sg(m.size());
            for (std::size_t v = 0; v < m.size(); ++v) {
                sf[v] = m[v] - f.front().exp[v];
                sg[v] = m[v] - g.front().exp[v];
            }
            Sparse<Scalar> zero;
            auto s = sub_mul(zero, -(Scalar(1) / f.front().coef), sf, f, ord);
            s = sub_mul(s, Scalar(1) / g.front().coef, sg, g, ord);
            if (!reduce(std::move(s), polys, all, ord).empty()) return false;
        }
    return true;
}

/// Autoreduced: no leading monomial divides a term of another generator.
template <class Scalar>
bool is_autoreduced(const BasicGroebnerBasis<Scalar>& gb) {
    const auto leads = gb.leading_exponents();
    for (std::size_t i = 0; i < gb.size(); ++i)
        for (std::size_t j = 0; j < gb.size(); ++j) {
            if (i == j) continue;
            for (const auto& [e, c] : gb.generators()[j].terms())
                if (gb_detail::divides(leads[i], e)) return false;
        }
    return true;
}

// Rational instantiations and the higher-level ideal operations.

inline GroebnerBasis buchberger(const std::vector<MultiPoly>& gens, const MonomialOrder& order,
                                std::optional<VarList> vars_hint = std::nullopt) {
    return basic_buchberger<Rational>(gens, order, std::move(vars_hint));
}

MultiPoly normal_form(const MultiPoly& p, const GroebnerBasis& basis);

bool ideal_membership(const MultiPoly& p, const std::vector<MultiPoly>& gens);

/// Basis of I ∩ k[keep], returned over the kept variables (original order).
GroebnerBasis eliminate(const std::vector<MultiPoly>& gens, const std::vector<std::string>& keep);

/// Basis of (I : f^∞) computed through one auxiliary variable t with
/// t*f - 1 and block elimination of t.
GroebnerBasis saturate(const std::vector<MultiPoly>& gens, const MultiPoly& f,
                       const MonomialOrder& order = MonomialOrder::grevlex());

/// Same ideal, compared through reduced bases in a common order.
bool same_ideal(const std::vector<MultiPoly>& a, const std::vector<MultiPoly>& b);

/// All exponent vectors of the given positive weighted degree.
std::vector<Exponent> monomials_of_weighted_degree(const std::vector<int>& weights, long degree);

/// Quotient of a polynomial ring by a homogeneous ideal.
class GradedQuotient {
public:
    GradedQuotient(GroebnerBasis basis, WeightedGrading grading);

    const GroebnerBasis& basis() const { return basis_; }
    const WeightedGrading& grading() const { return grading_; }

    /// Standard monomials of weighted degree d.
    std::vector<Exponent> standard_monomials(long d) const;

private:
    GroebnerBasis basis_;
    WeightedGrading grading_;
};

long hilbert_function(const GradedQuotient& q, long d);

}  // namespace eqz
