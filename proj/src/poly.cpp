#include "eqz/poly.hpp"

namespace eqz {

namespace {

std::vector<Rational> dense_coefficients(const MultiPoly& p) {
    if (p.vars().size() != 1) throw StructuralError("series polynomials must be univariate");
    std::vector<Rational> c(static_cast<std::size_t>(p.degree()) + 1, Rational(0));
    for (const auto& [e, v] : p.terms()) c[static_cast<std::size_t>(e[0])] = v;
    return c;
}

}  // namespace

RationalSeries make_series(const MultiPoly& numerator, const MultiPoly& denominator) {
    if (!(numerator.vars() == denominator.vars()) || numerator.vars().size() != 1)
        throw StructuralError("series needs numerator and denominator in one common variable");
    if (denominator.constant_term().is_zero())
        throw std::domain_error("series denominator has zero constant term");
    return {numerator, denominator};
}

std::vector<Rational> expand_series(const RationalSeries& s, int n) {
    if (s.denominator.constant_term().is_zero())
        throw std::domain_error("series denominator has zero constant term");
    const auto num = dense_coefficients(s.numerator);
    const auto den = dense_coefficients(s.denominator);
    const Rational inv0 = den[0].inverse();
    std::vector<Rational> c;
    c.reserve(static_cast<std::size_t>(std::max(n + 1, 0)));
    for (int k = 0; k <= n; ++k) {
        Rational acc = static_cast<std::size_t>(k) < num.size() ? num[k] : Rational(0);
        for (int i = 1; i <= k && static_cast<std::size_t>(i) < den.size(); ++i)
            acc -= den[i] * c[k - i];
        c.push_back(acc * inv0);
    }
    return c;
}

MultiPoly univariate(const VarList& vars, const std::vector<Rational>& coeffs) {
    if (vars.size() != 1) throw StructuralError("univariate ring expected");
    MultiPoly p(vars);
    for (std::size_t k = 0; k < coeffs.size(); ++k) p.add_term({static_cast<int>(k)}, coeffs[k]);
    return p;
}

std::optional<MultiPoly> exact_quotient(const MultiPoly& f, const MultiPoly& g) {
    if (g.is_zero()) throw std::domain_error("exact_quotient: division by zero");
    if (!(f.vars() == g.vars())) throw StructuralError("variable-list mismatch");
    MultiPoly r = f, q(f.vars());
    const auto& [lg, cg] = *g.terms().begin();
    while (!r.is_zero()) {
        const auto [lr, cr] = *r.terms().begin();
        Exponent t(lr.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            t[i] = lr[i] - lg[i];
            if (t[i] < 0) return std::nullopt;
        }
        const MultiPoly step = MultiPoly::monomial(f.vars(), t, cr / cg);
        q += step;
        r -= step * g;
    }
    return q;
}

std::pair<MultiPoly, Exponent> clear_denominators(const LaurentPoly& f) {
    Exponent m = f.min_exponent();
    MultiPoly p(f.vars());
    for (const auto& [e, c] : f.terms()) {
        Exponent ne(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) ne[i] = e[i] - m[i];
        p.add_term(ne, c);
    }
    return {p, m};
}

LaurentPoly to_laurent(const MultiPoly& p) {
    LaurentPoly r(p.vars());
    for (const auto& [e, c] : p.terms()) r.add_term(e, c);
    return r;
}

bool laurent_divisible(const LaurentPoly& f, const LaurentPoly& g) {
    if (g.is_zero()) throw std::domain_error("laurent_divisible: divisor is zero");
    if (!(f.vars() == g.vars())) throw StructuralError("variable-list mismatch");
    if (f.is_zero()) return true;
    // Monomials are units, and a polynomial free of monomial factors divides
    // x^k * p exactly when it divides p.
    auto [fp, fs] = clear_denominators(f);
    auto [gp, gs] = clear_denominators(g);
    return exact_quotient(fp, gp).has_value();
}

}  // namespace eqz
