#pragma once

// Sparse multivariate polynomials over an exact field, with an optional
// Laurent variant allowing negative exponents.

#include <algorithm>
#include <cctype>
#include <initializer_list>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eqz/rational.hpp"

namespace eqz {

/// Raised on mismatched variable lists, malformed input and similar
/// shape violations.
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Exponent = std::vector<int>;

inline int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Descending graded-lex comparison: higher total degree first, ties broken
/// lexicographically with the first variable largest.
struct GradedLexGreater {
    bool operator()(const Exponent& a, const Exponent& b) const {
        const int da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        return a > b;
    }
};

/// Immutable ordered list of variable names shared between polynomials of
/// one ring.
class VarList {
public:
    VarList() : names_(std::make_shared<const std::vector<std::string>>()) {}
    VarList(std::initializer_list<std::string> names)
        : names_(std::make_shared<const std::vector<std::string>>(names)) {
        check_unique();
    }
    explicit VarList(std::vector<std::string> names)
        : names_(std::make_shared<const std::vector<std::string>>(std::move(names))) {
        check_unique();
    }

    std::size_t size() const { return names_->size(); }
    const std::string& operator[](std::size_t i) const { return (*names_)[i]; }
    const std::vector<std::string>& names() const { return *names_; }
    auto begin() const { return names_->begin(); }
    auto end() const { return names_->end(); }

    std::optional<std::size_t> find(std::string_view name) const {
        for (std::size_t i = 0; i < names_->size(); ++i)
            if ((*names_)[i] == name) return i;
        return std::nullopt;
    }
    std::size_t index_of(std::string_view name) const {
        if (auto i = find(name)) return *i;
        throw StructuralError("unknown variable '" + std::string(name) + "'");
    }

    friend bool operator==(const VarList& a, const VarList& b) {
        return a.names_ == b.names_ || *a.names_ == *b.names_;
    }

private:
    void check_unique() const {
        auto sorted = *names_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw StructuralError("duplicate variable name");
    }
    std::shared_ptr<const std::vector<std::string>> names_;
};

/// Integer weight per variable. Cohomological convention: doubled degrees.
struct WeightedGrading {
    std::vector<int> weights;

    long degree(const Exponent& e) const {
        long d = 0;
        for (std::size_t i = 0; i < e.size(); ++i) d += static_cast<long>(weights[i]) * e[i];
        return d;
    }
    bool all_positive() const {
        return std::all_of(weights.begin(), weights.end(), [](int w) { return w > 0; });
    }
};

template <class Scalar, bool Laurent>
class Polynomial {
public:
    using TermMap = std::map<Exponent, Scalar, GradedLexGreater>;
    static constexpr bool is_laurent = Laurent;

    Polynomial() = default;
    explicit Polynomial(VarList vars) : vars_(std::move(vars)) {}

    static Polynomial constant(const VarList& vars, const Scalar& c) {
        Polynomial p(vars);
        if (!(c == Scalar(0))) p.terms_.emplace(Exponent(vars.size(), 0), c);
        return p;
    }
    static Polynomial monomial(const VarList& vars, Exponent e, const Scalar& c = Scalar(1)) {
        if (e.size() != vars.size()) throw StructuralError("exponent length mismatch");
        check_exponent(e);
        Polynomial p(vars);
        if (!(c == Scalar(0))) p.terms_.emplace(std::move(e), c);
        return p;
    }
    static Polynomial variable(const VarList& vars, std::size_t i) {
        Exponent e(vars.size(), 0);
        e.at(i) = 1;
        return monomial(vars, std::move(e));
    }
    static Polynomial variable(const VarList& vars, std::string_view name) {
        return variable(vars, vars.index_of(name));
    }

    /// Parses the canonical text form (and a little more: parentheses,
    /// integer powers, division by nonzero constants).
    static Polynomial parse(std::string_view text, const VarList& vars);

    const VarList& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(),
                                                  terms_.begin()->first.end(),
                                                  [](int x) { return x == 0; }));
    }
    Scalar constant_term() const { return coefficient(Exponent(vars_.size(), 0)); }
    Scalar coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Scalar(0) : it->second;
    }
    int degree() const {
        int d = 0;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            d = first ? total_degree(e) : std::max(d, total_degree(e));
            first = false;
        }
        return d;
    }
    int degree_in(std::size_t var) const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }
    /// Componentwise minimum exponent over all terms (zero vector for 0).
    Exponent min_exponent() const {
        Exponent m(vars_.size(), 0);
        bool first = true;
        for (const auto& [e, c] : terms_) {
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
            first = false;
        }
        return m;
    }

    void add_term(const Exponent& e, const Scalar& c) {
        if (c == Scalar(0)) return;
        check_exponent(e);
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == Scalar(0)) terms_.erase(it);
        }
    }

    Polynomial operator-() const {
        Polynomial r(vars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, -c);
        return r;
    }
    Polynomial& operator+=(const Polynomial& o) {
        require_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        require_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Polynomial& operator*=(const Scalar& s) {
        if (s == Scalar(0)) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
    friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.require_same(b);
        Polynomial r(a.vars_);
        Exponent e(a.vars_.size());
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }

    Polynomial pow(int k) const {
        if (k < 0) {
            if constexpr (Laurent) {
                if (terms_.size() != 1) throw std::domain_error("negative power of a non-monomial");
                const auto& [e, c] = *terms_.begin();
                Exponent ne(e.size());
                for (std::size_t i = 0; i < e.size(); ++i) ne[i] = -e[i];
                return monomial(vars_, ne, Scalar(1) / c).pow(-k);
            } else {
                throw std::domain_error("negative power in a polynomial ring");
            }
        }
        Polynomial result = constant(vars_, Scalar(1)), base = *this;
        while (k > 0) {
            if (k & 1) result *= base;
            k >>= 1;
            if (k) base *= base;
        }
        return result;
    }

    /// Multiplies by the monomial x^shift.
    Polynomial shifted(const Exponent& shift) const {
        Polynomial r(vars_);
        for (const auto& [e, c] : terms_) {
            Exponent ne(e);
            for (std::size_t i = 0; i < ne.size(); ++i) ne[i] += shift[i];
            r.add_term(ne, c);
        }
        return r;
    }

    Polynomial derivative(std::size_t var) const {
        Polynomial r(vars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponent ne(e);
            ne[var] -= 1;
            r.add_term(ne, c * Scalar(e[var]));
        }
        return r;
    }

    /// Substitutes images[i] for variable i; images share a target ring.
    template <class P>
    P substitute(const std::vector<P>& images) const {
        if (images.size() != vars_.size()) throw StructuralError("substitution arity mismatch");
        if (images.empty()) return P();
        const VarList& target = images.front().vars();
        P result(target);
        std::vector<std::map<int, P>> cache(images.size());
        auto power = [&](std::size_t i, int k) -> const P& {
            auto it = cache[i].find(k);
            if (it == cache[i].end()) it = cache[i].emplace(k, images[i].pow(k)).first;
            return it->second;
        };
        for (const auto& [e, c] : terms_) {
            P term = P::constant(target, c);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0) term = term * power(i, e[i]);
            result += term;
        }
        return result;
    }

    /// Re-expresses the polynomial over `target`, matching variables by name.
    Polynomial embed(const VarList& target) const {
        std::vector<std::size_t> map(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) map[i] = target.index_of(vars_[i]);
        Polynomial r(target);
        for (const auto& [e, c] : terms_) {
            Exponent ne(target.size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) ne[map[i]] = e[i];
            r.terms_.emplace(std::move(ne), c);
        }
        return r;
    }

    Scalar evaluate(const std::vector<Scalar>& point) const {
        Scalar s(0);
        for (const auto& [e, c] : terms_) {
            Scalar t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0) t *= point[i].pow(e[i]);
            s += t;
        }
        return s;
    }

    /// Common weighted degree of all terms, or nullopt when inhomogeneous.
    /// The zero polynomial reports degree 0.
    std::optional<long> weighted_degree(const WeightedGrading& g) const {
        if (g.weights.size() != vars_.size()) throw StructuralError("grading arity mismatch");
        std::optional<long> d;
        for (const auto& [e, c] : terms_) {
            const long de = g.degree(e);
            if (d && *d != de) return std::nullopt;
            d = de;
        }
        return d.value_or(0);
    }

    std::string str() const;

private:
    static void check_exponent(const Exponent& e) {
        if constexpr (!Laurent) {
            for (int x : e)
                if (x < 0) throw std::domain_error("negative exponent in a polynomial ring");
        }
    }
    void require_same(const Polynomial& o) const {
        if (!(vars_ == o.vars_)) throw StructuralError("variable-list mismatch");
    }

    VarList vars_;
    TermMap terms_;
};

using MultiPoly = Polynomial<Rational, false>;
using LaurentPoly = Polynomial<Rational, true>;

template <class Scalar, bool Laurent>
std::ostream& operator<<(std::ostream& os, const Polynomial<Scalar, Laurent>& p) {
    return os << p.str();
}

namespace detail {

template <class Scalar>
void write_scalar(std::ostringstream& os, const Scalar& s) {
    os << s;
}

template <class Scalar>
bool scalar_negative(const Scalar& s) {
    return s < Scalar(0);
}

template <class P>
class PolyParser {
public:
    using Scalar = std::remove_cvref_t<decltype(std::declval<P>().constant_term())>;
    PolyParser(std::string_view text, const VarList& vars) : s_(text), vars_(vars) {}

    P run() {
        P r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw StructuralError("polynomial parse error at offset " + std::to_string(pos_) + ": " +
                              what + " in '" + std::string(s_) + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    P expr() {
        P r = term();
        for (;;) {
            if (accept('+')) r += term();
            else if (accept('-')) r -= term();
            else return r;
        }
    }
    P term() {
        P r = unary();
        for (;;) {
            if (accept('*')) {
                r = r * unary();
            } else if (accept('/')) {
                P d = unary();
                if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
                r *= Scalar(1) / d.constant_term();
            } else {
                return r;
            }
        }
    }
    P unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }
    P power() {
        P base = atom();
        if (accept('^')) {
            skip();
            bool neg = accept('-');
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected integer exponent");
            int k = std::stoi(std::string(s_.substr(start, pos_ - start)));
            try {
                return base.pow(neg ? -k : k);
            } catch (const std::domain_error& e) {
                fail(e.what());
            }
        }
        return base;
    }
    P atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        if (accept('(')) {
            P r = expr();
            if (!accept(')')) fail("expected ')'");
            return r;
        }
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return P::constant(vars_, Scalar(mpz_class(std::string(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                        s_[pos_] == '_'))
                ++pos_;
            auto name = s_.substr(start, pos_ - start);
            auto idx = vars_.find(name);
            if (!idx) fail("unknown variable '" + std::string(name) + "'");
            return P::variable(vars_, *idx);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view s_;
    VarList vars_;
    std::size_t pos_ = 0;
};

}  // namespace detail

template <class Scalar, bool Laurent>
Polynomial<Scalar, Laurent> Polynomial<Scalar, Laurent>::parse(std::string_view text,
                                                              const VarList& vars) {
    return detail::PolyParser<Polynomial>(text, vars).run();
}

template <class Scalar, bool Laurent>
std::string Polynomial<Scalar, Laurent>::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        const bool neg = detail::scalar_negative(c);
        const Scalar mag = neg ? Scalar(-c) : c;
        if (first) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        first = false;
        const bool unit_exp = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
        bool need_star = false;
        if (!(mag == Scalar(1)) || unit_exp) {
            detail::write_scalar(os, mag);
            need_star = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (need_star) os << '*';
            os << vars_[i];
            if (e[i] != 1) os << '^' << e[i];
            need_star = true;
        }
    }
    return os.str();
}

/// Univariate rational function num/den in a single variable, den(0) != 0.
struct RationalSeries {
    MultiPoly numerator;
    MultiPoly denominator;
};

RationalSeries make_series(const MultiPoly& numerator, const MultiPoly& denominator);

/// Formal expansion coefficients c_0..c_n of a rational series.
std::vector<Rational> expand_series(const RationalSeries& s, int n);

/// Univariate polynomial in `var` from dense coefficients.
MultiPoly univariate(const VarList& vars, const std::vector<Rational>& coeffs);

/// True iff g divides f in the Laurent polynomial ring.
bool laurent_divisible(const LaurentPoly& f, const LaurentPoly& g);

/// Exact quotient f/g in the polynomial ring if g divides f.
std::optional<MultiPoly> exact_quotient(const MultiPoly& f, const MultiPoly& g);

/// Splits a Laurent polynomial as x^shift * p with p an ordinary polynomial
/// not divisible by any variable.
std::pair<MultiPoly, Exponent> clear_denominators(const LaurentPoly& f);

LaurentPoly to_laurent(const MultiPoly& p);

}  // namespace eqz
