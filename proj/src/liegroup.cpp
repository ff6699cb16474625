#include "eqz/liegroup.hpp"

namespace eqz {

PolyMatrix::PolyMatrix(VarList vars, Eigen::Index n)
    : vars_(std::move(vars)), n_(n), entries_(static_cast<std::size_t>(n * n), MultiPoly(vars_)) {}

PolyMatrix PolyMatrix::from_rational(const VarList& vars, const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw StructuralError("matrix must be square");
    PolyMatrix r(vars, m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = MultiPoly::constant(vars, m(i, j));
    return r;
}

PolyMatrix PolyMatrix::identity(const VarList& vars, Eigen::Index n) {
    PolyMatrix r(vars, n);
    for (Eigen::Index i = 0; i < n; ++i) r(i, i) = MultiPoly::constant(vars, 1);
    return r;
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& o) {
    if (o.n_ != n_) throw StructuralError("matrix size mismatch");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
    return *this;
}

PolyMatrix& PolyMatrix::operator*=(const MultiPoly& s) {
    for (auto& e : entries_) e = e * s;
    return *this;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.n_ != b.n_) throw StructuralError("matrix size mismatch");
    PolyMatrix r = a;
    for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] -= b.entries_[k];
    return r;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.n_ != b.n_) throw StructuralError("matrix size mismatch");
    PolyMatrix r(a.vars_, a.n_);
    for (Eigen::Index i = 0; i < a.n_; ++i)
        for (Eigen::Index k = 0; k < a.n_; ++k) {
            if (a(i, k).is_zero()) continue;
            for (Eigen::Index j = 0; j < a.n_; ++j)
                if (!b(k, j).is_zero()) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
}

MultiPoly PolyMatrix::trace() const {
    MultiPoly t(vars_);
    for (Eigen::Index i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

bool PolyMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const MultiPoly& p) { return p.is_zero(); });
}

std::vector<std::vector<std::string>> PolyMatrix::entry_strings() const {
    std::vector<std::vector<std::string>> rows;
    for (Eigen::Index i = 0; i < n_; ++i) {
        rows.emplace_back();
        for (Eigen::Index j = 0; j < n_; ++j) rows.back().push_back((*this)(i, j).str());
    }
    return rows;
}

MultiPoly determinant(const PolyMatrix& m) {
    const Eigen::Index n = m.size();
    if (n == 0) return MultiPoly::constant(m.vars(), 1);
    if (n == 1) return m(0, 0);
    MultiPoly det(m.vars());
    for (Eigen::Index j = 0; j < n; ++j) {
        if (m(0, j).is_zero()) continue;
        PolyMatrix minor(m.vars(), n - 1);
        for (Eigen::Index i = 1; i < n; ++i)
            for (Eigen::Index k = 0, c = 0; k < n; ++k) {
                if (k == j) continue;
                minor(i - 1, c++) = m(i, k);
            }
        const MultiPoly term = m(0, j) * determinant(minor);
        if (j % 2 == 0) det += term;
        else det -= term;
    }
    return det;
}

RationalMatrix bracket(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw StructuralError("bracket: size mismatch");
    return a * b - b * a;
}

PolyMatrix bracket(const PolyMatrix& a, const PolyMatrix& b) { return a * b - b * a; }

bool Sl2Pair::relations_hold() const {
    if (bracket(h, e) != RationalMatrix(e * Rational(2))) return false;
    if (f) {
        if (bracket(e, *f) != h) return false;
        if (bracket(h, *f) != RationalMatrix(*f * Rational(-2))) return false;
    }
    return true;
}

Sl2Pair principal_pair_gl(int n) {
    if (n < 1) throw std::domain_error("principal_pair_gl: n must be positive");
    RationalMatrix e = RationalMatrix::Constant(n, n, Rational(0));
    RationalMatrix h = e, f = e;
    for (int i = 0; i < n; ++i) h(i, i) = Rational(n - 1 - 2 * i);
    for (int i = 0; i + 1 < n; ++i) {
        e(i, i + 1) = Rational(1);
        f(i + 1, i) = Rational((i + 1) * (n - 1 - i));
    }
    return {e, h, f};
}

OneParamSubgroup subgroup_of(const Sl2Pair& pair) {
    OneParamSubgroup s;
    for (Eigen::Index i = 0; i < pair.h.rows(); ++i) {
        for (Eigen::Index j = 0; j < pair.h.cols(); ++j)
            if (i != j && !pair.h(i, j).is_zero()) throw StructuralError("h must be diagonal");
        s.exponents.push_back(static_cast<int>(pair.h(i, i).to_long()));
    }
    return s;
}

namespace {

// Matrix of X -> [x, X] on gl_n in the row-major entry basis.
RationalMatrix ad_matrix(const RationalMatrix& x) {
    const Eigen::Index n = x.rows();
    RationalMatrix ad = RationalMatrix::Constant(n * n, n * n, Rational(0));
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) {
            RationalMatrix unit = RationalMatrix::Constant(n, n, Rational(0));
            unit(a, b) = Rational(1);
            const RationalMatrix img = bracket(x, unit);
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j) ad(i * n + j, a * n + b) = img(i, j);
        }
    return ad;
}

RationalMatrix unflatten(const RationalVector& v, Eigen::Index n) {
    RationalMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = v(i * n + j);
    return m;
}

bool linearly_independent(const std::vector<RationalMatrix>& ms) {
    if (ms.empty()) return true;
    const Eigen::Index n = ms.front().rows();
    RationalMatrix stacked(n * n, static_cast<Eigen::Index>(ms.size()));
    for (std::size_t k = 0; k < ms.size(); ++k)
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) stacked(i * n + j, static_cast<Eigen::Index>(k)) = ms[k](i, j);
    return exact_rank(stacked) == static_cast<Eigen::Index>(ms.size());
}

std::vector<std::string> numbered(const std::string& stem, int from, int count) {
    std::vector<std::string> r;
    for (int k = 0; k < count; ++k) r.push_back(stem + std::to_string(from + k));
    return r;
}

}  // namespace

std::vector<RationalMatrix> centralizer_basis(const RationalMatrix& x) {
    const RationalMatrix k = nullspace(ad_matrix(x));
    std::vector<RationalMatrix> out;
    for (Eigen::Index c = 0; c < k.cols(); ++c) out.push_back(unflatten(k.col(c), x.rows()));
    return out;
}

Eigen::Index centralizer_dim(const RationalMatrix& x) {
    const RationalMatrix ad = ad_matrix(x);
    return ad.cols() - exact_rank(ad);
}

PolyMatrix SectionFamily::generic_element() const { return generic_element(parameters); }

PolyMatrix SectionFamily::generic_element(const VarList& ring) const {
    PolyMatrix m = PolyMatrix::from_rational(ring, base);
    for (std::size_t k = 0; k < directions.size(); ++k)
        m += PolyMatrix::from_rational(ring, directions[k]) *
             MultiPoly::variable(ring, ring.index_of(parameters[k]));
    return m;
}

SectionFamily kostant_section_solvable(const RationalMatrix& e, const std::vector<RationalMatrix>& torus_basis,
                                       const OneParamSubgroup& subgroup,
                                       std::vector<std::string> parameter_names) {
    if (parameter_names.size() != torus_basis.size())
        throw StructuralError("one parameter name per torus direction required");
    for (const auto& t : torus_basis) {
        if (t.rows() != e.rows() || t.cols() != e.cols()) throw StructuralError("direction size mismatch");
        for (const auto& u : torus_basis)
            if (bracket(t, u) != RationalMatrix::Constant(e.rows(), e.cols(), Rational(0)))
                throw StructuralError("torus directions must commute");
    }
    if (!linearly_independent(torus_basis)) throw StructuralError("torus directions are dependent");
    SectionFamily s{e, torus_basis, VarList(std::move(parameter_names)), {}, subgroup};
    s.grading.weights = cstar_act(s, subgroup);
    return s;
}

SectionFamily kostant_section_reductive(int n, bool traceless) {
    const Sl2Pair pair = principal_pair_gl(n);
    const RationalMatrix& f = *pair.f;
    std::vector<RationalMatrix> dirs;
    for (int k = traceless ? 1 : 0; k < n; ++k) {
        // X supported on the k-th subdiagonal with [f, X] = 0
        const int len = n - k;
        RationalMatrix sys = RationalMatrix::Constant(n * n, len, Rational(0));
        for (int c = 0; c < len; ++c) {
            RationalMatrix unit = RationalMatrix::Constant(n, n, Rational(0));
            unit(c + k, c) = Rational(1);
            const RationalMatrix img = bracket(f, unit);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) sys(i * n + j, c) = img(i, j);
        }
        const RationalMatrix ker = nullspace(sys);
        for (Eigen::Index col = 0; col < ker.cols(); ++col) {
            RationalMatrix d = RationalMatrix::Constant(n, n, Rational(0));
            Rational lead(0);
            for (int c = 0; c < len; ++c) {
                d(c + k, c) = ker(c, col);
                if (lead.is_zero()) lead = ker(c, col);
            }
            dirs.push_back(d * lead.inverse());
        }
    }
    const std::size_t expected = static_cast<std::size_t>(traceless ? n - 1 : n);
    if (dirs.size() != expected)
        throw StructuralError("centralizer of f has dimension " + std::to_string(dirs.size()) + ", expected " +
                              std::to_string(expected));
    SectionFamily s{pair.e, dirs, VarList(numbered("s", traceless ? 2 : 1, static_cast<int>(expected))), {},
                    subgroup_of(pair)};
    s.grading.weights = cstar_act(s, s.subgroup);
    return s;
}

std::vector<int> cstar_act(const SectionFamily& s, const OneParamSubgroup& h) {
    const Eigen::Index n = s.matrix_size();
    if (static_cast<Eigen::Index>(h.exponents.size()) != n)
        throw StructuralError("one-parameter subgroup has the wrong size");
    const VarList tv{"t"};
    // t^{-2} Ad_{H^t}(X) scales entry (i,j) by t^{d_i - d_j - 2}
    auto act = [&](const RationalMatrix& x) {
        std::vector<LaurentPoly> out;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                out.push_back(LaurentPoly::monomial(tv, {h.exponents[i] - h.exponents[j] - 2}, x(i, j)));
        return out;
    };
    auto constant_entries = [&](const RationalMatrix& x, int power) {
        std::vector<LaurentPoly> out;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) out.push_back(LaurentPoly::monomial(tv, {power}, x(i, j)));
        return out;
    };
    if (act(s.base) != constant_entries(s.base, 0))
        throw StructuralError("the C*-action does not fix the base point of the section");
    std::vector<int> weights;
    for (const auto& d : s.directions) {
        std::optional<int> power;
        for (Eigen::Index i = 0; i < n && !power; ++i)
            for (Eigen::Index j = 0; j < n && !power; ++j)
                if (!d(i, j).is_zero()) power = h.exponents[i] - h.exponents[j] - 2;
        if (!power) throw StructuralError("zero direction in section");
        if (act(d) != constant_entries(d, *power))
            throw StructuralError("the C*-action does not preserve the section family");
        weights.push_back(-*power);
    }
    return weights;
}

std::vector<MultiPoly> char_poly_coefficients(const PolyMatrix& m) {
    const Eigen::Index n = m.size();
    const VarList& vars = m.vars();
    std::vector<MultiPoly> c;
    PolyMatrix mk(vars, n);  // M_0 = 0
    MultiPoly prev = MultiPoly::constant(vars, 1);
    for (Eigen::Index k = 1; k <= n; ++k) {
        mk = m * mk + PolyMatrix::identity(vars, n) * prev;
        MultiPoly ck = (m * mk).trace() * Rational(-1, static_cast<long>(k));
        c.push_back(ck);
        prev = ck;
    }
    return c;
}

std::vector<MultiPoly> char_poly_on_section(const SectionFamily& s) {
    return char_poly_coefficients(s.generic_element());
}

MultiPoly jacobian_determinant(const std::vector<MultiPoly>& fs) {
    if (fs.empty()) throw StructuralError("jacobian of an empty map");
    const VarList& vars = fs.front().vars();
    if (vars.size() != fs.size()) throw StructuralError("jacobian must be square");
    PolyMatrix j(vars, static_cast<Eigen::Index>(fs.size()));
    for (std::size_t a = 0; a < fs.size(); ++a)
        for (std::size_t b = 0; b < vars.size(); ++b)
            j(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = fs[a].derivative(b);
    return determinant(j);
}

}  // namespace eqz
