#include "eqz/weyl.hpp"

#include <map>
#include <stdexcept>

#include "eqz/groebner.hpp"
#include "eqz/liegroup.hpp"

namespace eqz {

namespace {

using Key = std::pair<std::vector<long>, std::vector<int>>;

Key key_of(const IntMatrix& m, const std::vector<int>& perm) {
    return {std::vector<long>(m.data(), m.data() + m.size()), perm};
}

std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.empty()) return {};
    std::vector<int> r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[static_cast<std::size_t>(b[i])];
    return r;
}

void check_permutation(const std::vector<int>& p) {
    std::vector<bool> seen(p.size(), false);
    for (int x : p) {
        if (x < 0 || static_cast<std::size_t>(x) >= p.size() || seen[static_cast<std::size_t>(x)])
            throw StructuralError("invalid vertex permutation");
        seen[static_cast<std::size_t>(x)] = true;
    }
}

VarList default_vars(int r) {
    std::vector<std::string> names;
    for (int i = 1; i <= r; ++i) names.push_back("x" + std::to_string(i));
    return VarList(names);
}

}  // namespace

FiniteActionGroup::FiniteActionGroup(std::vector<IntMatrix> elements, std::vector<Permutation> permutations)
    : elements_(std::move(elements)), permutations_(std::move(permutations)) {
    if (elements_.empty()) throw StructuralError("a group needs at least one element");
    rank_ = static_cast<int>(elements_.front().rows());
    const bool paired = !permutations_.empty();
    if (paired && permutations_.size() != elements_.size())
        throw StructuralError("one permutation per element required");
    std::map<Key, std::size_t> index;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        const auto& m = elements_[i];
        if (m.rows() != rank_ || m.cols() != rank_) throw StructuralError("group elements must be r x r");
        if (paired) {
            check_permutation(permutations_[i]);
            if (permutations_[i].size() != permutations_.front().size())
                throw StructuralError("permutations act on different vertex sets");
        }
        if (!index.emplace(key_of(m, paired ? permutations_[i] : Permutation{}), i).second)
            throw StructuralError("repeated group element");
    }
    const IntMatrix id = IntMatrix::Identity(rank_, rank_);
    Permutation id_perm;
    if (paired)
        for (std::size_t i = 0; i < permutations_.front().size(); ++i) id_perm.push_back(static_cast<int>(i));
    if (!index.count(key_of(id, id_perm))) throw StructuralError("identity missing from group");
    for (std::size_t a = 0; a < elements_.size(); ++a) {
        bool has_inverse = false;
        for (std::size_t b = 0; b < elements_.size(); ++b) {
            const IntMatrix prod = elements_[a] * elements_[b];
            const Permutation pp = paired ? compose(permutations_[a], permutations_[b]) : Permutation{};
            if (!index.count(key_of(prod, pp))) throw StructuralError("group is not closed under products");
            if (prod == id && pp == id_perm) has_inverse = true;
        }
        if (!has_inverse) throw StructuralError("group element without inverse");
    }
}

FiniteActionGroup FiniteActionGroup::generated_by(const std::vector<IntMatrix>& generators) {
    return generated_by(generators, {});
}

FiniteActionGroup FiniteActionGroup::generated_by(const std::vector<IntMatrix>& generators,
                                                  const std::vector<Permutation>& permutations) {
    if (generators.empty()) throw StructuralError("no generators");
    const bool paired = !permutations.empty();
    if (paired && permutations.size() != generators.size())
        throw StructuralError("one permutation per generator required");
    const auto r = generators.front().rows();
    std::vector<IntMatrix> elems{IntMatrix::Identity(r, r)};
    std::vector<Permutation> perms;
    if (paired) {
        Permutation id;
        for (std::size_t i = 0; i < permutations.front().size(); ++i) id.push_back(static_cast<int>(i));
        perms.push_back(id);
    }
    std::map<Key, std::size_t> seen{{key_of(elems[0], paired ? perms[0] : Permutation{}), 0}};
    constexpr std::size_t limit = 100000;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t g = 0; g < generators.size(); ++g) {
            IntMatrix m = generators[g] * elems[i];
            Permutation p = paired ? compose(permutations[g], perms[i]) : Permutation{};
            if (seen.emplace(key_of(m, p), elems.size()).second) {
                elems.push_back(std::move(m));
                if (paired) perms.push_back(std::move(p));
                if (elems.size() > limit) throw StructuralError("generated group is too large or infinite");
            }
        }
    return FiniteActionGroup(std::move(elems), std::move(perms));
}

FiniteActionGroup FiniteActionGroup::symmetric(int n) {
    if (n < 1) throw std::domain_error("symmetric group needs n >= 1");
    std::vector<IntMatrix> gens;
    for (int i = 0; i + 1 < n; ++i) {
        IntMatrix s = IntMatrix::Identity(n, n);
        s(i, i) = s(i + 1, i + 1) = 0;
        s(i, i + 1) = s(i + 1, i) = 1;
        gens.push_back(s);
    }
    if (gens.empty()) return trivial(n);
    return generated_by(gens);
}

FiniteActionGroup FiniteActionGroup::trivial(int r) {
    return FiniteActionGroup({IntMatrix::Identity(r, r)});
}

MultiPoly act(const IntMatrix& g, const MultiPoly& p) {
    const auto& vars = p.vars();
    if (static_cast<std::size_t>(g.rows()) != vars.size() || g.cols() != g.rows())
        throw StructuralError("matrix size does not match the variable count");
    std::vector<MultiPoly> images;
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        MultiPoly im(vars);
        for (Eigen::Index j = 0; j < g.cols(); ++j)
            if (g(i, j) != 0) im += MultiPoly::variable(vars, static_cast<std::size_t>(j)) * Rational(g(i, j));
        images.push_back(im);
    }
    return p.substitute(images);
}

MultiPoly reynolds(const MultiPoly& p, const FiniteActionGroup& g) {
    MultiPoly sum(p.vars());
    for (const auto& m : g.elements()) sum += act(m, p);
    return sum * Rational(1, static_cast<long>(g.order()));
}

long invariant_dim(const FiniteActionGroup& g, int d) {
    if (d < 0) return 0;
    const int r = g.rank();
    const VarList vars = default_vars(r);
    const auto basis = monomials_of_weighted_degree(std::vector<int>(static_cast<std::size_t>(r), 1), d);
    std::map<Exponent, int> column;
    for (std::size_t i = 0; i < basis.size(); ++i) column[basis[i]] = static_cast<int>(i);
    // invariants are the common kernel of (g - 1) over all elements
    SparseEchelon<Rational> ech;
    for (const auto& m : g.elements()) {
        if (m == IntMatrix::Identity(r, r)) continue;
        // the matrix of g on the monomial basis, column by column; collect rows
        std::vector<std::map<int, Rational>> rows(basis.size());
        for (std::size_t c = 0; c < basis.size(); ++c) {
            const MultiPoly img = act(m, MultiPoly::monomial(vars, basis[c]));
            for (const auto& [e, coef] : img.terms()) rows[static_cast<std::size_t>(column.at(e))][static_cast<int>(c)] += coef;
            rows[c][static_cast<int>(c)] -= Rational(1);
        }
        for (auto& row : rows) {
            SparseVector<Rational> v;
            for (auto& [k, x] : row)
                if (!x.is_zero()) v.emplace_back(k, x);
            if (!v.empty()) ech.insert(std::move(v));
        }
    }
    return static_cast<long>(basis.size()) - static_cast<long>(ech.rank());
}

std::vector<Rational> molien_coefficients(const FiniteActionGroup& g, int n) {
    const VarList t{"t"};
    std::vector<Rational> total(static_cast<std::size_t>(n + 1), Rational(0));
    for (const auto& m : g.elements()) {
        PolyMatrix a = PolyMatrix::identity(t, m.rows());
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                if (m(i, j) != 0) a(i, j) -= MultiPoly::variable(t, 0) * Rational(m(i, j));
        const auto c = expand_series(make_series(MultiPoly::constant(t, 1), determinant(a)), n);
        for (int k = 0; k <= n; ++k) total[static_cast<std::size_t>(k)] += c[static_cast<std::size_t>(k)];
    }
    for (auto& x : total) x = x * Rational(1, static_cast<long>(g.order()));
    return total;
}

MultiPoly elementary_symmetric(const VarList& vars, int k) {
    const int r = static_cast<int>(vars.size());
    if (k < 0 || k > r) return MultiPoly(vars);
    // coefficient of u^k in prod (1 + u x_i), by the usual recurrence
    std::vector<MultiPoly> e(static_cast<std::size_t>(k + 1), MultiPoly(vars));
    e[0] = MultiPoly::constant(vars, 1);
    for (int i = 0; i < r; ++i)
        for (int j = std::min(k, i + 1); j >= 1; --j)
            e[static_cast<std::size_t>(j)] += e[static_cast<std::size_t>(j - 1)] * MultiPoly::variable(vars, static_cast<std::size_t>(i));
    return e[static_cast<std::size_t>(k)];
}

}  // namespace eqz
