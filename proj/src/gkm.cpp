#include "eqz/gkm.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "eqz/groebner.hpp"
#include "eqz/weyl.hpp"

namespace eqz {

namespace {

Weight unit(int r, int i, int scale = 1) {
    Weight w(static_cast<std::size_t>(r), 0);
    w[static_cast<std::size_t>(i)] = scale;
    return w;
}

Weight difference(int r, int i, int j) {
    Weight w(static_cast<std::size_t>(r), 0);
    w[static_cast<std::size_t>(i)] += 1;
    w[static_cast<std::size_t>(j)] -= 1;
    return w;
}

bool is_zero_weight(const Weight& w) {
    return std::all_of(w.begin(), w.end(), [](int x) { return x == 0; });
}

// Images of x_1..x_r on the hyperplane <alpha, x> = 0, solved for the last
// coordinate with a nonzero coefficient.
std::vector<MultiPoly> hyperplane_substitution(const VarList& vars, const Weight& alpha) {
    std::size_t p = alpha.size();
    while (p > 0 && alpha[p - 1] == 0) --p;
    if (p == 0) throw StructuralError("zero edge character");
    --p;
    std::vector<MultiPoly> images;
    for (std::size_t i = 0; i < vars.size(); ++i) images.push_back(MultiPoly::variable(vars, i));
    MultiPoly solved(vars);
    for (std::size_t j = 0; j < vars.size(); ++j)
        if (j != p && alpha[j] != 0)
            solved -= MultiPoly::variable(vars, j) * Rational(alpha[j], alpha[p]);
    images[p] = solved;
    return images;
}

std::vector<std::string> subset_labels(int k, int n, std::vector<std::vector<int>>& subsets) {
    std::vector<std::string> labels;
    std::vector<bool> pick(static_cast<std::size_t>(n), false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
        std::vector<int> s;
        std::string label;
        for (int i = 0; i < n; ++i)
            if (pick[static_cast<std::size_t>(i)]) {
                s.push_back(i);
                label += std::to_string(i + 1);
            }
        subsets.push_back(s);
        labels.push_back(label);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return labels;
}

}  // namespace

MomentGraph::MomentGraph(int rank, std::vector<std::string> vertices, std::vector<GkmEdge> edges)
    : rank_(rank), vertices_(std::move(vertices)), edges_(std::move(edges)) {
    if (rank_ < 0) throw StructuralError("negative torus rank");
    std::set<std::string> seen(vertices_.begin(), vertices_.end());
    if (seen.size() != vertices_.size()) throw StructuralError("duplicate vertex label");
    for (const auto& e : edges_) {
        if (e.from < 0 || e.to < 0 || static_cast<std::size_t>(e.from) >= vertices_.size() ||
            static_cast<std::size_t>(e.to) >= vertices_.size() || e.from == e.to)
            throw StructuralError("edge endpoints must be two distinct vertices");
        if (static_cast<int>(e.alpha.size()) != rank_) throw StructuralError("edge character has the wrong rank");
        if (is_zero_weight(e.alpha)) throw StructuralError("edge character must be nonzero");
    }
}

int MomentGraph::vertex_index(const std::string& label) const {
    const auto it = std::find(vertices_.begin(), vertices_.end(), label);
    if (it == vertices_.end()) throw StructuralError("unknown vertex '" + label + "'");
    return static_cast<int>(it - vertices_.begin());
}

std::size_t MomentGraph::connected_components() const {
    std::vector<std::size_t> parent(vertices_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t count = vertices_.size();
    for (const auto& e : edges_) {
        const auto a = find(static_cast<std::size_t>(e.from)), b = find(static_cast<std::size_t>(e.to));
        if (a != b) parent[a] = b, --count;
    }
    return count;
}

VarList MomentGraph::variables() const {
    std::vector<std::string> names;
    for (int i = 1; i <= rank_; ++i) names.push_back("x" + std::to_string(i));
    return VarList(names);
}

MomentGraph MomentGraph::projective_line() { return MomentGraph(1, {"0", "inf"}, {{0, 1, {1}}}); }

MomentGraph MomentGraph::projective_space(int n) {
    if (n < 0) throw std::domain_error("projective_space: n must be nonnegative");
    std::vector<std::string> v;
    std::vector<GkmEdge> edges;
    for (int i = 0; i <= n; ++i) v.push_back("p" + std::to_string(i));
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) edges.push_back({i, j, difference(n + 1, i, j)});
    return MomentGraph(n + 1, v, edges);
}

MomentGraph MomentGraph::p1_times_p1() {
    return MomentGraph(2, {"00", "01", "10", "11"},
                       {{0, 2, {1, 0}}, {1, 3, {1, 0}}, {0, 1, {0, 1}}, {2, 3, {0, 1}}});
}

MomentGraph MomentGraph::flag_sl3() {
    std::vector<std::vector<int>> perms;
    std::vector<int> w{0, 1, 2};
    do perms.push_back(w);
    while (std::next_permutation(w.begin(), w.end()));
    std::vector<std::string> labels;
    for (const auto& p : perms) labels.push_back(std::to_string(p[0] + 1) + std::to_string(p[1] + 1) + std::to_string(p[2] + 1));
    std::vector<GkmEdge> edges;
    for (std::size_t i = 0; i < perms.size(); ++i)
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                // (a b) w swaps the values a and b in one-line notation
                auto t = perms[i];
                for (auto& x : t) x = x == a ? b : (x == b ? a : x);
                const auto j = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), t) - perms.begin());
                if (i < j) edges.push_back({static_cast<int>(i), static_cast<int>(j), difference(3, a, b)});
            }
    return MomentGraph(3, labels, edges);
}

MomentGraph MomentGraph::grassmannian(int k, int n) {
    if (k < 0 || k > n) throw std::domain_error("grassmannian: need 0 <= k <= n");
    std::vector<std::vector<int>> subsets;
    const auto labels = subset_labels(k, n, subsets);
    std::vector<GkmEdge> edges;
    for (std::size_t a = 0; a < subsets.size(); ++a)
        for (std::size_t b = a + 1; b < subsets.size(); ++b) {
            std::vector<int> only_a, only_b;
            std::set_difference(subsets[a].begin(), subsets[a].end(), subsets[b].begin(), subsets[b].end(),
                                std::back_inserter(only_a));
            std::set_difference(subsets[b].begin(), subsets[b].end(), subsets[a].begin(), subsets[a].end(),
                                std::back_inserter(only_b));
            if (only_a.size() == 1)
                edges.push_back({static_cast<int>(a), static_cast<int>(b), difference(n, only_a[0], only_b[0])});
        }
    return MomentGraph(n, labels, edges);
}

MultiPoly linear_form(const VarList& vars, const Weight& alpha) {
    if (alpha.size() != vars.size()) throw StructuralError("weight has the wrong rank");
    MultiPoly f(vars);
    for (std::size_t i = 0; i < alpha.size(); ++i)
        if (alpha[i] != 0) f += MultiPoly::variable(vars, i) * Rational(alpha[i]);
    return f;
}

LaurentPoly character(const VarList& vars, const Weight& alpha) {
    if (alpha.size() != vars.size()) throw StructuralError("weight has the wrong rank");
    return LaurentPoly::monomial(vars, alpha);
}

KTheoryClass operator+(const KTheoryClass& a, const KTheoryClass& b) {
    if (a.values.size() != b.values.size()) throw StructuralError("vertex count mismatch");
    KTheoryClass r = a;
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] += b.values[i];
    return r;
}

KTheoryClass operator*(const KTheoryClass& a, const KTheoryClass& b) {
    if (a.values.size() != b.values.size()) throw StructuralError("vertex count mismatch");
    KTheoryClass r = a;
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] = a.values[i] * b.values[i];
    return r;
}

std::size_t EquivariantBundleData::rank() const {
    if (weights.empty()) return 0;
    const std::size_t r = weights.front().size();
    for (const auto& v : weights) {
        if (v.size() != r) throw StructuralError("bundle rank differs between fixed points");
        for (const auto& w : v)
            if (static_cast<int>(w.size()) != torus_rank) throw StructuralError("weight has the wrong rank");
    }
    return r;
}

EquivariantBundleData operator+(const EquivariantBundleData& a, const EquivariantBundleData& b) {
    if (a.weights.size() != b.weights.size() || a.torus_rank != b.torus_rank)
        throw StructuralError("bundle data over different graphs");
    EquivariantBundleData r = a;
    for (std::size_t i = 0; i < r.weights.size(); ++i)
        r.weights[i].insert(r.weights[i].end(), b.weights[i].begin(), b.weights[i].end());
    return r;
}

long gkm_cohomology_dim(const MomentGraph& g, int d) {
    if (d < 0 || d % 2 != 0) return 0;
    const int k = d / 2;
    const VarList vars = g.variables();
    const auto basis = monomials_of_weighted_degree(std::vector<int>(static_cast<std::size_t>(g.rank()), 1), k);
    const auto m = static_cast<int>(basis.size());
    SparseEchelon<Rational> ech;
    for (const auto& e : g.edges()) {
        // f_from - f_to must vanish on the hyperplane alpha = 0
        const auto images = hyperplane_substitution(vars, e.alpha);
        std::map<Exponent, std::map<int, Rational>> rows;
        for (int c = 0; c < m; ++c) {
            const MultiPoly img = MultiPoly::monomial(vars, basis[static_cast<std::size_t>(c)]).substitute(images);
            for (const auto& [mono, coef] : img.terms()) {
                rows[mono][e.from * m + c] += coef;
                rows[mono][e.to * m + c] -= coef;
            }
        }
        for (const auto& [mono, row] : rows) {
            SparseVector<Rational> v;
            for (const auto& [col, x] : row)
                if (!x.is_zero()) v.emplace_back(col, x);
            if (!v.empty()) ech.insert(std::move(v));
        }
    }
    return static_cast<long>(g.vertex_count()) * m - static_cast<long>(ech.rank());
}

EdgeReport gkm_cohomology_check(const CohomologyClass& c, const MomentGraph& g) {
    if (c.values.size() != g.vertex_count()) throw StructuralError("class has the wrong number of vertices");
    EdgeReport r;
    const VarList vars = g.variables();
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        const auto& e = g.edges()[i];
        const MultiPoly diff = c.values[static_cast<std::size_t>(e.from)] - c.values[static_cast<std::size_t>(e.to)];
        if (!diff.substitute(hyperplane_substitution(vars, e.alpha)).is_zero()) r.violated.push_back(i);
    }
    r.ok = r.violated.empty();
    return r;
}

EdgeReport gkm_ktheory_check(const KTheoryClass& c, const MomentGraph& g) {
    if (c.values.size() != g.vertex_count()) throw StructuralError("class has the wrong number of vertices");
    EdgeReport r;
    const VarList vars = g.variables();
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        const auto& e = g.edges()[i];
        const LaurentPoly diff =
            c.values[static_cast<std::size_t>(e.from)] - c.values[static_cast<std::size_t>(e.to)];
        const LaurentPoly modulus = character(vars, e.alpha) - LaurentPoly::constant(vars, 1);
        if (!laurent_divisible(diff, modulus)) r.violated.push_back(i);
    }
    r.ok = r.violated.empty();
    return r;
}

EdgeReport bundle_consistency(const EquivariantBundleData& b, const MomentGraph& g) {
    if (b.weights.size() != g.vertex_count()) throw StructuralError("bundle has the wrong number of vertices");
    b.rank();
    EdgeReport r;
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        const auto& e = g.edges()[i];
        // greedy matching is exact here: congruence mod Z*alpha is an equivalence relation
        auto rest = b.weights[static_cast<std::size_t>(e.to)];
        bool ok = true;
        for (const auto& w : b.weights[static_cast<std::size_t>(e.from)]) {
            auto it = std::find_if(rest.begin(), rest.end(), [&](const Weight& u) {
                std::optional<int> q;
                for (std::size_t j = 0; j < w.size(); ++j) {
                    const int delta = w[j] - u[j];
                    const int a = e.alpha[j];
                    if (a == 0) {
                        if (delta != 0) return false;
                        continue;
                    }
                    if (delta % a != 0) return false;
                    if (q && *q != delta / a) return false;
                    q = delta / a;
                }
                return true;
            });
            if (it == rest.end()) {
                ok = false;
                break;
            }
            rest.erase(it);
        }
        if (!ok) r.violated.push_back(i);
    }
    r.ok = r.violated.empty();
    return r;
}

KTheoryClass localize_bundle_K(const EquivariantBundleData& b) {
    b.rank();
    std::vector<std::string> names;
    for (int i = 1; i <= b.torus_rank; ++i) names.push_back("x" + std::to_string(i));
    const VarList vars(names);
    KTheoryClass c;
    for (const auto& fiber : b.weights) {
        LaurentPoly trace(vars);
        for (const auto& w : fiber) trace += character(vars, w);
        c.values.push_back(trace);
    }
    return c;
}

CohomologyClass localize_chern(const EquivariantBundleData& b, int k) {
    const auto rank = b.rank();
    if (k < 0 || static_cast<std::size_t>(k) > rank) throw std::out_of_range("Chern class index out of range");
    std::vector<std::string> names;
    for (int i = 1; i <= b.torus_rank; ++i) names.push_back("x" + std::to_string(i));
    const VarList vars(names);
    CohomologyClass c;
    for (const auto& fiber : b.weights) {
        std::vector<MultiPoly> e(static_cast<std::size_t>(k + 1), MultiPoly(vars));
        e[0] = MultiPoly::constant(vars, 1);
        for (std::size_t i = 0; i < fiber.size(); ++i) {
            const MultiPoly l = linear_form(vars, fiber[i]);
            for (std::size_t j = std::min<std::size_t>(static_cast<std::size_t>(k), i + 1); j >= 1; --j)
                e[j] += e[j - 1] * l;
        }
        c.values.push_back(e[static_cast<std::size_t>(k)]);
    }
    return c;
}

std::vector<MultiPoly> power_sums_from_elementary(const std::vector<MultiPoly>& e, int n) {
    if (e.empty()) throw StructuralError("need e_0");
    const VarList& vars = e.front().vars();
    auto ek = [&](int k) { return static_cast<std::size_t>(k) < e.size() ? e[static_cast<std::size_t>(k)] : MultiPoly(vars); };
    std::vector<MultiPoly> p(static_cast<std::size_t>(n + 1), MultiPoly(vars));
    for (int m = 1; m <= n; ++m) {
        MultiPoly s = ek(m) * Rational(m % 2 ? m : -m);
        for (int k = 1; k < m; ++k) {
            const MultiPoly t = ek(k) * p[static_cast<std::size_t>(m - k)];
            if (k % 2) s += t;
            else s -= t;
        }
        p[static_cast<std::size_t>(m)] = s;
    }
    return p;
}

bool chern_character_check(const EquivariantBundleData& b, int n) {
    if (n < 1) throw std::domain_error("truncation order must be positive");
    const auto rank = b.rank();
    std::vector<CohomologyClass> chern;
    for (std::size_t k = 0; k <= rank; ++k) chern.push_back(localize_chern(b, static_cast<int>(k)));
    std::vector<std::string> names;
    for (int i = 1; i <= b.torus_rank; ++i) names.push_back("x" + std::to_string(i));
    const VarList vars(names);
    for (std::size_t v = 0; v < b.weights.size(); ++v) {
        // trace of exp: x^lambda -> exp(<lambda, x>) truncated
        MultiPoly lhs(vars);
        for (const auto& w : b.weights[v]) {
            const MultiPoly l = linear_form(vars, w);
            MultiPoly power = MultiPoly::constant(vars, 1);
            for (int m = 0; m <= n; ++m) {
                lhs += power * factorial_inverse(m);
                power = power * l;
            }
        }
        std::vector<MultiPoly> e;
        for (const auto& c : chern) e.push_back(c.values[v]);
        const auto p = power_sums_from_elementary(e, n);
        MultiPoly rhs = MultiPoly::constant(vars, static_cast<long>(rank));
        for (int m = 1; m <= n; ++m) rhs += p[static_cast<std::size_t>(m)] * factorial_inverse(m);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

RationalSeries formality_series(const std::vector<long>& betti, int r) {
    if (r < 0) throw std::domain_error("negative torus rank");
    const VarList t{"t"};
    MultiPoly num(t);
    for (std::size_t i = 0; i < betti.size(); ++i) {
        if (betti[i] < 0) throw std::domain_error("Betti numbers must be nonnegative");
        num.add_term({static_cast<int>(i)}, Rational(betti[i]));
    }
    const MultiPoly base = MultiPoly::constant(t, 1) - MultiPoly::monomial(t, {2});
    return make_series(num, base.pow(r));
}

CohomologyClass weyl_transport(const CohomologyClass& c, const MomentGraph& g, const std::vector<int>& perm,
                               const IntMatrix& mat) {
    const std::size_t s = g.vertex_count();
    if (c.values.size() != s || perm.size() != s) throw StructuralError("vertex count mismatch");
    if (mat.rows() != g.rank() || mat.cols() != g.rank()) throw StructuralError("matrix has the wrong size");
    std::vector<bool> hit(s, false);
    for (int p : perm) {
        if (p < 0 || static_cast<std::size_t>(p) >= s || hit[static_cast<std::size_t>(p)])
            throw StructuralError("not a vertex permutation");
        hit[static_cast<std::size_t>(p)] = true;
    }
    for (const auto& e : g.edges()) {
        const int a = perm[static_cast<std::size_t>(e.from)], b = perm[static_cast<std::size_t>(e.to)];
        bool found = false;
        for (const auto& f : g.edges()) {
            if (!((f.from == a && f.to == b) || (f.from == b && f.to == a))) continue;
            Weight pulled(static_cast<std::size_t>(g.rank()), 0);
            for (int i = 0; i < g.rank(); ++i)
                for (int j = 0; j < g.rank(); ++j)
                    pulled[static_cast<std::size_t>(i)] += static_cast<int>(mat(j, i)) * f.alpha[static_cast<std::size_t>(j)];
            Weight neg = pulled;
            for (auto& x : neg) x = -x;
            if (pulled == e.alpha || neg == e.alpha) found = true;
        }
        if (!found) throw StructuralError("the pair is not an automorphism of the labelled graph");
    }
    CohomologyClass out;
    for (std::size_t i = 0; i < s; ++i)
        out.values.push_back(act(mat, c.values[static_cast<std::size_t>(perm[i])]));
    return out;
}

bool weyl_transport_check(const CohomologyClass& c, const MomentGraph& g, const std::vector<int>& perm,
                          const IntMatrix& mat) {
    return gkm_cohomology_check(weyl_transport(c, g, perm, mat), g).ok;
}

EquivariantBundleData projective_line_bundle(int n, int k) {
    EquivariantBundleData b{n + 1, {}};
    for (int i = 0; i <= n; ++i) b.weights.push_back({unit(n + 1, i, k)});
    return b;
}

EquivariantBundleData p1_tangent() { return {1, {{{1}}, {{-1}}}}; }

EquivariantBundleData flag_line_bundle(int j) {
    if (j < 1 || j > 3) throw std::out_of_range("flag line bundle index must be 1..3");
    EquivariantBundleData b{3, {}};
    std::vector<int> w{0, 1, 2};
    do b.weights.push_back({unit(3, w[static_cast<std::size_t>(j - 1)])});
    while (std::next_permutation(w.begin(), w.end()));
    return b;
}

EquivariantBundleData grassmannian_tautological(int k, int n) {
    std::vector<std::vector<int>> subsets;
    subset_labels(k, n, subsets);
    EquivariantBundleData b{n, {}};
    for (const auto& s : subsets) {
        std::vector<Weight> fiber;
        for (int i : s) fiber.push_back(unit(n, i));
        b.weights.push_back(fiber);
    }
    return b;
}

}  // namespace eqz
