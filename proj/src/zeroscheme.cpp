#include "eqz/zeroscheme.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <set>
#include <sstream>

namespace eqz {

namespace {

std::vector<std::string> names_of(const VarList& v) {
    std::vector<std::string> r;
    for (std::size_t i = 0; i < v.size(); ++i) r.push_back(v[i]);
    return r;
}

VarList concat(const VarList& a, const VarList& b) {
    auto n = names_of(a);
    const auto m = names_of(b);
    n.insert(n.end(), m.begin(), m.end());
    return VarList(n);
}

MultiPoly monic(MultiPoly p) {
    if (p.is_zero()) return p;
    const Rational lead = p.terms().begin()->second;
    return p * lead.inverse();
}

// Normalized, deduplicated, nonzero generators in input order.
std::vector<MultiPoly> tidy(const std::vector<MultiPoly>& gens) {
    std::vector<MultiPoly> out;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        auto m = monic(g);
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(std::move(m));
    }
    return out;
}

void require_homogeneous(const std::vector<MultiPoly>& gens, const WeightedGrading& g, const std::string& where) {
    for (const auto& f : gens)
        if (!f.weighted_degree(g))
            throw StructuralError(where + ": generator " + f.str() +
                                  " is not homogeneous; the H^t data does not match the section");
}

MultiPoly embed_by_name(const MultiPoly& p, const VarList& ring) { return p.embed(ring); }

}  // namespace

// ---------------------------------------------------------------- spaces

ChartedSpace::ChartedSpace(std::vector<std::string> homogeneous_names, std::vector<MultiPoly> equations,
                           std::vector<std::vector<std::string>> chart_names)
    : homogeneous_(homogeneous_names), equations_(std::move(equations)) {
    const std::size_t m = homogeneous_.size();
    if (m == 0) throw StructuralError("a projective space needs at least one coordinate");
    const WeightedGrading standard{std::vector<int>(m, 1)};
    for (const auto& e : equations_) {
        if (!(e.vars() == homogeneous_)) throw StructuralError("equations must use the homogeneous coordinates");
        if (!e.weighted_degree(standard)) throw StructuralError("equation " + e.str() + " is not homogeneous");
    }
    if (!chart_names.empty() && chart_names.size() != m) throw StructuralError("one name list per chart required");
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::string> names;
        if (chart_names.empty()) {
            for (std::size_t j = 0; j < m; ++j)
                if (j != i) names.push_back(homogeneous_[j] + "_" + std::to_string(i));
        } else {
            names = chart_names[i];
            if (names.size() + 1 != m) throw StructuralError("chart " + std::to_string(i) + " has the wrong arity");
        }
        charts_.emplace_back(names);
    }
}

ChartedSpace ChartedSpace::projective(int n) {
    if (n < 0) throw std::domain_error("projective: n must be nonnegative");
    std::vector<std::string> names;
    for (int i = 0; i <= n; ++i) names.push_back("x" + std::to_string(i));
    return ChartedSpace(names);
}

ChartedSpace ChartedSpace::grassmannian_2_4() {
    const VarList p{"p12", "p13", "p14", "p23", "p24", "p34"};
    return ChartedSpace(names_of(p), {MultiPoly::parse("p12*p34 - p13*p24 + p14*p23", p)});
}

const VarList& ChartedSpace::chart_vars(std::size_t i) const {
    if (i >= charts_.size()) throw std::out_of_range("chart index out of range");
    return charts_[i];
}

MultiPoly ChartedSpace::dehomogenize(const MultiPoly& f, std::size_t chart, const VarList& ring) const {
    const VarList& cv = chart_vars(chart);
    std::vector<MultiPoly> images;
    for (std::size_t k = 0; k < f.vars().size(); ++k) {
        const auto h = homogeneous_.find(f.vars()[k]);
        if (!h) {
            images.push_back(MultiPoly::variable(ring, f.vars()[k]));
        } else if (*h == chart) {
            images.push_back(MultiPoly::constant(ring, 1));
        } else {
            images.push_back(MultiPoly::variable(ring, cv[*h < chart ? *h : *h - 1]));
        }
    }
    return f.substitute(images);
}

MultiPoly ChartedSpace::homogenize(const MultiPoly& f, std::size_t chart, const VarList& ring) const {
    const VarList& cv = chart_vars(chart);
    // position of each variable of f in ring, and whether it is a chart coordinate
    std::vector<std::size_t> target(f.vars().size());
    std::vector<bool> is_chart(f.vars().size(), false);
    for (std::size_t k = 0; k < f.vars().size(); ++k) {
        const auto c = cv.find(f.vars()[k]);
        if (c) {
            is_chart[k] = true;
            const std::size_t j = *c < chart ? *c : *c + 1;
            target[k] = ring.index_of(homogeneous_[j]);
        } else {
            target[k] = ring.index_of(f.vars()[k]);
        }
    }
    const std::size_t xi = ring.index_of(homogeneous_[chart]);
    int top = 0;
    for (const auto& [e, c] : f.terms()) {
        int deg = 0;
        for (std::size_t k = 0; k < e.size(); ++k)
            if (is_chart[k]) deg += e[k];
        top = std::max(top, deg);
    }
    MultiPoly out(ring);
    for (const auto& [e, c] : f.terms()) {
        Exponent ne(ring.size(), 0);
        int deg = 0;
        for (std::size_t k = 0; k < e.size(); ++k) {
            ne[target[k]] += e[k];
            if (is_chart[k]) deg += e[k];
        }
        ne[xi] += top - deg;
        out.add_term(ne, c);
    }
    return out;
}

bool ChartedSpace::transitions_consistent(int degree) const {
    // a_k^(i) = x_k/x_i = a_k^(j) / a_i^(j), a Laurent monomial map
    auto transition = [&](std::size_t i, std::size_t j) {
        const VarList& src = chart_vars(i);
        const VarList& dst = chart_vars(j);
        auto coord = [&](std::size_t chart, std::size_t k, const VarList& names) {
            return names[k < chart ? k : k - 1];
        };
        std::vector<LaurentPoly> images;
        const LaurentPoly denom = LaurentPoly::variable(dst, coord(j, i, dst)).pow(-1);
        for (std::size_t k = 0; k < chart_count(); ++k) {
            if (k == i) continue;
            const LaurentPoly num =
                k == j ? LaurentPoly::constant(dst, 1) : LaurentPoly::variable(dst, coord(j, k, dst));
            images.push_back(num * denom);
        }
        (void)src;
        return images;
    };
    for (std::size_t i = 0; i < chart_count(); ++i)
        for (std::size_t j = 0; j < chart_count(); ++j) {
            if (i == j) continue;
            const auto there = transition(i, j), back = transition(j, i);
            const VarList& src = chart_vars(i);
            for (int d = 0; d <= degree; ++d)
                for (const auto& e : monomials_of_weighted_degree(std::vector<int>(src.size(), 1), d)) {
                    const LaurentPoly m = LaurentPoly::monomial(src, e);
                    if (!(m.substitute(there).substitute(back) == m)) return false;
                }
        }
    return true;
}

// ---------------------------------------------------------------- actions

ChartedAction::ChartedAction(ChartedSpace space, Representation rep, int n)
    : space_(std::move(space)), rep_(rep), n_(n) {
    const auto dim = static_cast<int>(space_.chart_count());
    const int expected = rep_ == Representation::Standard ? n_ : n_ * (n_ - 1) / 2;
    if (n_ < 1 || dim != expected)
        throw StructuralError("representation of gl_" + std::to_string(n_) + " does not act on a space with " +
                              std::to_string(dim) + " homogeneous coordinates");
}

namespace {

// Basis e_a ^ e_b (a < b) in lexicographic order.
std::vector<std::pair<int, int>> wedge_basis(int n) {
    std::vector<std::pair<int, int>> b;
    for (int a = 0; a < n; ++a)
        for (int c = a + 1; c < n; ++c) b.emplace_back(a, c);
    return b;
}

template <class Matrix, class Entry, class Zero>
Matrix wedge2(const Matrix& m, int n, Zero zero) {
    const auto basis = wedge_basis(n);
    auto index = [&](int a, int b) {
        return static_cast<Eigen::Index>(std::find(basis.begin(), basis.end(), std::make_pair(a, b)) - basis.begin());
    };
    Matrix r = zero(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t col = 0; col < basis.size(); ++col) {
        const auto [a, b] = basis[col];
        // M e_a ^ e_b + e_a ^ M e_b
        for (int c = 0; c < n; ++c) {
            const Entry& mca = m(c, a);
            if (c != b && !mca.is_zero()) {
                if (c < b) r(index(c, b), static_cast<Eigen::Index>(col)) += mca;
                else r(index(b, c), static_cast<Eigen::Index>(col)) -= mca;
            }
            const Entry& mcb = m(c, b);
            if (c != a && !mcb.is_zero()) {
                if (a < c) r(index(a, c), static_cast<Eigen::Index>(col)) += mcb;
                else r(index(c, a), static_cast<Eigen::Index>(col)) -= mcb;
            }
        }
    }
    return r;
}

}  // namespace

PolyMatrix ChartedAction::rho(const PolyMatrix& m) const {
    if (m.size() != n_) throw StructuralError("matrix size does not match the representation");
    if (rep_ == Representation::Standard) return m;
    return wedge2<PolyMatrix, MultiPoly>(m, n_, [&](Eigen::Index k) { return PolyMatrix(m.vars(), k); });
}

RationalMatrix ChartedAction::rho(const RationalMatrix& m) const {
    if (m.rows() != n_ || m.cols() != n_) throw StructuralError("matrix size does not match the representation");
    if (rep_ == Representation::Standard) return m;
    return wedge2<RationalMatrix, Rational>(
        m, n_, [](Eigen::Index k) { return RationalMatrix::Constant(k, k, Rational(0)); });
}

std::vector<int> ChartedAction::coordinate_weights(const OneParamSubgroup& h) const {
    if (static_cast<int>(h.exponents.size()) != n_) throw StructuralError("one-parameter subgroup has the wrong size");
    RationalMatrix d = RationalMatrix::Constant(n_, n_, Rational(0));
    for (int i = 0; i < n_; ++i) d(i, i) = Rational(h.exponents[static_cast<std::size_t>(i)]);
    const RationalMatrix r = rho(d);
    std::vector<int> w;
    for (Eigen::Index j = 0; j < r.rows(); ++j) w.push_back(-static_cast<int>(r(j, j).to_long()));
    return w;
}

std::string to_string(ChartedAction::Representation rep) {
    return rep == ChartedAction::Representation::Standard ? "standard" : "wedge2";
}

namespace {

// (R x)_j - a_j (R x)_i on chart i for a matrix R on the homogeneous coordinates.
std::vector<MultiPoly> chart_components(const PolyMatrix& r, const ChartedSpace& space, std::size_t chart) {
    const std::size_t m = space.chart_count();
    if (static_cast<std::size_t>(r.size()) != m) throw StructuralError("matrix size does not match the space");
    const VarList& cv = space.chart_vars(chart);
    const VarList ring = concat(r.vars(), cv);
    std::vector<MultiPoly> x;
    for (std::size_t j = 0; j < m; ++j)
        x.push_back(j == chart ? MultiPoly::constant(ring, 1)
                               : MultiPoly::variable(ring, cv[j < chart ? j : j - 1]));
    std::vector<MultiPoly> rx;
    for (std::size_t j = 0; j < m; ++j) {
        MultiPoly s(ring);
        for (std::size_t l = 0; l < m; ++l) {
            const auto& e = r(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l));
            if (!e.is_zero()) s += e.embed(ring) * x[l];
        }
        rx.push_back(s);
    }
    std::vector<MultiPoly> out;
    for (std::size_t j = 0; j < m; ++j)
        if (j != chart) out.push_back(rx[j] - x[j] * rx[chart]);
    return out;
}

}  // namespace

std::vector<MultiPoly> vector_field_chart(const PolyMatrix& m, const ChartedAction& action, std::size_t chart) {
    if (chart >= action.space().chart_count()) throw std::out_of_range("chart index out of range");
    return chart_components(action.rho(m), action.space(), chart);
}

std::vector<MultiPoly> fixed_locus_ideal(const PolyMatrix& g, const ChartedSpace& space, std::size_t chart) {
    if (chart >= space.chart_count()) throw std::out_of_range("chart index out of range");
    std::vector<MultiPoly> out;
    for (auto& f : chart_components(g, space, chart))
        if (!f.is_zero()) out.push_back(std::move(f));
    return out;
}

// ---------------------------------------------------------------- model

struct ZeroSchemeModel::Cache {
    std::mutex mutex;
    std::map<unsigned, std::unique_ptr<GroebnerBasis>> saturated;
};

ZeroSchemeModel::ZeroSchemeModel(SectionFamily section, ChartedAction action, CechOptions options)
    : section_(std::move(section)), action_(std::move(action)), options_(options),
      cache_(std::make_shared<Cache>()) {
    const ChartedSpace& space = action_.space();
    if (section_.matrix_size() != action_.lie_size())
        throw StructuralError("section and action have different matrix sizes");
    if (space.chart_count() > 16) throw StructuralError("too many charts");
    ring_ = concat(section_.parameters, space.homogeneous_vars());
    coordinate_weights_ = action_.coordinate_weights(section_.subgroup);
    if (section_.grading.weights.size() != section_.parameters.size())
        throw StructuralError("section grading does not match its parameters");
    grading_.weights = section_.grading.weights;
    grading_.weights.insert(grading_.weights.end(), coordinate_weights_.begin(), coordinate_weights_.end());

    // homogeneous ideal: 2x2 minors of [x | rho(M) x] and the space equations
    const PolyMatrix r = action_.rho(section_.generic_element());
    const std::size_t m = space.chart_count();
    const std::size_t np = section_.parameters.size();
    std::vector<MultiPoly> x, rx;
    for (std::size_t j = 0; j < m; ++j) x.push_back(MultiPoly::variable(ring_, np + j));
    for (std::size_t j = 0; j < m; ++j) {
        MultiPoly s(ring_);
        for (std::size_t l = 0; l < m; ++l) {
            const auto& e = r(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l));
            if (!e.is_zero()) s += embed_by_name(e, ring_) * x[l];
        }
        rx.push_back(s);
    }
    std::vector<MultiPoly> gens;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) gens.push_back(x[i] * rx[j] - x[j] * rx[i]);
    for (const auto& e : space.equations()) gens.push_back(e.embed(ring_));
    generators_ = tidy(gens);
    require_homogeneous(generators_, grading_, "homogeneous ideal");
    require_homogeneous(generators_, WeightedGrading{[&] {
                            std::vector<int> w(np, 0);
                            w.insert(w.end(), m, 1);
                            return w;
                        }()},
                        "homogeneous ideal");

    const PolyMatrix generic = section_.generic_element();
    for (std::size_t i = 0; i < m; ++i) {
        const VarList vars = concat(section_.parameters, space.chart_vars(i));
        WeightedGrading grading{section_.grading.weights};
        for (std::size_t j = 0; j < m; ++j)
            if (j != i) grading.weights.push_back(coordinate_weights_[j] - coordinate_weights_[i]);
        std::vector<MultiPoly> g = vector_field_chart(generic, action_, i);
        for (const auto& e : space.equations()) g.push_back(space.dehomogenize(e, i, vars));
        g = tidy(g);
        require_homogeneous(g, grading, "chart " + std::to_string(i));
        GroebnerBasis basis = buchberger(g, MonomialOrder::grevlex(), vars);
        charts_.push_back(ChartIdeal{i, vars, std::move(g), std::move(basis), std::move(grading)});
    }
}

const GroebnerBasis& ZeroSchemeModel::saturated(unsigned mask) const {
    std::lock_guard lock(cache_->mutex);
    auto& slot = cache_->saturated[mask];
    if (!slot) {
        const std::size_t np = section_.parameters.size();
        MultiPoly f = MultiPoly::constant(ring_, 1);
        for (std::size_t j = 0; j < action_.space().chart_count(); ++j)
            if (mask & (1u << j)) f = f * MultiPoly::variable(ring_, np + j);
        if (generators_.empty())
            slot = std::make_unique<GroebnerBasis>(ring_, MonomialOrder::grevlex(), std::vector<MultiPoly>{});
        else
            slot = std::make_unique<GroebnerBasis>(saturate(generators_, f));
    }
    return *slot;
}

ZeroSchemeModel ZeroSchemeModel::with_options(CechOptions options) const {
    ZeroSchemeModel copy = *this;
    copy.options_ = options;
    return copy;
}

ZeroSchemeModel build_zero_scheme(const SectionFamily& section, const ChartedAction& action, CechOptions options) {
    return ZeroSchemeModel(section, action, options);
}

bool charts_compatible(const ZeroSchemeModel& z) {
    const ChartedSpace& space = z.action().space();
    const std::size_t np = z.parameters().size();
    for (std::size_t i = 0; i < space.chart_count(); ++i)
        for (std::size_t j = i + 1; j < space.chart_count(); ++j) {
            const MultiPoly xij = MultiPoly::variable(z.ring(), np + i) * MultiPoly::variable(z.ring(), np + j);
            auto lift = [&](std::size_t c) {
                std::vector<MultiPoly> h;
                for (const auto& g : z.chart(c).generators) h.push_back(space.homogenize(g, c, z.ring()));
                if (h.empty()) return GroebnerBasis(z.ring(), MonomialOrder::grevlex(), {});
                return saturate(h, xij);
            };
            if (!(lift(i) == lift(j))) return false;
        }
    return true;
}

// ---------------------------------------------------------------- Cech

namespace {

struct Cell {
    unsigned mask;
    std::vector<std::size_t> coords;
    const GroebnerBasis* basis;
};

struct Layer {
    int power = 0;
    std::vector<std::pair<std::size_t, Exponent>> elements;  // (cell, exponent of F)
    std::vector<std::map<Exponent, int>> index;               // per cell
};

class CechComplex {
public:
    CechComplex(const ZeroSchemeModel& z, long d) : z_(z), d_(d) {
        const std::size_t m = z.action().space().chart_count();
        np_ = z.parameters().size();
        cells_.resize(m);
        for (unsigned mask = 1; mask < (1u << m); ++mask) {
            const GroebnerBasis& gb = z.saturated(mask);
            if (gb.is_unit_ideal()) continue;
            Cell c{mask, {}, &gb};
            for (std::size_t j = 0; j < m; ++j)
                if (mask & (1u << j)) c.coords.push_back(j);
            cells_[c.coords.size() - 1].push_back(std::move(c));
        }
        for (std::size_t k = 0; k < m; ++k) cell_pos_.emplace_back();
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t c = 0; c < cells_[k].size(); ++c) cell_pos_[k][cells_[k][c].mask] = c;
    }

    std::size_t top() const { return cells_.size() - 1; }

    const Layer& layer(std::size_t k, int n) {
        auto key = std::make_pair(k, n);
        auto it = layers_.find(key);
        if (it != layers_.end()) return it->second;
        Layer l;
        l.power = n;
        const auto& cw = z_.coordinate_weights();
        const std::size_t m = cw.size();
        const std::vector<int> ones(m, 1);
        const auto& pw = z_.section().grading.weights;
        for (std::size_t c = 0; c < cells_[k].size(); ++c) {
            const Cell& cell = cells_[k][c];
            l.index.emplace_back();
            long target = d_;
            for (auto j : cell.coords) target += static_cast<long>(n) * cw[j];
            const int xdeg = n * static_cast<int>(cell.coords.size());
            for (const auto& xm : monomials_of_weighted_degree(ones, xdeg)) {
                long wx = 0;
                for (std::size_t j = 0; j < m; ++j) wx += static_cast<long>(cw[j]) * xm[j];
                const long rest = target - wx;
                for (const auto& pm : param_monomials(pw, rest)) {
                    Exponent e = pm;
                    e.insert(e.end(), xm.begin(), xm.end());
                    if (!cell.basis->is_standard(e)) continue;
                    l.index.back().emplace(e, static_cast<int>(l.elements.size()));
                    l.elements.emplace_back(c, std::move(e));
                }
            }
        }
        return layers_.emplace(key, std::move(l)).first->second;
    }

    // Image of one basis element of layer k under the differential, in layer k+1.
    SparseVector<Rational> differential(std::size_t k, const Layer& src, std::size_t elt, const Layer& dst) {
        const auto& [c, e] = src.elements[elt];
        const Cell& cell = cells_[k][c];
        std::map<int, Rational> acc;
        const std::size_t m = z_.coordinate_weights().size();
        for (std::size_t j = 0; j < m; ++j) {
            if (cell.mask & (1u << j)) continue;
            const unsigned tmask = cell.mask | (1u << j);
            const auto pos = cell_pos_[k + 1].find(tmask);
            if (pos == cell_pos_[k + 1].end()) continue;  // empty overlap
            int slot = 0;
            for (auto i : cell.coords)
                if (i < j) ++slot;
            const Rational sign(slot % 2 ? -1 : 1);
            Exponent shifted = e;
            shifted[np_ + j] += src.power;
            const Cell& target = cells_[k + 1][pos->second];
            const MultiPoly nf = target.basis->normal_form(MultiPoly::monomial(z_.ring(), shifted));
            const auto& index = dst.index[pos->second];
            for (const auto& [te, tc] : nf.terms()) {
                const auto hit = index.find(te);
                if (hit == index.end()) throw std::logic_error("normal form left the graded piece");
                acc[hit->second] += sign * tc;
            }
        }
        SparseVector<Rational> v;
        for (auto& [i, x] : acc)
            if (!x.is_zero()) v.emplace_back(i, x);
        return v;
    }

    // Multiplication by x_sigma^(N'-N) from layer (k, N) into layer (k, N').
    SparseVector<Rational> lift(std::size_t k, const Layer& src, const SparseVector<Rational>& v, const Layer& dst) {
        std::map<int, Rational> acc;
        for (const auto& [i, coef] : v) {
            const auto& [c, e] = src.elements[static_cast<std::size_t>(i)];
            const Cell& cell = cells_[k][c];
            Exponent shifted = e;
            for (auto j : cell.coords) shifted[np_ + j] += dst.power - src.power;
            const MultiPoly nf = cell.basis->normal_form(MultiPoly::monomial(z_.ring(), shifted));
            for (const auto& [te, tc] : nf.terms()) acc[dst.index[c].at(te)] += coef * tc;
        }
        SparseVector<Rational> out;
        for (auto& [i, x] : acc)
            if (!x.is_zero()) out.emplace_back(i, x);
        return out;
    }

    std::vector<SparseVector<Rational>> cocycles(std::size_t k, int n) {
        const Layer& src = layer(k, n);
        const int cols = static_cast<int>(src.elements.size());
        if (k == top()) {
            std::vector<SparseVector<Rational>> all;
            for (int i = 0; i < cols; ++i) all.push_back({{i, Rational(1)}});
            return all;
        }
        const Layer& dst = layer(k + 1, n);
        std::vector<std::map<int, Rational>> rows(dst.elements.size());
        for (std::size_t i = 0; i < src.elements.size(); ++i)
            for (const auto& [r, x] : differential(k, src, i, dst)) rows[static_cast<std::size_t>(r)][static_cast<int>(i)] = x;
        std::vector<SparseVector<Rational>> sparse_rows;
        for (auto& row : rows)
            if (!row.empty()) sparse_rows.emplace_back(row.begin(), row.end());
        return sparse_kernel(sparse_rows, cols);
    }

    long dimension(std::size_t k, int n, int n_lift) {
        const auto z = cocycles(k, n);
        if (k == 0) return static_cast<long>(z.size());
        const Layer& low = layer(k - 1, n_lift);
        const Layer& big = layer(k, n_lift);
        const Layer& small = layer(k, n);
        SparseEchelon<Rational> ech;
        for (std::size_t i = 0; i < low.elements.size(); ++i) ech.insert(differential(k - 1, low, i, big));
        const std::size_t boundaries = ech.rank();
        for (const auto& v : z) ech.insert(lift(k, small, v, big));
        return static_cast<long>(ech.rank() - boundaries);
    }

    long restriction_rank(std::size_t chart, int n) {
        const auto z = cocycles(0, n);
        const Layer& l = layer(0, n);
        SparseEchelon<Rational> ech;
        for (const auto& v : z) {
            SparseVector<Rational> r;
            for (const auto& [i, x] : v)
                if (cells_[0][l.elements[static_cast<std::size_t>(i)].first].coords.front() == chart) r.emplace_back(i, x);
            if (!r.empty()) ech.insert(r);
        }
        return static_cast<long>(ech.rank());
    }

private:
    const std::vector<Exponent>& param_monomials(const std::vector<int>& w, long degree) {
        auto it = params_.find(degree);
        if (it != params_.end()) return it->second;
        auto r = monomials_of_weighted_degree(w, degree);
        return params_.emplace(degree, std::move(r)).first->second;
    }

    const ZeroSchemeModel& z_;
    long d_;
    std::size_t np_ = 0;
    std::vector<std::vector<Cell>> cells_;
    std::vector<std::map<unsigned, std::size_t>> cell_pos_;
    std::map<std::pair<std::size_t, int>, Layer> layers_;
    std::map<long, std::vector<Exponent>> params_;
};

void check_bound(const ZeroSchemeModel& z, long d) {
    if (d > z.options().degree_bound)
        throw TruncationRefused("degree " + std::to_string(d) + " exceeds the truncation bound " +
                                std::to_string(z.options().degree_bound));
}

}  // namespace

CechDimension cech_cohomology(const ZeroSchemeModel& z, int i, long d) {
    if (i < 0) throw std::domain_error("cohomological index must be nonnegative");
    check_bound(z, d);
    CechDimension out;
    if (static_cast<std::size_t>(i) >= z.action().space().chart_count()) return out;
    for (const auto& w : z.section().grading.weights)
        if (w <= 0) throw StructuralError("section parameters need positive weights");
    CechComplex complex(z, d);
    const auto& opt = z.options();
    auto lifted = [&](int n) { return opt.lift > 0 ? n + opt.lift : 2 * n + 1; };
    if (opt.power > 0) {
        out.power = opt.power;
        out.lifted_power = lifted(opt.power);
        out.dim = complex.dimension(static_cast<std::size_t>(i), out.power, out.lifted_power);
        return out;
    }
    long previous = complex.dimension(static_cast<std::size_t>(i), 1, lifted(1));
    for (int n = 2; n <= std::max(2, opt.max_power); ++n) {
        const long current = complex.dimension(static_cast<std::size_t>(i), n, lifted(n));
        if (current == previous) {
            out.dim = current;
            out.power = n;
            out.lifted_power = lifted(n);
            return out;
        }
        previous = current;
    }
    out.dim = previous;
    out.power = std::max(2, opt.max_power);
    out.lifted_power = lifted(out.power);
    out.stable = false;
    return out;
}

long cech_cohomology_dim(const ZeroSchemeModel& z, int i, long d) { return cech_cohomology(z, i, d).dim; }

long global_sections_dim(const ZeroSchemeModel& z, long d) { return cech_cohomology(z, 0, d).dim; }

long restriction_rank(const ZeroSchemeModel& z, std::size_t chart, long d) {
    check_bound(z, d);
    if (chart >= z.action().space().chart_count()) throw std::out_of_range("chart index out of range");
    const auto full = cech_cohomology(z, 0, d);
    CechComplex complex(z, d);
    return complex.restriction_rank(chart, full.power);
}

// ---------------------------------------------------------------- series

PoincareReport detect_closed_form(std::vector<long> coefficients, int max_exponent) {
    PoincareReport rep;
    rep.coefficients = coefficients;
    const long n = static_cast<long>(coefficients.size());
    std::vector<long> prod = coefficients;
    for (int r = 0; r <= max_exponent; ++r) {
        if (r > 0) {
            // multiply by (1 - t^2)
            for (long k = n - 1; k >= 2; --k) prod[static_cast<std::size_t>(k)] -= prod[static_cast<std::size_t>(k - 2)];
        }
        long last = -1;
        for (long k = 0; k < n; ++k)
            if (prod[static_cast<std::size_t>(k)] != 0) last = k;
        // demand a margin of trailing zeros so the match is not an accident of truncation
        if (last + 4 >= n) continue;
        rep.numerator = std::vector<long>(prod.begin(), prod.begin() + std::max(1L, last + 1));
        rep.denominator_exponent = r;
        std::ostringstream os;
        std::string num;
        for (long k = 0; k <= last; ++k) {
            const long c = prod[static_cast<std::size_t>(k)];
            if (c == 0) continue;
            if (!num.empty()) num += c < 0 ? " - " : " + ";
            else if (c < 0) num += "-";
            const long a = std::abs(c);
            if (k == 0) num += std::to_string(a);
            else {
                if (a != 1) num += std::to_string(a) + "*";
                num += k == 1 ? "t" : "t^" + std::to_string(k);
            }
        }
        if (num.empty()) num = "0";
        if (r == 0) rep.closed_form = num;
        else {
            const bool wrap = num.find(' ') != std::string::npos;
            os << (wrap ? "(" + num + ")" : num) << "/(1 - t^2)";
            if (r > 1) os << "^" << r;
            rep.closed_form = os.str();
        }
        return rep;
    }
    return rep;
}

PoincareReport poincare_series_report(const ZeroSchemeModel& z, long bound) {
    check_bound(z, bound);
    std::vector<long> c;
    for (long d = 0; d <= bound; ++d) c.push_back(global_sections_dim(z, d));
    return detect_closed_form(std::move(c), static_cast<int>(z.parameters().size()) + 2);
}

// ---------------------------------------------------------------- curves

void ComponentCurveSet::validate() const {
    const VarList u{"u"};
    for (const auto& c : components) {
        if (c.weight < 0) throw StructuralError("component weight must be nonnegative");
        if (c.weight > 0) {
            if (c.coordinates.size() != ambient.size())
                throw StructuralError("component " + c.name + " has the wrong number of coordinates");
            for (const auto& p : c.coordinates)
                if (!(p.vars() == u)) throw StructuralError("line coordinates must be polynomials in u");
        } else {
            for (const auto& e : c.equations)
                if (!(e.vars() == ambient)) throw StructuralError("equations must use the ambient coordinates");
        }
    }
    for (const auto& inc : incidences) {
        if (inc.first >= components.size() || inc.second >= components.size())
            throw StructuralError("incidence refers to a missing component");
        if (inc.point.size() != ambient.size()) throw StructuralError("incidence point has the wrong arity");
        for (auto [idx, param] : {std::pair{inc.first, inc.first_parameter}, std::pair{inc.second, inc.second_parameter}}) {
            const auto& c = components[idx];
            if (c.weight > 0) {
                for (std::size_t k = 0; k < ambient.size(); ++k)
                    if (!(c.coordinates[k].evaluate({param}) == inc.point[k]))
                        throw StructuralError("incidence point is not on component " + c.name);
            } else {
                for (const auto& e : c.equations)
                    if (!e.evaluate(inc.point).is_zero())
                        throw StructuralError("incidence point is not on component " + c.name);
            }
        }
    }
}

long reduced_ring_dims(const ComponentCurveSet& c, long d) {
    c.validate();
    if (d < 0) return 0;
    // one unknown per component carrying a degree-d function
    std::vector<int> unknown(c.components.size(), -1);
    int count = 0;
    for (std::size_t i = 0; i < c.components.size(); ++i) {
        const int w = c.components[i].weight;
        if ((w == 0 && d == 0) || (w > 0 && d % w == 0)) unknown[i] = count++;
    }
    auto value = [&](std::size_t comp, const Rational& param) {
        const int w = c.components[comp].weight;
        return w == 0 ? Rational(1) : param.pow(static_cast<int>(d / w));
    };
    std::vector<SparseVector<Rational>> rows;
    for (const auto& inc : c.incidences) {
        std::map<int, Rational> row;
        if (unknown[inc.first] >= 0) row[unknown[inc.first]] += value(inc.first, inc.first_parameter);
        if (unknown[inc.second] >= 0) row[unknown[inc.second]] -= value(inc.second, inc.second_parameter);
        SparseVector<Rational> v;
        for (auto& [k, x] : row)
            if (!x.is_zero()) v.emplace_back(k, x);
        if (!v.empty()) rows.push_back(std::move(v));
    }
    return count - static_cast<long>(sparse_rank(rows));
}

}  // namespace eqz
