#pragma once

// Exact linear algebra over a field: dense routines on Eigen matrices and a
// sparse incremental echelon form for the larger truncated systems.

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "eqz/rational.hpp"

namespace eqz {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using RationalMatrix = DenseMatrix<Rational>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using IntMatrix = Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic>;

/// Reduced row echelon form in place; returns the pivot columns.
template <class Scalar>
std::vector<Eigen::Index> rref_in_place(DenseMatrix<Scalar>& m) {
    std::vector<Eigen::Index> pivots;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index p = row;
        while (p < m.rows() && m(p, col) == Scalar(0)) ++p;
        if (p == m.rows()) continue;
        m.row(p).swap(m.row(row));
        const Scalar inv = Scalar(1) / m(row, col);
        for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == Scalar(0)) continue;
            const Scalar f = m(i, col);
            for (Eigen::Index j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& m) {
    DenseMatrix<typename Derived::Scalar> a = m;
    return static_cast<Eigen::Index>(rref_in_place(a).size());
}

/// Columns form a basis of the right kernel.
template <class Derived>
DenseMatrix<typename Derived::Scalar> nullspace(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    DenseMatrix<Scalar> a = m;
    const auto pivots = rref_in_place(a);
    std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
    for (auto p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    DenseMatrix<Scalar> basis(a.cols(), a.cols() - static_cast<Eigen::Index>(pivots.size()));
    basis.setConstant(Scalar(0));
    Eigen::Index k = 0;
    for (Eigen::Index f = 0; f < a.cols(); ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        basis(f, k) = Scalar(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            basis(pivots[r], k) = -a(static_cast<Eigen::Index>(r), f);
        ++k;
    }
    return basis;
}

template <class Scalar>
using SparseVector = std::vector<std::pair<int, Scalar>>;  // sorted by index, no zeros

/// a + f * b
template <class Scalar>
SparseVector<Scalar> axpy(const SparseVector<Scalar>& a, const Scalar& f, const SparseVector<Scalar>& b) {
    SparseVector<Scalar> r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            r.emplace_back(b[j].first, f * b[j].second);
            ++j;
        } else {
            Scalar v = a[i].second + f * b[j].second;
            if (!(v == Scalar(0))) r.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return r;
}

/// Row echelon basis of a subspace, grown one vector at a time.
template <class Scalar>
class SparseEchelon {
public:
    /// Reduces v against the stored pivots until its leading index is free.
    SparseVector<Scalar> reduce(SparseVector<Scalar> v) const {
        while (!v.empty()) {
            auto it = pivot_row_.find(v.front().first);
            if (it == pivot_row_.end()) break;
            const Scalar f = -v.front().second;
            v = axpy(v, f, rows_[it->second]);
        }
        return v;
    }

    /// Adds v; returns false when v was already in the span.
    bool insert(SparseVector<Scalar> v) {
        v = reduce(std::move(v));
        if (v.empty()) return false;
        const Scalar inv = Scalar(1) / v.front().second;
        for (auto& [i, x] : v) x *= inv;
        pivot_row_.emplace(v.front().first, rows_.size());
        rows_.push_back(std::move(v));
        return true;
    }

    bool contains(const SparseVector<Scalar>& v) const { return reduce(v).empty(); }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<SparseVector<Scalar>>& rows() const { return rows_; }

    /// Fully reduced rows keyed by pivot column.
    std::map<int, SparseVector<Scalar>> reduced_rows() const {
        std::map<int, SparseVector<Scalar>> out;
        for (auto it = pivot_row_.rbegin(); it != pivot_row_.rend(); ++it) {
            SparseVector<Scalar> r = rows_[it->second];
            // eliminate every later pivot appearing in r
            bool changed = true;
            while (changed) {
                changed = false;
                for (std::size_t k = 1; k < r.size(); ++k) {
                    auto p = out.find(r[k].first);
                    if (p != out.end()) {
                        r = axpy(r, Scalar(-r[k].second), p->second);
                        changed = true;
                        break;
                    }
                }
            }
            out.emplace(it->first, std::move(r));
        }
        return out;
    }

private:
    std::vector<SparseVector<Scalar>> rows_;
    std::map<int, std::size_t> pivot_row_;
};

/// Kernel basis of the map whose matrix has the given sparse rows and
/// `cols` columns.
template <class Scalar>
std::vector<SparseVector<Scalar>> sparse_kernel(const std::vector<SparseVector<Scalar>>& rows, int cols) {
    SparseEchelon<Scalar> ech;
    for (const auto& r : rows) ech.insert(r);
    const auto red = ech.reduced_rows();
    std::vector<SparseVector<Scalar>> basis;
    std::vector<std::vector<std::pair<int, Scalar>>> by_free(static_cast<std::size_t>(cols));
    for (const auto& [p, r] : red)
        for (std::size_t k = 1; k < r.size(); ++k)
            by_free[static_cast<std::size_t>(r[k].first)].emplace_back(p, -r[k].second);
    for (int f = 0; f < cols; ++f) {
        if (red.count(f)) continue;
        SparseVector<Scalar> v = by_free[static_cast<std::size_t>(f)];
        v.emplace_back(f, Scalar(1));
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class Scalar>
std::size_t sparse_rank(const std::vector<SparseVector<Scalar>>& rows) {
    SparseEchelon<Scalar> ech;
    for (const auto& r : rows) ech.insert(r);
    return ech.rank();
}

}  // namespace eqz
