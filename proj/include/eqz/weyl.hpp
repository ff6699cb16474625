#pragma once

#include <optional>
#include <vector>

#include "eqz/linalg.hpp"
#include "eqz/poly.hpp"

namespace eqz {

/// A finite group of integer r x r matrices acting on Q[x_1..x_r] by
/// x_i -> sum_j g(i,j) x_j.  Elements may carry a paired permutation of
/// moment-graph vertices.
class FiniteActionGroup {
public:
    using Permutation = std::vector<int>;

    /// Checks closure, identity and inverses exhaustively.
    explicit FiniteActionGroup(std::vector<IntMatrix> elements, std::vector<Permutation> permutations = {});

    /// Closure of a generating set under products.
    static FiniteActionGroup generated_by(const std::vector<IntMatrix>& generators);
    /// Paired closure; permutation i goes with matrix i.
    static FiniteActionGroup generated_by(const std::vector<IntMatrix>& generators,
                                          const std::vector<Permutation>& permutations);
    static FiniteActionGroup symmetric(int n);
    static FiniteActionGroup trivial(int r);

    int rank() const { return rank_; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<IntMatrix>& elements() const { return elements_; }
    const std::vector<Permutation>& permutations() const { return permutations_; }

private:
    int rank_ = 0;
    std::vector<IntMatrix> elements_;
    std::vector<Permutation> permutations_;
};

/// p(g x): the substitution x_i -> sum_j g(i,j) x_j.
MultiPoly act(const IntMatrix& g, const MultiPoly& p);

/// Average of p over the group.
MultiPoly reynolds(const MultiPoly& p, const FiniteActionGroup& g);

/// Dimension of the degree-d invariants (common fixed space of all
/// elements on the degree-d monomial basis).
long invariant_dim(const FiniteActionGroup& g, int d);

/// Molien coefficients 0..n of (1/|G|) sum_g 1/det(1 - t g).
std::vector<Rational> molien_coefficients(const FiniteActionGroup& g, int n);

/// Elementary symmetric polynomial e_k(x_1..x_r).
MultiPoly elementary_symmetric(const VarList& vars, int k);

}  // namespace eqz
