#pragma once

// Moment-graph (GKM) computations for torus actions with isolated fixed
// points and isolated one-dimensional orbits.

#include <string>
#include <vector>

#include "eqz/linalg.hpp"
#include "eqz/poly.hpp"

namespace eqz {

using Weight = std::vector<int>;

struct GkmEdge {
    int from = 0;
    int to = 0;
    Weight alpha;  // character of the torus on the orbit
};

class MomentGraph {
public:
    MomentGraph(int rank, std::vector<std::string> vertices, std::vector<GkmEdge> edges);

    int rank() const { return rank_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<GkmEdge>& edges() const { return edges_; }
    int vertex_index(const std::string& label) const;
    std::size_t connected_components() const;

    /// x1..xr, used for classes in both cohomology and K-theory.
    VarList variables() const;

    /// P^1 with a rank-one torus acting with weight 1.
    static MomentGraph projective_line();
    /// P^n under the diagonal torus of GL_{n+1}.
    static MomentGraph projective_space(int n);
    static MomentGraph p1_times_p1();
    /// Complete flags in C^3 under the torus of GL_3: vertices S_3 in
    /// one-line notation, edges w -- (a b) w labelled e_a - e_b.
    static MomentGraph flag_sl3();
    /// Gr(k, n) under the torus of GL_n: vertices k-subsets, edges swap
    /// one element, labelled e_i - e_j.
    static MomentGraph grassmannian(int k, int n);

private:
    int rank_;
    std::vector<std::string> vertices_;
    std::vector<GkmEdge> edges_;
};

/// Linear form <alpha, x>.
MultiPoly linear_form(const VarList& vars, const Weight& alpha);
/// Monomial x^alpha.
LaurentPoly character(const VarList& vars, const Weight& alpha);

struct CohomologyClass {
    std::vector<MultiPoly> values;  // one per vertex
};

struct KTheoryClass {
    std::vector<LaurentPoly> values;

    friend KTheoryClass operator+(const KTheoryClass& a, const KTheoryClass& b);
    friend KTheoryClass operator*(const KTheoryClass& a, const KTheoryClass& b);
};

/// Fiber weights at every vertex.
struct EquivariantBundleData {
    int torus_rank = 0;
    std::vector<std::vector<Weight>> weights;

    std::size_t rank() const;  // throws unless every vertex has the same count
    /// Concatenation of weight multisets.
    friend EquivariantBundleData operator+(const EquivariantBundleData& a, const EquivariantBundleData& b);
};

struct EdgeReport {
    bool ok = true;
    std::vector<std::size_t> violated;  // edge indices
};

/// Dimension of degree-d GKM classes (d counts real degree, so classes are
/// polynomials of degree d/2).  Odd d gives 0.
long gkm_cohomology_dim(const MomentGraph& g, int d);

EdgeReport gkm_cohomology_check(const CohomologyClass& c, const MomentGraph& g);
/// Every edge difference divisible by x^alpha - 1.
EdgeReport gkm_ktheory_check(const KTheoryClass& c, const MomentGraph& g);

/// Per-vertex weights agree along each edge modulo the edge character.
EdgeReport bundle_consistency(const EquivariantBundleData& b, const MomentGraph& g);

/// Sum of x^lambda over the fiber weights.
KTheoryClass localize_bundle_K(const EquivariantBundleData& b);
/// e_k of the linear forms <lambda, x>.
CohomologyClass localize_chern(const EquivariantBundleData& b, int k);

/// At each vertex, sum_i exp(<lambda_i, x>) truncated to total order n equals
/// the Chern character rebuilt from localize_chern via Newton's identities.
bool chern_character_check(const EquivariantBundleData& b, int n);
/// Power sums p_1..p_n at one vertex recovered from e_1..e_rank.
std::vector<MultiPoly> power_sums_from_elementary(const std::vector<MultiPoly>& e, int n);

/// P(t) / (1 - t^2)^r with P the Betti polynomial.
RationalSeries formality_series(const std::vector<long>& betti, int r);

/// Transports c along (perm, mat): vertex i gets c_{perm(i)}(mat x).
/// Throws StructuralError unless the pair maps every edge to an edge with
/// mat^T alpha' = +-alpha.
bool weyl_transport_check(const CohomologyClass& c, const MomentGraph& g, const std::vector<int>& perm,
                          const IntMatrix& mat);
CohomologyClass weyl_transport(const CohomologyClass& c, const MomentGraph& g, const std::vector<int>& perm,
                               const IntMatrix& mat);

// Tautological bundle data on the standard graphs.
/// O(k) on projective_space(n): weight k e_i at vertex i.
EquivariantBundleData projective_line_bundle(int n, int k);
/// Tangent bundle of P^1 on projective_line(): {alpha} and {-alpha}.
EquivariantBundleData p1_tangent();
/// L_j on flag_sl3(): weight e_{w(j)} at vertex w.
EquivariantBundleData flag_line_bundle(int j);
/// Tautological rank-k subbundle on grassmannian(k, n): weights e_i, i in S.
EquivariantBundleData grassmannian_tautological(int k, int n);

}  // namespace eqz
