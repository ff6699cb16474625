#pragma once

// Matrix Lie algebra data: principal sl2 pairs, Kostant sections, the
// grading C*-action on a section and invariant functions restricted to it.

#include <optional>
#include <string>
#include <vector>

#include "eqz/linalg.hpp"
#include "eqz/poly.hpp"

namespace eqz {

/// Square matrix with polynomial entries over one shared variable list.
class PolyMatrix {
public:
    PolyMatrix(VarList vars, Eigen::Index n);
    static PolyMatrix from_rational(const VarList& vars, const RationalMatrix& m);
    static PolyMatrix identity(const VarList& vars, Eigen::Index n);

    Eigen::Index size() const { return n_; }
    const VarList& vars() const { return vars_; }
    MultiPoly& operator()(Eigen::Index i, Eigen::Index j) { return entries_[index(i, j)]; }
    const MultiPoly& operator()(Eigen::Index i, Eigen::Index j) const { return entries_[index(i, j)]; }

    PolyMatrix& operator+=(const PolyMatrix& o);
    PolyMatrix& operator*=(const MultiPoly& s);
    friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
    friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator*(PolyMatrix a, const MultiPoly& s) { return a *= s; }
    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

    MultiPoly trace() const;
    bool is_zero() const;
    /// Row-major canonical strings of every entry.
    std::vector<std::vector<std::string>> entry_strings() const;

private:
    std::size_t index(Eigen::Index i, Eigen::Index j) const {
        return static_cast<std::size_t>(i * n_ + j);
    }
    VarList vars_;
    Eigen::Index n_;
    std::vector<MultiPoly> entries_;
};

/// Laplace expansion along the first row.
MultiPoly determinant(const PolyMatrix& m);

/// [a, b] = ab - ba.
RationalMatrix bracket(const RationalMatrix& a, const RationalMatrix& b);
PolyMatrix bracket(const PolyMatrix& a, const PolyMatrix& b);

struct Sl2Pair {
    RationalMatrix e;
    RationalMatrix h;
    std::optional<RationalMatrix> f;

    /// [h,e] = 2e, and [e,f] = h, [h,f] = -2f when f is present.
    bool relations_hold() const;
};

/// H^t = diag(t^{d_1}, ..., t^{d_n}).
struct OneParamSubgroup {
    std::vector<int> exponents;
};

/// Principal pair of gl_n: e the upper shift, h = diag(n-1, n-3, ..., 1-n),
/// together with the sl2 partner f.
Sl2Pair principal_pair_gl(int n);

OneParamSubgroup subgroup_of(const Sl2Pair& pair);

/// Basis of the centralizer {X in gl_n : [x, X] = 0}, one matrix per entry.
std::vector<RationalMatrix> centralizer_basis(const RationalMatrix& x);
Eigen::Index centralizer_dim(const RationalMatrix& x);

/// Affine family base + sum_k p_k * directions[k].
struct SectionFamily {
    RationalMatrix base;
    std::vector<RationalMatrix> directions;
    VarList parameters;
    WeightedGrading grading;
    OneParamSubgroup subgroup;

    Eigen::Index matrix_size() const { return base.rows(); }
    std::size_t rank() const { return directions.size(); }
    /// The generic element as a matrix over the parameters.
    PolyMatrix generic_element() const;
    PolyMatrix generic_element(const VarList& ring) const;
};

/// e + t for a solvable group: the directions are the given torus basis.
SectionFamily kostant_section_solvable(const RationalMatrix& e, const std::vector<RationalMatrix>& torus_basis,
                                       const OneParamSubgroup& subgroup,
                                       std::vector<std::string> parameter_names);

/// e + C(f) for gl_n (or sl_n when `traceless`), the centralizer solved
/// subdiagonal by subdiagonal so each direction is an ad(h)-eigenvector.
SectionFamily kostant_section_reductive(int n, bool traceless = false);

/// Grading weight of every parameter under t.v = t^{-2} Ad_{H^t}(v).
/// Throws StructuralError when the action leaves the family.
std::vector<int> cstar_act(const SectionFamily& s, const OneParamSubgroup& h);

/// c_1..c_n with det(lambda - M) = lambda^n + c_1 lambda^{n-1} + ... + c_n,
/// M the generic element of the section.
std::vector<MultiPoly> char_poly_on_section(const SectionFamily& s);

/// Characteristic polynomial coefficients of any polynomial matrix
/// (Faddeev–LeVerrier).
std::vector<MultiPoly> char_poly_coefficients(const PolyMatrix& m);

/// det of the Jacobian matrix d f_i / d x_j.
MultiPoly jacobian_determinant(const std::vector<MultiPoly>& fs);

}  // namespace eqz
