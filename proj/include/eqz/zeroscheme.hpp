#pragma once

// Zero schemes of the total vector field on S x X for X a projective
// variety, with graded global functions and Cech cohomology computed
// degree by degree.

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqz/groebner.hpp"
#include "eqz/liegroup.hpp"

namespace eqz {

/// A requested degree lies beyond the configured truncation bound.
class TruncationRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Closed subvariety of P^n cut out by homogeneous equations, covered by
/// the standard charts {x_i != 0}.
class ChartedSpace {
public:
    /// chart_names[i] lists the coordinates x_j/x_i (j != i) in order of j;
    /// empty means the default names "<x_j>_<i>".
    ChartedSpace(std::vector<std::string> homogeneous_names, std::vector<MultiPoly> equations = {},
                 std::vector<std::vector<std::string>> chart_names = {});

    static ChartedSpace projective(int n);
    /// Gr(2,4) in P^5 with coordinates p12..p34 and the Plücker relation.
    static ChartedSpace grassmannian_2_4();

    int dimension() const { return static_cast<int>(homogeneous_.size()) - 1; }
    std::size_t chart_count() const { return homogeneous_.size(); }
    const VarList& homogeneous_vars() const { return homogeneous_; }
    const std::vector<MultiPoly>& equations() const { return equations_; }
    const VarList& chart_vars(std::size_t i) const;

    /// f(x) with x_i = 1 and x_j = chart coordinate, over ring (which must
    /// contain the chart coordinates; other variables of f are carried
    /// over by name).
    MultiPoly dehomogenize(const MultiPoly& f, std::size_t chart, const VarList& ring) const;
    /// Inverse direction: chart coordinates replaced by x_j/x_i and the
    /// result multiplied by the smallest power of x_i clearing denominators.
    MultiPoly homogenize(const MultiPoly& f, std::size_t chart, const VarList& ring) const;
    /// Round trip of chart monomials up to the given degree through every
    /// overlap transition.
    bool transitions_consistent(int degree) const;

private:
    VarList homogeneous_;
    std::vector<MultiPoly> equations_;
    std::vector<VarList> charts_;
};

/// Linear action of gl_n on the ambient vector space of a ChartedSpace.
class ChartedAction {
public:
    enum class Representation { Standard, Wedge2 };

    ChartedAction(ChartedSpace space, Representation rep, int n);

    const ChartedSpace& space() const { return space_; }
    Representation representation() const { return rep_; }
    int lie_size() const { return n_; }

    PolyMatrix rho(const PolyMatrix& m) const;
    RationalMatrix rho(const RationalMatrix& m) const;
    /// Homogeneous coordinate weights -h_j for the diagonal H^t.
    std::vector<int> coordinate_weights(const OneParamSubgroup& h) const;

private:
    ChartedSpace space_;
    Representation rep_;
    int n_;
};

std::string to_string(ChartedAction::Representation rep);

/// Components (m x)_j - a_j (m x)_i of the induced field on chart i, over
/// the ring m.vars() followed by the chart coordinates.
std::vector<MultiPoly> vector_field_chart(const PolyMatrix& m, const ChartedAction& action, std::size_t chart);
/// Fixed or zero locus in chart i of a matrix acting on the homogeneous
/// coordinates directly.
std::vector<MultiPoly> fixed_locus_ideal(const PolyMatrix& g, const ChartedSpace& space, std::size_t chart);

struct ChartIdeal {
    std::size_t chart = 0;
    VarList vars;                      // parameters then chart coordinates
    std::vector<MultiPoly> generators; // field components and equations, leading coefficient 1
    GroebnerBasis basis;
    WeightedGrading grading;
};

struct CechOptions {
    long degree_bound = 20;
    /// Denominator power N; 0 selects it by stabilization.
    int power = 0;
    /// Extra power N' - N used when lifting cocycles; 0 means N' = 2N + 1.
    int lift = 0;
    int max_power = 12;
};

struct CechDimension {
    long dim = 0;
    int power = 0;
    int lifted_power = 0;
    bool stable = true;
};

class ZeroSchemeModel {
public:
    ZeroSchemeModel(SectionFamily section, ChartedAction action, CechOptions options = {});

    const SectionFamily& section() const { return section_; }
    const ChartedAction& action() const { return action_; }
    const CechOptions& options() const { return options_; }
    const VarList& parameters() const { return section_.parameters; }
    /// Parameters followed by the homogeneous coordinates.
    const VarList& ring() const { return ring_; }
    const WeightedGrading& grading() const { return grading_; }
    const std::vector<MultiPoly>& homogeneous_generators() const { return generators_; }
    const std::vector<ChartIdeal>& charts() const { return charts_; }
    const ChartIdeal& chart(std::size_t i) const { return charts_.at(i); }

    /// Basis of J : (prod_{i in sigma} x_i)^inf, cached.
    const GroebnerBasis& saturated(unsigned mask) const;
    /// Weights of the homogeneous coordinates.
    const std::vector<int>& coordinate_weights() const { return coordinate_weights_; }
    ZeroSchemeModel with_options(CechOptions options) const;

private:
    SectionFamily section_;
    ChartedAction action_;
    CechOptions options_;
    VarList ring_;
    WeightedGrading grading_;
    std::vector<int> coordinate_weights_;
    std::vector<MultiPoly> generators_;
    std::vector<ChartIdeal> charts_;
    struct Cache;
    std::shared_ptr<Cache> cache_;
};

/// Builds the zero scheme model and checks homogeneity of every generator.
ZeroSchemeModel build_zero_scheme(const SectionFamily& section, const ChartedAction& action,
                                  CechOptions options = {});

/// For each pair of charts, both chart ideals give the same ideal on the
/// overlap.
bool charts_compatible(const ZeroSchemeModel& z);

/// Degree-d Cech cohomology H^i(Z, O_Z) with details of the filtration.
CechDimension cech_cohomology(const ZeroSchemeModel& z, int i, long d);
long cech_cohomology_dim(const ZeroSchemeModel& z, int i, long d);
long global_sections_dim(const ZeroSchemeModel& z, long d);
/// Rank of the restriction of degree-d global sections to one chart.
long restriction_rank(const ZeroSchemeModel& z, std::size_t chart, long d);

struct PoincareReport {
    std::vector<long> coefficients;  // degrees 0..bound
    /// numerator / (1 - t^2)^r when a closed form is detected
    std::optional<std::vector<long>> numerator;
    int denominator_exponent = 0;
    std::string closed_form;
};

PoincareReport poincare_series_report(const ZeroSchemeModel& z, long bound);
/// Closed-form detection on an arbitrary coefficient list.
PoincareReport detect_closed_form(std::vector<long> coefficients, int max_exponent = 6);

/// Affine lines (one parameter of positive weight) and proper components
/// (only constant functions) together with their intersection points.
struct CurveComponent {
    std::string name;
    int weight = 0;                    // 0 for a proper component
    std::vector<MultiPoly> coordinates; // in the single variable "u", for lines
    std::vector<MultiPoly> equations;   // vanishing on a proper component
};

struct Incidence {
    std::size_t first = 0, second = 0;
    Rational first_parameter, second_parameter;  // ignored on proper components
    std::vector<Rational> point;
};

struct ComponentCurveSet {
    VarList ambient;
    std::vector<CurveComponent> components;
    std::vector<Incidence> incidences;

    /// Throws StructuralError when an incidence point is off a component.
    void validate() const;
};

/// Dimension of degree-d tuples of functions, one per component, agreeing
/// at every incidence.
long reduced_ring_dims(const ComponentCurveSet& c, long d);

}  // namespace eqz
