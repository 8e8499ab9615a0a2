#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "isovec/errors.hpp"
#include "isovec/tilde_field.hpp"

namespace isovec {

/// Which of the six sign cases of (C, D) an algebra belongs to.
enum class CaseLabel {
    CnonzeroDpos,
    CnonzeroDzero,
    CnonzeroDneg,
    CzeroDpos,
    CzeroDzero,
    CzeroDneg,
};

enum class BasisFamily { Primary, Transformed, Isomorphism };

std::string to_string(CaseLabel label);

/// A symmetry algebra of the backward heat equation with potential
/// V = C/q^2 + D q^2: an ordered basis of tilde fields plus the case data.
/// dim == 4 when C != 0, dim == 6 when C == 0.
struct AlgebraCase {
    CaseLabel label;
    BasisFamily family = BasisFamily::Primary;
    Potential potential;
    double epsilon = 0.0;  // sqrt(8|D|); 0 when D == 0
    std::vector<TildeField> fields;
    std::vector<std::string> names;

    int dim() const { return static_cast<int>(fields.size()); }
    nlohmann::json to_json() const;
};

/// The exact basis for the sign pattern of (C, D): P-basis for D != 0,
/// M-basis for D == 0 (these coincide with the transformed basis at D == 0).
AlgebraCase basis_case(const Potential& p);

/// Structure constants of an ordered basis: coeffs[i][j] holds x with
/// [e_i, e_j] = sum_k x[k] e_k for i < j (antisymmetric completion implied).
/// Solved by exact canonical-term matching; throws NotClosedError if any
/// bracket leaves the span.
struct StructureConstants {
    std::vector<std::vector<std::vector<double>>> coeffs;
};
StructureConstants structure_constants(const AlgebraCase& c);

/// Expresses one field in an ordered basis by canonical-term matching.
std::vector<double> decompose(const std::vector<TildeField>& basis, const TildeField& w,
                              const std::string& what = "");

/// Reference structure-constant tables for the transformed bases (and the
/// D == 0 basis). The isomorphism basis satisfies the D == 0 table verbatim.
StructureConstants reference_table(CaseLabel label, BasisFamily family, double eps, double gamma);

/// D != 0 only: the basis continuously deformable to the D == 0 one, and the
/// basis realizing the isomorphism onto the D == 0 algebra, each with the
/// exact change-of-basis matrix (columns = new elements in the old basis).
struct TransformedBases {
    AlgebraCase transformed;          // R (D>0) or V (D<0)
    Eigen::MatrixXd transformed_from_primary;
    AlgebraCase isomorphism;          // S basis
    Eigen::MatrixXd isomorphism_from_transformed;
};
TransformedBases transformed_basis(const AlgebraCase& primary);

/// Max deviation of each transformed-basis coefficient slot from the D == 0
/// basis over a (t, q) grid, for every D in a one-signed sequence.
struct LimitDeviation {
    double D = 0.0;
    double epsilon = 0.0;
    // [generator][slot], slot order: d/dt, d/dq, multiplier
    std::vector<std::array<double, 3>> deviation;
    double max() const;
};
std::vector<LimitDeviation> limit_check(const std::vector<double>& D_sequence, double C,
                                        double gamma, const std::vector<double>& t_grid,
                                        const std::vector<double>& q_grid);

/// sl2 / Heisenberg identification. Verifies the sl2 relations on
/// e = -1/2 E3, f = 2 E1, h = 2 E2 + gamma/2 E4 (E = D==0 basis or the
/// isomorphism image), the Heisenberg relations on <E4, E5, E6> with center
/// <E4> when C == 0, and the direct-sum split sl2 (+) <E4> when C != 0.
/// Throws StructureMismatchError on any failed relation.
struct StructureReport {
    CaseLabel label;
    int dim = 0;
    bool sl2_ok = false;
    bool heisenberg_ok = false;    // C == 0 cases
    bool center_ok = false;        // E4 commutes with everything
    bool sl2_action_ok = false;    // C == 0: sl2 maps H3 into H3
    bool direct_sum_ok = false;    // C != 0: brackets of sl2 triple with E4 vanish
    std::string summary;
    nlohmann::json to_json() const;
};
StructureReport structure_identification(const AlgebraCase& primary);

/// Generator lists (1-based indices into the primary basis) of the two
/// distinguished subalgebras, with closure verified by decomposition.
struct SubalgebraReport {
    std::vector<int> j_members;           // constant-multiplier subalgebra
    std::vector<int> k_members;           // four-dimensional subalgebra
    std::vector<int> intersection;
    bool j_closed = false;
    bool k_closed = false;
    bool j_matches_definition = false;    // membership == {constant multiplier}
    nlohmann::json to_json() const;
};
SubalgebraReport subalgebra_tables(const AlgebraCase& primary);

/// Residuals of the determining system for (T_N, l, sigma) at potential p:
///   2 C l,   l'' - 2 D l,   sigma' - (gamma/4) T_N'',   T_N''' - 8 D T_N'.
/// All-zero iff the triple generates a symmetry for this potential.
std::array<ScalarField, 4> determining_check(const ScalarField& T_N, const ScalarField& l,
                                             const ScalarField& sigma, const Potential& p);

}  // namespace isovec
