#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "isovec/algebra_case.hpp"
#include "isovec/solution.hpp"

namespace isovec {

/// Closed form of the symplectic pairing on one basis pair, as a function of
/// (t, q, Btilde, Etilde) where Btilde = -gamma eta_q/eta, Etilde = -gamma eta_t/eta.
using OmegaClosedForm = std::function<double(double t, double q, double B, double E)>;

/// The tabulated closed form for the pair (i, j), 0-based i < j, of the
/// table basis of a case: the D==0 basis, or the transformed basis when
/// D != 0 (the C != 0 cases use the same formulas restricted to the first
/// four generators). Entries that are identically zero return nullopt.
std::optional<OmegaClosedForm> omega_closed_form(CaseLabel label, int i, int j, double eps,
                                                 double gamma);

/// Human-readable notes on where the shipped closed forms deviate from the
/// commonly typeset ones (kept with the tables so verification reports can
/// cite them).
std::vector<std::string> omega_table_corrections(CaseLabel label);

struct OmegaEntryCheck {
    int i = 0, j = 0;            // 0-based pair
    double max_abs_diff = 0.0;   // |computed - closed form| over the grid
    double scale = 1.0;          // max(1, max |closed form|)
    bool trivial_zero = false;   // commutator vanishes identically
    double rel() const { return max_abs_diff / scale; }
};

/// Compares omega computed as gamma [X,Y](eta)/eta against the closed-form
/// table on a grid, for every pair of the case's table basis.
std::vector<OmegaEntryCheck> omega_table_check(const AlgebraCase& table_basis,
                                               const Solution& eta,
                                               const EvaluationGrid& grid);

}  // namespace isovec
