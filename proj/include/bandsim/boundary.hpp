#pragma once

#include "bandsim/params.hpp"

namespace bandsim {

/// Free boundaries and value-function coefficients of the adjustment-band
/// solution, all in shadow-price units relative to current consumption
/// (z = y * c^gamma).
struct FreeBoundaries {
    double w;          ///< boundary ratio b_alpha/b_beta, in (0, kappa)
    double b_alpha;    ///< lower band edge: consumption is raised when z <= b_alpha
    double b_beta;     ///< upper band edge: consumption is cut when z >= b_beta
    double d1;         ///< coefficient on (z/b_alpha)^m1 in the no-trade region
    double d2;         ///< coefficient on (z/b_alpha)^m2
    double b_m;        ///< interior stationary point of H'
    double x_lo;       ///< wealth/consumption at the upper edge b_beta
    double x_hi;       ///< wealth/consumption at the lower edge b_alpha
    double b_hat;      ///< z at which relative risk aversion peaks inside the band
    double x_hat;      ///< wealth/consumption at b_hat
    double rcrra_max;  ///< peak relative risk aversion, >= gamma
};

/// Params plus everything derived from them; the working handle passed to the
/// policy, simulation, and experiment layers.
struct SolvedModel {
    ModelParams params;
    DerivedConstants consts;
    FreeBoundaries fb;
};

/// The scalar equation f(w) = 0 pinning the boundary ratio w = b_alpha/b_beta.
double f_eval(double w, const DerivedConstants& c, double kappa);

/// Root of f on (0, kappa). Throws BracketFailure when no sign change exists
/// (e.g. the frictionless alpha = beta = 0 limit) and InvariantViolation if
/// the residual at the root exceeds 1e-11.
double solve_w(const ModelParams& p, const DerivedConstants& c);

/// Full boundary set from a solved w. Verifies ordering, the cross-derivation
/// of d1/d2 from both band edges (1e-8 relative), and positivity invariants;
/// throws InvariantViolation on any failure. b_hat/x_hat/rcrra_max are filled
/// by solve_b_hat.
FreeBoundaries compute_boundaries(const ModelParams& p, const DerivedConstants& c);

/// Locates the interior risk-aversion peak and fills b_hat, x_hat, rcrra_max
/// on fb.
void solve_b_hat(const ModelParams& p, const DerivedConstants& c, FreeBoundaries& fb);

/// derive_constants + compute_boundaries + solve_b_hat in one call.
SolvedModel solve_model(const ModelParams& p);

} // namespace bandsim
