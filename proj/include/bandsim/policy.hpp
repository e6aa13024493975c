#pragma once

#include "bandsim/boundary.hpp"

namespace bandsim {

/// Dual-ratio regions: consumption is raised in IR, untouched in NR, cut in DR.
enum class Region { IR, NR, DR };

/// Region of the dual ratio z = y*c^gamma. IR iff z <= b_alpha, DR iff
/// z >= b_beta, NR strictly inside.
Region classify_region(double z, const FreeBoundaries& fb);

/// Dual obstacle function H(z): the interior two-power formula on the band,
/// pinned at alpha below b_alpha and -beta above b_beta.
double h_eval(double z, const SolvedModel& m);

/// H'(z) on the band, 0 outside (smooth pasting).
double h_prime(double z, const SolvedModel& m);

/// H''(z) on the band, 0 outside.
double h_second(double z, const SolvedModel& m);

/// Wealth per unit consumption X/c as a function of z; strictly decreasing on
/// the band. z outside [b_alpha, b_beta] is clamped to the nearest edge.
double wealth_over_c(double z, const SolvedModel& m);

/// Risky dollars per unit consumption pi/c as a function of z, positive on the
/// band. Clamped like wealth_over_c.
double pi_over_c(double z, const SolvedModel& m);

/// Risky share pi/X as a function of z.
double share_of_wealth(double z, const SolvedModel& m);

/// Revealed relative risk aversion ((mu-r)/sigma^2) * (X/c)/(pi/c); >= gamma,
/// equal to gamma at the band edges, peaking at b_hat.
double rcrra_of_z(double z, const SolvedModel& m);

/// Linear band coordinate s = (z - b_alpha)/(b_beta - b_alpha) in [0, 1].
double band_coordinate(double z, const SolvedModel& m);

/// Dual value function J(y, c); piecewise across IR/NR/DR. Throws DomainError
/// for nonpositive inputs.
double j_eval(double y, double c, const SolvedModel& m);

/// dJ/dy; equals -wealth. Throws DomainError for nonpositive inputs.
double j_y(double y, double c, const SolvedModel& m);

/// Wealth X(y, c) = -J_y(y, c), valid in all regions.
double wealth_map(double y, double c, const SolvedModel& m);

/// Optimal risky dollar position pi(y, c). Requires z = y*c^gamma in the band
/// (small tolerance for roundoff); throws DomainError otherwise.
double portfolio_pi(double y, double c, const SolvedModel& m);

/// Revealed relative risk aversion at (y, c); same domain as portfolio_pi.
double rcrra(double y, double c, const SolvedModel& m);

/// Initial multiplier y* with x0 = -J_y(y*, c0), plus the consumption after
/// the initial jump (c0 itself when (y*, c0) starts in NR).
struct InitialState {
    double y_star;
    double c_adjusted;
};

/// Solves x0 = -J_y(y, c0) for y by doubling/halving from the Merton guess
/// u'(K*x0) and polishing to 1e-12 relative. Throws BracketFailure on numeric
/// breakdown and InvariantViolation if the residual exceeds 1e-10*x0.
InitialState solve_initial_multiplier(double x0, double c0, const SolvedModel& m);

/// Primal value V(x0, c0) = J(y*, c0) + y* * x0.
double primal_value(double x0, double c0, const SolvedModel& m);

} // namespace bandsim
