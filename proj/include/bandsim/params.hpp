#pragma once

#include "bandsim/errors.hpp"

namespace bandsim {

/// Market and preference primitives. Rates are annualized decimals, times are
/// in years, costs alpha/beta are in years of utility flow.
struct ModelParams {
    double r = 0.015;     ///< risk-free rate
    double mu = 0.085;    ///< risky drift
    double sigma = 0.25;  ///< risky volatility
    double delta = 0.02;  ///< subjective discount rate
    double gamma = 2.0;   ///< relative risk aversion, != 1
    double alpha = 5.0;   ///< cost on upward consumption adjustment
    double beta = 100.0;  ///< cost on downward consumption adjustment
};

/// Constants derived from ModelParams.
struct DerivedConstants {
    double theta;  ///< market price of risk (mu - r)/sigma
    double kappa;  ///< (1 - delta*alpha)/(1 + delta*beta), in (0, 1]
    double big_k;  ///< K = r + (delta - r)/gamma + ((gamma-1)/(2 gamma^2)) theta^2
    double m1;     ///< positive root of the characteristic quadratic, > 1
    double m2;     ///< negative root, < 0
};

/// Validates the params and computes the derived constants.
/// Throws AssumptionViolation naming the assumption that failed.
DerivedConstants derive_constants(const ModelParams& p);

/// u(c) = c^(1-gamma)/(1-gamma). Throws DomainError for c <= 0.
double crra_utility(double c, double gamma);

/// u'(c) = c^(-gamma). Throws DomainError for c <= 0.
double marginal_utility(double c, double gamma);

/// I(y) = y^(-1/gamma), the inverse of u'. Throws DomainError for y <= 0.
double inverse_marginal(double y, double gamma);

/// Frictionless Merton risky fraction (mu - r)/(gamma sigma^2).
double merton_share(const ModelParams& p);

} // namespace bandsim
