#include "bandsim/params.hpp"

#include <cmath>

namespace bandsim {

DerivedConstants derive_constants(const ModelParams& p) {
    if (!(p.sigma > 0.0)) throw AssumptionViolation("sigma must be positive");
    if (!(p.mu > p.r)) throw AssumptionViolation("mu must exceed r (positive equity premium)");
    if (!(p.delta > 0.0)) throw AssumptionViolation("delta must be positive");
    if (!(p.gamma > 0.0)) throw AssumptionViolation("gamma must be positive");
    if (p.gamma == 1.0) throw AssumptionViolation("gamma == 1 (log utility) is not supported");
    if (p.alpha < 0.0) throw AssumptionViolation("alpha must be nonnegative");
    if (!(p.delta * p.alpha < 1.0)) throw AssumptionViolation("delta*alpha must be below 1");
    if (p.beta < 0.0) throw AssumptionViolation("beta must be nonnegative");

    DerivedConstants c{};
    c.theta = (p.mu - p.r) / p.sigma;
    c.kappa = (1.0 - p.delta * p.alpha) / (1.0 + p.delta * p.beta);
    c.big_k = p.r + (p.delta - p.r) / p.gamma +
              ((p.gamma - 1.0) / (2.0 * p.gamma * p.gamma)) * c.theta * c.theta;
    if (!(c.big_k > 0.0)) throw AssumptionViolation("K must be positive (finite Merton consumption)");

    // roots of (theta^2/2) m^2 + (delta - r - theta^2/2) m - delta = 0
    double a = 0.5 * c.theta * c.theta;
    double b = p.delta - p.r - a;
    double q = -0.5 * (b + std::copysign(std::sqrt(b * b + 4.0 * a * p.delta), b));
    double r1 = q / a;
    double r2 = -p.delta / q;
    c.m1 = std::max(r1, r2);
    c.m2 = std::min(r1, r2);
    if (!(c.m1 > 1.0) || !(c.m2 < 0.0))
        throw AssumptionViolation("characteristic roots must satisfy m1 > 1 > 0 > m2");
    return c;
}

double crra_utility(double c, double gamma) {
    if (!(c > 0.0)) throw DomainError("crra_utility: consumption must be positive");
    return std::pow(c, 1.0 - gamma) / (1.0 - gamma);
}

double marginal_utility(double c, double gamma) {
    if (!(c > 0.0)) throw DomainError("marginal_utility: consumption must be positive");
    return std::pow(c, -gamma);
}

double inverse_marginal(double y, double gamma) {
    if (!(y > 0.0)) throw DomainError("inverse_marginal: marginal utility must be positive");
    return std::pow(y, -1.0 / gamma);
}

double merton_share(const ModelParams& p) {
    return (p.mu - p.r) / (p.gamma * p.sigma * p.sigma);
}

} // namespace bandsim
