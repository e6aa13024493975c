#pragma once

#include <cstddef>
#include <vector>

namespace bandsim {

/// Sample mean. Throws DomainError on empty input.
double mean(const std::vector<double>& v);

/// Sample standard deviation with ddof delta degrees of freedom (1 = unbiased).
double stdev(const std::vector<double>& v, int ddof = 1);

/// Sample covariance with ddof degrees of freedom.
double covariance(const std::vector<double>& a, const std::vector<double>& b,
                  int ddof = 1);

/// Pearson correlation.
double correlation(const std::vector<double>& a, const std::vector<double>& b);

/// Regularized incomplete beta function I_x(a, b) via the Lentz continued
/// fraction; x in [0, 1].
double incomplete_beta(double a, double b, double x);

/// Two-sided p-value of a t statistic with nu degrees of freedom.
double student_t_two_sided_p(double t, double nu);

/// Ordinary least squares of y on a single regressor x, classical standard
/// errors, optional intercept.
struct OlsFit {
    double slope;
    double slope_se;
    double t_stat;
    double p_value;
    double intercept;     ///< 0 when fit without intercept
    double intercept_se;  ///< 0 when fit without intercept
    std::size_t n;
    double dof;
};

/// Fits y = slope*x (+ intercept). Throws DegenerateRegression when the
/// regressor has (centered) variance below 1e-12 or n is too small.
OlsFit ols(const std::vector<double>& y, const std::vector<double>& x,
           bool intercept);

} // namespace bandsim
