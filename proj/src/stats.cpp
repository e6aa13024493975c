#include "bandsim/stats.hpp"

#include "bandsim/errors.hpp"

#include <cmath>
#include <limits>

namespace bandsim {

double mean(const std::vector<double>& v) {
    if (v.empty()) throw DomainError("mean: empty sample");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double stdev(const std::vector<double>& v, int ddof) {
    if (v.size() <= static_cast<std::size_t>(ddof))
        throw DomainError("stdev: sample too small for requested ddof");
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - ddof));
}

double covariance(const std::vector<double>& a, const std::vector<double>& b,
                  int ddof) {
    if (a.size() != b.size()) throw DomainError("covariance: length mismatch");
    if (a.size() <= static_cast<std::size_t>(ddof))
        throw DomainError("covariance: sample too small for requested ddof");
    const double ma = mean(a), mb = mean(b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - ma) * (b[i] - mb);
    return s / static_cast<double>(a.size() - ddof);
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
    const double sa = stdev(a), sb = stdev(b);
    if (sa == 0.0 || sb == 0.0)
        throw DomainError("correlation: zero-variance input");
    return covariance(a, b) / (sa * sb);
}

namespace {

// Lentz continued fraction for the incomplete beta (Numerical Recipes betacf).
double beta_cf(double a, double b, double x) {
    const double tiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 3e-16) break;
    }
    return h;
}

} // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw DomainError("incomplete_beta: a and b must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double lbt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log1p(-x);
    const double bt = std::exp(lbt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
    return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double nu) {
    if (!(nu > 0.0)) throw DomainError("student_t_two_sided_p: dof must be positive");
    if (!std::isfinite(t)) return 0.0;
    const double x = nu / (nu + t * t);
    return incomplete_beta(0.5 * nu, 0.5, x);
}

OlsFit ols(const std::vector<double>& y, const std::vector<double>& x,
           bool intercept) {
    if (y.size() != x.size()) throw DegenerateRegression("ols: length mismatch");
    const std::size_t n = y.size();
    if (n < 3) throw DegenerateRegression("ols: need at least 3 observations");

    OlsFit fit{};
    fit.n = n;
    double rss = 0.0;
    if (intercept) {
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mx += x[i];
            my += y[i];
        }
        mx /= n;
        my /= n;
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sxx += (x[i] - mx) * (x[i] - mx);
            sxy += (x[i] - mx) * (y[i] - my);
        }
        if (sxx / n < 1e-12)
            throw DegenerateRegression("ols: regressor variance below 1e-12");
        fit.slope = sxy / sxx;
        fit.intercept = my - fit.slope * mx;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = y[i] - fit.intercept - fit.slope * x[i];
            rss += e * e;
        }
        fit.dof = static_cast<double>(n - 2);
        const double s2 = rss / fit.dof;
        fit.slope_se = std::sqrt(s2 / sxx);
        fit.intercept_se = std::sqrt(s2 * (1.0 / n + mx * mx / sxx));
    } else {
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sxx += x[i] * x[i];
            sxy += x[i] * y[i];
        }
        if (sxx / n < 1e-12)
            throw DegenerateRegression("ols: regressor variance below 1e-12");
        fit.slope = sxy / sxx;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = y[i] - fit.slope * x[i];
            rss += e * e;
        }
        fit.dof = static_cast<double>(n - 1);
        fit.slope_se = std::sqrt(rss / fit.dof / sxx);
    }
    if (fit.slope_se > 0.0) {
        fit.t_stat = fit.slope / fit.slope_se;
        fit.p_value = student_t_two_sided_p(fit.t_stat, fit.dof);
    } else {
        fit.t_stat = std::numeric_limits<double>::infinity();
        fit.p_value = 0.0;
    }
    return fit;
}

} // namespace bandsim
