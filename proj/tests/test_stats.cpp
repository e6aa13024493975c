#include "bandsim/stats.hpp"
#include "bandsim/errors.hpp"
#include "bandsim/rng.hpp"

#include "doctest.h"

#include <cmath>
#include <vector>

using namespace bandsim;

TEST_CASE("basic sample statistics") {
    const std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
    CHECK(mean(v) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(stdev(v) == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-14));
    CHECK(stdev(v, 0) == doctest::Approx(std::sqrt(1.25)).epsilon(1e-14));

    const std::vector<double> a = {1.0, 2.0, 3.0};
    const std::vector<double> b = {2.0, 4.0, 6.0};
    CHECK(covariance(a, b) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(correlation(a, b) == doctest::Approx(1.0).epsilon(1e-12));
    const std::vector<double> c = {3.0, 2.0, 1.0};
    CHECK(correlation(a, c) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK_THROWS_AS(mean({}), DomainError);
}

TEST_CASE("normal quantile matches reference points") {
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(normal_quantile(0.995) == doctest::Approx(2.5758293035489004).epsilon(1e-12));
    CHECK(normal_quantile(0.8413447460685429) == doctest::Approx(1.0).epsilon(1e-10));
    for (double p : {0.01, 0.2, 0.35, 0.77})
        CHECK(normal_quantile(p) == doctest::Approx(-normal_quantile(1.0 - p)).epsilon(1e-12));
    CHECK(normal_quantile(1e-300) < -37.0);
    CHECK(std::isfinite(normal_quantile(1e-300)));
    CHECK_THROWS_AS(normal_quantile(0.0), DomainError);
    CHECK_THROWS_AS(normal_quantile(1.0), DomainError);
}

TEST_CASE("incomplete beta identities") {
    for (double x : {0.1, 0.37, 0.5, 0.93}) {
        CHECK(incomplete_beta(1.0, 1.0, x) == doctest::Approx(x).epsilon(1e-12));
        CHECK(incomplete_beta(2.0, 2.0, x) ==
              doctest::Approx(3.0 * x * x - 2.0 * x * x * x).epsilon(1e-12));
        CHECK(incomplete_beta(3.5, 1.7, x) ==
              doctest::Approx(1.0 - incomplete_beta(1.7, 3.5, 1.0 - x)).epsilon(1e-12));
    }
    CHECK(incomplete_beta(4.2, 4.2, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
}

TEST_CASE("two-sided t p-values hit standard critical points") {
    // two-tailed critical values at 10 dof
    CHECK(student_t_two_sided_p(1.8124611228107335, 10.0) ==
          doctest::Approx(0.10).epsilon(1e-9));
    CHECK(student_t_two_sided_p(2.2281388519649385, 10.0) ==
          doctest::Approx(0.05).epsilon(1e-9));
    CHECK(student_t_two_sided_p(0.0, 7.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(student_t_two_sided_p(-2.0, 12.0) ==
          doctest::Approx(student_t_two_sided_p(2.0, 12.0)).epsilon(1e-12));
    CHECK(student_t_two_sided_p(5.0, 12.0) < student_t_two_sided_p(2.0, 12.0));
}

TEST_CASE("ols without intercept matches reference values") {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    const std::vector<double> y = {2.1, 3.9, 6.2, 7.8, 10.1};
    const OlsFit f = ols(y, x, false);
    CHECK(f.slope == doctest::Approx(2.00363636364).epsilon(1e-10));
    CHECK(f.slope_se == doctest::Approx(0.0222866375857).epsilon(1e-9));
    CHECK(f.t_stat == doctest::Approx(89.9030352126).epsilon(1e-9));
    CHECK(f.p_value == doctest::Approx(9.17689374234e-08).epsilon(1e-6).scale(0.0));
    CHECK(f.n == 5);
    CHECK(f.dof == doctest::Approx(4.0));
    CHECK(f.intercept == 0.0);
}

TEST_CASE("ols with intercept matches reference values") {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    const std::vector<double> y = {2.1, 3.9, 6.2, 7.8, 10.1};
    const OlsFit f = ols(y, x, true);
    CHECK(f.slope == doctest::Approx(1.99).epsilon(1e-10));
    CHECK(f.intercept == doctest::Approx(0.05).epsilon(1e-8));
    CHECK(f.t_stat == doctest::Approx(33.3212906595).epsilon(1e-9));
    CHECK(f.p_value == doctest::Approx(5.94153911176e-05).epsilon(1e-6).scale(0.0));
    CHECK(f.dof == doctest::Approx(3.0));
}

TEST_CASE("degenerate regressions are rejected") {
    CHECK_THROWS_AS(ols({1.0, 2.0, 3.0}, {2.0, 2.0, 2.0}, true), DegenerateRegression);
    CHECK_THROWS_AS(ols({1.0, 2.0}, {1.0, 2.0}, false), DegenerateRegression);
}

TEST_CASE("a perfect fit reports zero p-value") {
    const std::vector<double> x = {1, 2, 3, 4};
    const std::vector<double> y = {2, 4, 6, 8};
    const OlsFit f = ols(y, x, false);
    CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f.p_value == 0.0);
    CHECK(std::isinf(f.t_stat));
}

TEST_CASE("rng streams are deterministic and tag-separated") {
    Rng a = Rng::stream(42, "market", 3);
    Rng b = Rng::stream(42, "market", 3);
    Rng c = Rng::stream(42, "market", 4);
    Rng d = Rng::stream(42, "agents", 3);
    const double ua = a.uniform();
    CHECK(ua == b.uniform());
    CHECK(ua != c.uniform());
    CHECK(ua != d.uniform());
    CHECK(ua > 0.0);
    CHECK(ua < 1.0);
}

TEST_CASE("rng normals have sane moments") {
    Rng g(7);
    const int n = 20000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = g.normal();
        s += x;
        s2 += x * x;
    }
    CHECK(std::abs(s / n) < 0.03);
    CHECK(std::abs(s2 / n - 1.0) < 0.05);
}
