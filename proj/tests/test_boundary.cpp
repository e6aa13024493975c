#include "bandsim/boundary.hpp"
#include "bandsim/errors.hpp"

#include "doctest.h"

#include <cmath>

using namespace bandsim;

namespace {

ModelParams fig4_params() { return ModelParams{}; } // gamma=2 alpha=5 beta=100

ModelParams fig3_params() {
    ModelParams p;
    p.beta = 10.0;
    return p;
}

} // namespace

TEST_CASE("boundaries at gamma=2 alpha=5 beta=100 match reference values") {
    const SolvedModel m = solve_model(fig4_params());
    const FreeBoundaries& fb = m.fb;

    CHECK(fb.w == doctest::Approx(0.0309189950138).epsilon(1e-10));
    CHECK(fb.b_alpha == doctest::Approx(0.302395482336).epsilon(1e-10));
    CHECK(fb.b_beta == doctest::Approx(9.78024939687).epsilon(1e-10));
    CHECK(fb.d1 == doctest::Approx(6.09673354641).epsilon(1e-10));
    CHECK(fb.d2 == doctest::Approx(-30.937034724).epsilon(1e-10));
    CHECK(fb.b_m == doctest::Approx(1.06207055892).epsilon(1e-10));
    CHECK(fb.b_hat == doctest::Approx(1.57936976039).epsilon(1e-10));
    CHECK(fb.x_lo == doctest::Approx(23.9329788307).epsilon(1e-10));
    CHECK(fb.x_hi == doctest::Approx(72.8248157372).epsilon(1e-10));
    CHECK(fb.x_hat == doctest::Approx(42.838584384).epsilon(1e-10));
    CHECK(fb.rcrra_max == doctest::Approx(4.17120992965).epsilon(1e-10));
}

TEST_CASE("boundaries at gamma=2 alpha=5 beta=10 match reference values") {
    const SolvedModel m = solve_model(fig3_params());
    const FreeBoundaries& fb = m.fb;

    CHECK(fb.w == doctest::Approx(0.140391097722).epsilon(1e-10));
    CHECK(fb.b_alpha == doctest::Approx(0.414261831972).epsilon(1e-10));
    CHECK(fb.b_beta == doctest::Approx(2.95076994691).epsilon(1e-10));
    CHECK(fb.x_lo == doctest::Approx(25.7632512757).epsilon(1e-10));
    CHECK(fb.x_hi == doctest::Approx(58.1051105015).epsilon(1e-10));
    CHECK(fb.rcrra_max == doctest::Approx(2.68155029095).epsilon(1e-10));
}

TEST_CASE("structural invariants hold across a parameter sweep") {
    for (double gamma : {0.9, 1.5, 3.5, 6.0}) {
        for (double beta : {10.0, 100.0, 1000.0}) {
            ModelParams p;
            p.gamma = gamma;
            p.beta = beta;
            const SolvedModel m = solve_model(p);
            const FreeBoundaries& fb = m.fb;
            CAPTURE(gamma);
            CAPTURE(beta);
            CHECK(fb.w > 0.0);
            CHECK(fb.w < m.consts.kappa);
            CHECK(fb.b_alpha > 0.0);
            CHECK(fb.b_alpha < fb.b_m);
            CHECK(fb.b_m < fb.b_beta);
            CHECK(fb.b_alpha / fb.b_beta == doctest::Approx(fb.w).epsilon(1e-9));
            CHECK(fb.d1 > 0.0);
            CHECK(fb.d2 < 0.0);
            CHECK(fb.x_lo > 0.0);
            CHECK(fb.x_lo < fb.x_hat);
            CHECK(fb.x_hat < fb.x_hi);
            CHECK(fb.b_hat > fb.b_alpha);
            CHECK(fb.b_hat < fb.b_beta);
            CHECK(fb.rcrra_max >= gamma - 1e-9);
        }
    }
}

TEST_CASE("f has a root and changes sign inside (0, kappa)") {
    const ModelParams p = fig4_params();
    const DerivedConstants c = derive_constants(p);
    const double w = solve_w(p, c);
    CHECK(std::abs(f_eval(w, c, c.kappa)) < 1e-11);
    CHECK(f_eval(w * 0.5, c, c.kappa) * f_eval(w + 0.5 * (c.kappa - w), c, c.kappa) <
          0.0);
}

TEST_CASE("frictionless limit has no band to solve") {
    ModelParams p;
    p.alpha = 0.0;
    p.beta = 0.0;
    CHECK_THROWS_AS(solve_model(p), Error);
}
