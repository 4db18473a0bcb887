#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "heavytail/densities.hpp"
#include "heavytail/errors.hpp"
#include "heavytail/quadrature.hpp"
#include "heavytail/special_functions.hpp"
#include "oracles.hpp"

using namespace heavytail;

TEST_CASE("normalization constants") {
    // adaptive-integration oracle: int_R (1+x^2)^-1 dx = pi
    CHECK(DensityModel::cauchy(1.0).norm_constant() ==
          doctest::Approx(1.0 / M_PI).epsilon(1e-10));
    // Gamma(1) = 1 forces C = m
    CHECK(DensityModel::inverse_gamma_std(1.0, 3.5).norm_constant() ==
          doctest::Approx(3.5).epsilon(1e-13));
    // elementary antiderivative: int_R (1+|x|)^-3 dx = 1
    CHECK(DensityModel::symmetric_polynomial(1.5).norm_constant() ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("inverse_gamma_std: printed constant vs quadrature route") {
    for (double kappa : {0.7, 1.0, 2.0, 4.5}) {
        for (double m : {0.5, 1.0, 3.0}) {
            DensityModel d = DensityModel::inverse_gamma_std(kappa, m);
            auto kernel = [&d](double x) { return std::exp(d.log_kernel(x)); };
            double integral = integrate(kernel, Interval::positive_half_line()).value;
            CHECK(d.norm_constant() * integral == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(DensityModel::cauchy(0.5), Error);
    CHECK_THROWS_AS(DensityModel::inverse_gamma_std(0.0, 1.0), Error);
    CHECK_THROWS_AS(DensityModel::inverse_gamma_std(1.0, -1.0), Error);
    CHECK_THROWS_AS(DensityModel::inverse_gamma_bm(0.4, 1.0), Error);
    CHECK_THROWS_AS(DensityModel::generalized_gamma(1.2, 1.3, 1.0), Error);
}

TEST_CASE("pdf values and symmetry") {
    CHECK(DensityModel::cauchy(1.0).pdf(0.0) == doctest::Approx(1.0 / M_PI).epsilon(1e-10));
    // direct formula: f = m x^-2 e^{-m/x} at kappa=1
    CHECK(DensityModel::inverse_gamma_std(1.0, 1.0).pdf(1.0) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-13));
    for (double x : {0.3, 1.7, 4.0}) {
        DensityModel c = DensityModel::cauchy(1.3);
        CHECK(c.pdf(x) == doctest::Approx(c.pdf(-x)).epsilon(1e-14));
        DensityModel s = DensityModel::symmetric_polynomial(0.8);
        CHECK(s.pdf(x) == doctest::Approx(s.pdf(-x)).epsilon(1e-14));
    }
    CHECK_THROWS_AS(DensityModel::inverse_gamma_std(1.0, 1.0).pdf(-0.1), Error);
    CHECK(DensityModel::inverse_gamma_std(1.0, 1.0).pdf(0.0) == 0.0);
}

TEST_CASE("log_pdf is finite inside the open interval") {
    DensityModel d = DensityModel::inverse_gamma_bm(1.5, 2.0);
    for (double x : {1e-3, 0.5, 10.0, 1e5}) CHECK(std::isfinite(d.log_pdf(x)));
    CHECK(std::isfinite(DensityModel::cauchy(0.7).log_pdf(1e8)));
}

TEST_CASE("cdf values") {
    CHECK(DensityModel::cauchy(2.0).cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(DensityModel::symmetric_polynomial(1.2).cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    // analytic inversion oracle: F(x) = e^{-m/x} at kappa = 1
    CHECK(DensityModel::inverse_gamma_std(1.0, 1.0).cdf(1.0 / std::log(2.0)) ==
          doctest::Approx(0.5).epsilon(1e-12));
    // arctan antiderivative oracle: F(1) = 1/2 + atan(1)/pi = 3/4 at beta = 1
    CHECK(DensityModel::cauchy(1.0).cdf(1.0) == doctest::Approx(0.75).epsilon(1e-10));
    DensityModel d = DensityModel::inverse_gamma_std(2.0, 1.0);
    CHECK(d.cdf(0.0) == 0.0);
    CHECK(d.cdf(Interval::inf()) == 1.0);
    // monotone
    double prev = -1.0;
    for (double x : {0.01, 0.1, 0.5, 1.0, 3.0, 20.0, 500.0}) {
        double v = d.cdf(x);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("cdf derivative matches pdf on a 64-point grid") {
    auto check_model = [](const DensityModel& d, double lo, double hi) {
        for (int i = 0; i < 64; ++i) {
            double x = lo + (hi - lo) * (i + 0.5) / 64.0;
            double h = 1e-5 * (1.0 + std::fabs(x));
            auto F = [&d](double t) { return d.cdf(t); };
            double fd = oracle::central_diff(F, x, h);
            CHECK(fd == doctest::Approx(d.pdf(x)).epsilon(1e-6));
        }
    };
    check_model(DensityModel::cauchy(1.7), -4.0, 4.0);
    check_model(DensityModel::inverse_gamma_std(2.0, 1.0), 0.1, 5.0);
    check_model(DensityModel::symmetric_polynomial(1.1), -3.0, 3.0);
    check_model(DensityModel::generalized_gamma(2.0, 1.25, 1.0), 0.2, 4.0);
}

TEST_CASE("median") {
    CHECK(DensityModel::cauchy(0.9).median() == 0.0);
    CHECK(DensityModel::symmetric_polynomial(2.0).median() == 0.0);
    // analytic inversion oracle: median = m / ln 2 at kappa = 1
    CHECK(DensityModel::inverse_gamma_std(1.0, 1.0).median() ==
          doctest::Approx(1.4426950408889634).epsilon(1e-12));
    // bisection vs high-resolution tabulation oracle: root of Q(2, 1/x) = 1/2
    DensityModel d = DensityModel::inverse_gamma_std(2.0, 1.0);
    double med = d.median();
    double lo = 0.0, hi = 10.0;
    for (int i = 0; i < 2000; ++i) {
        double mid = 0.5 * (lo + hi);
        double q = (1.0 + 1.0 / mid) * std::exp(-1.0 / mid); // Q(2, 1/x) closed form
        (q < 0.5 ? lo : hi) = mid;
    }
    CHECK(med == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-10));
    CHECK(std::fabs(d.cdf(med) - 0.5) < 1e-10);
}

TEST_CASE("median consistency across families") {
    std::vector<DensityModel> models = {
        DensityModel::inverse_gamma_std(3.0, 2.0), DensityModel::inverse_gamma_bm(1.2, 0.7),
        DensityModel::generalized_gamma(2.5, 1.3, 1.5), DensityModel::cauchy(1.5),
        DensityModel::gibbs_quartic(1.0, 1.0)};
    for (const auto& d : models) CHECK(std::fabs(d.cdf(d.median()) - 0.5) <= 1e-10);
}

TEST_CASE("moments") {
    // Beta-function reduction oracle: E[X^2] = 1/(2 beta - 3)
    Moment m2 = DensityModel::cauchy(2.5).moment(2);
    CHECK(m2.finite);
    CHECK(m2.value == doctest::Approx(0.5).epsilon(1e-9));
    Moment m2inf = DensityModel::cauchy(1.0).moment(2);
    CHECK_FALSE(m2inf.finite);
    // odd finite moments of symmetric families vanish
    Moment m3 = DensityModel::cauchy(3.0).moment(3);
    CHECK(m3.finite);
    CHECK(m3.value == 0.0);
    // tail-exponent boundary: variance finite iff beta > 3/2
    CHECK_FALSE(DensityModel::cauchy(1.4).moment(2).finite);
    CHECK(DensityModel::cauchy(1.6).moment(2).finite);
    // inverse gamma mean: m/(kappa-1)
    Moment ig1 = DensityModel::inverse_gamma_std(3.0, 2.0).moment(1);
    CHECK(ig1.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_FALSE(DensityModel::inverse_gamma_std(2.0, 1.0).moment(2).finite);
}

TEST_CASE("normalization under random admissible parameters") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto unit_mass = [](const DensityModel& d) {
        auto f = [&d](double x) { return d.pdf(x); };
        return integrate(f, d.interval()).value;
    };
    const int draws = 200;
    for (int i = 0; i < draws; ++i) {
        double beta = 0.55 + 3.45 * u01(rng);
        double m = 0.25 + 4.0 * u01(rng);
        CHECK(unit_mass(DensityModel::cauchy(beta)) == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(unit_mass(DensityModel::symmetric_polynomial(beta)) ==
              doctest::Approx(1.0).epsilon(1e-8));
        CHECK(unit_mass(DensityModel::inverse_gamma_bm(beta, m)) ==
              doctest::Approx(1.0).epsilon(1e-8));
        CHECK(unit_mass(DensityModel::inverse_gamma_std(0.1 + 5.0 * u01(rng), m)) ==
              doctest::Approx(1.0).epsilon(1e-8));
        double alpha = 1.1 + 0.4 * u01(rng);
        CHECK(unit_mass(DensityModel::generalized_gamma(alpha + 0.1 + 2.0 * u01(rng), alpha, m)) ==
              doctest::Approx(1.0).epsilon(1e-8));
        CHECK(unit_mass(DensityModel::gibbs_quartic(2.0 * u01(rng), 0.5 + u01(rng))) ==
              doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("generalized gamma normalization against the Gamma-function route") {
    // C = c^(2b-1) / ((a-1) Gamma(2b-1)) with c = m (a-1)^(1/(a-1))
    for (double alpha : {1.2, 1.4, 1.5}) {
        for (double beta : {2.0, 3.5}) {
            double m = 1.3;
            DensityModel d = DensityModel::generalized_gamma(beta, alpha, m);
            double c = m * std::pow(alpha - 1.0, 1.0 / (alpha - 1.0));
            double ref = std::exp((2.0 * beta - 1.0) * std::log(c) -
                                  special::log_gamma(2.0 * beta - 1.0)) /
                         (alpha - 1.0);
            CHECK(d.norm_constant() == doctest::Approx(ref).epsilon(1e-9));
        }
    }
}

TEST_CASE("descriptor round trip") {
    std::vector<DensityModel> models = {
        DensityModel::cauchy(2.5), DensityModel::inverse_gamma_std(1.75, 0.5),
        DensityModel::symmetric_polynomial(1.5), DensityModel::generalized_gamma(2.0, 1.25, 1.0),
        DensityModel::gibbs_quartic(0.5, 2.0)};
    for (const auto& d : models) {
        DensityModel back = DensityModel::from_descriptor(d.descriptor());
        CHECK(back.family() == d.family());
        for (double x : {0.4, 1.9}) CHECK(back.pdf(x) == doctest::Approx(d.pdf(x)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(DensityModel::from_descriptor("family=nope beta=1"), Error);
    CHECK_THROWS_AS(DensityModel::from_descriptor("beta=1"), Error);
}

TEST_CASE("quantile round trip") {
    std::vector<DensityModel> models = {
        DensityModel::cauchy(1.2), DensityModel::inverse_gamma_std(2.5, 1.0),
        DensityModel::symmetric_polynomial(0.9), DensityModel::gibbs_quartic(0.0, 1.0)};
    for (const auto& d : models)
        for (double p : {1e-6, 0.01, 0.3, 0.5, 0.9, 1.0 - 1e-6})
            CHECK(d.cdf(d.quantile(p)) == doctest::Approx(p).epsilon(1e-6));
}
