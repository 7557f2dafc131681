#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "nhqfi/multiparam.hpp"

using namespace nhqfi;
using namespace nhqfi::multiparam;

TEST_SUITE("multiparam") {

TEST_CASE("closed form entries")
{
    const int n = 50;
    const double d = 0.01, t = 1;
    const auto r = closed_form(n, d, t);
    const double n2 = n * n;
    CHECK(r.f(0, 0) == doctest::Approx(n2 / (4 * d * d)));
    CHECK(r.f(0, 1) == doctest::Approx(-n2 * d * t * t / 4));
    CHECK(r.f(1, 1) == doctest::Approx(1.5 * n2));
    CHECK(r.f(2, 2) == doctest::Approx(n2 * d * d / 4));
    CHECK(r.f(0, 2) == 0);
    CHECK(r.invertible);
}

TEST_CASE("analytic inverse is the matrix inverse")
{
    for (double d : {0.01, 0.3, 1.2}) {
        const auto r = closed_form(30, d, 1);
        const Mat3 inv = closed_form_inverse(30, d, 1);
        CHECK((inv * r.f - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(closed_form_det_block(30, d, 1) ==
              doctest::Approx(r.f(0, 0) * r.f(1, 1) - r.f(0, 1) * r.f(1, 0)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(closed_form_inverse(30, std::pow(6.0, 0.25), 1), Error);
    CHECK_THROWS_AS(closed_form_inverse(30, 0.0, 1), Error);
}

TEST_CASE("sensitivities are sqrt of the inverse diagonal over nu")
{
    const Mat3 inv = closed_form_inverse(50, 0.01, 1);
    const auto s = sensitivities(50, 0.01, 1, 4);
    CHECK(s.mu == doctest::Approx(std::sqrt(inv(0, 0) / 4)));
    CHECK(s.phi == doctest::Approx(std::sqrt(inv(1, 1) / 4)));
    CHECK(s.g == doctest::Approx(std::sqrt(inv(2, 2) / 4)));
}

TEST_CASE("sum of sin^4 over the open-chain modes is 3(N+1)/8")
{
    // N = 1 is the exception: the cos(4k) harmonics do not cancel
    CHECK(sin4_sum(1) == doctest::Approx(1));
    for (int n : {2, 5, 64, 501}) CHECK(sin4_sum(n) == doctest::Approx(3.0 * (n + 1) / 8).epsilon(1e-12));
}

TEST_CASE("angle derivative matches a numeric derivative of the block angle")
{
    model::ChainSpec s;
    s.n = 12;
    s.delta = 0.2;
    s.mu = 0.3;
    s.kind = model::Kind::multiparam;
    // block angle: tan 2 theta = Delta_k / (xi_k + g s_k)
    const int m = 4;
    auto theta = [&](double mu) {
        auto b = model::bdg_block(model::with(s, model::Param::mu, mu), m);
        return 0.5 * std::atan2(b.delta_k, b.xi);
    };
    const double h = 1e-6;
    const double num = (theta(s.mu + h) - theta(s.mu - h)) / (2 * h);
    CHECK(std::abs(angle_derivs(s, m).d_mu) == doctest::Approx(std::abs(num)).epsilon(1e-5));
}

TEST_CASE("mode sum is symmetric positive semidefinite")
{
    model::ChainSpec s;
    s.n = 16;
    s.delta = 0.2;
    s.mu = 0.1;
    s.kind = model::Kind::multiparam;
    const auto r = mode_sum(s);
    CHECK((r.f - r.f.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Mat3> es(r.f);
    CHECK(es.eigenvalues().minCoeff() > -1e-9 * es.eigenvalues().maxCoeff());
}

TEST_CASE("enhancement factors")
{
    const auto e = enhancement_factors(100, 0.1, 1);
    CHECK(e.eta_mu == doctest::Approx(10 / 0.2));
    CHECK(e.eta_phi == doctest::Approx(std::sqrt(150.0)));
    CHECK(e.eta_g == doctest::Approx(0.1 * 10 / 2));
    CHECK(e.eta_mu_quoted == doctest::Approx(20 / 0.1 * 1));
}

}
