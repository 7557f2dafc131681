#include <doctest.h>

#include <cmath>

#include "nhqfi/noise.hpp"

using namespace nhqfi;
using namespace nhqfi::noise;

TEST_SUITE("noise") {

TEST_CASE("effective rate")
{
    NoiseParams p;
    p.gamma_phi = 0.01;
    p.gamma_minus = 0.02;
    p.gamma_pt = 0.04;
    CHECK(gamma_eff(p, 0.5, 1.0) == doctest::Approx(0.01 + 0.01 + 0.04));
    CHECK(gamma_eff(p, 0.0, 1.0) == doctest::Approx(0.02));
}

TEST_CASE("decay formula and its small-rate limit")
{
    const double f0 = 3, gpt = 0.2, t = 2;
    for (double g : {0.5, 1e-3}) {
        const double ref = f0 * std::exp(-g * t) * (1 + gpt / g * (1 - std::exp(-g * t)));
        CHECK(qfi_decay_rate(f0, g, gpt, t).value == doctest::Approx(ref).epsilon(1e-12));
    }
    CHECK(qfi_decay_rate(f0, 0, gpt, t).value == doctest::Approx(f0 * (1 + gpt * t)));
    // both sides of the series switch against an extended-precision oracle
    for (double x : {0.99e-6, 1.01e-6}) {
        const long double g = x / t;
        const long double ref = f0 * std::exp(-(long double)x) * (1 + gpt / g * -std::expm1(-(long double)x));
        CHECK(qfi_decay_rate(f0, double(g), gpt, t).value == doctest::Approx(double(ref)).epsilon(1e-12));
    }
}

TEST_CASE("memory and stability")
{
    CHECK(gamma_eff_nonmarkov(0.1, 0.5, 2) == doctest::Approx(0.125));
    CHECK(stability_detuning(0.04, 4) == doctest::Approx(0.1));
}

TEST_CASE("capped enhancement")
{
    const auto e = eta_cap(1, 50, 1e-3, 0.01, 1e9);
    CHECK(e.raw == doctest::Approx(50 / 6e-3));
    CHECK(e.systematic == doctest::Approx(e.raw / std::sqrt(1 + 1e-4)));
    CHECK(e.active == "systematic");
    const auto f = eta_cap_fixture();
    CHECK(LabUnits{}.dimensionless_t_t2() == doctest::Approx(2 * pi * 1e3));
    CHECK(f.coherence == doctest::Approx(2 * pi * 1e3 / 6));
    CHECK(f.value == doctest::Approx(1047.1976).epsilon(1e-6));
    CHECK(f.active == "coherence");
}

TEST_CASE("invalid rates")
{
    NoiseParams p;
    p.gamma_phi = -1;
    CHECK_THROWS_AS(validate(p), Error);
}

}
