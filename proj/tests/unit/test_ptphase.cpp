#include <doctest.h>

#include <cmath>

#include "nhqfi/ptphase.hpp"
#include "nhqfi/spectral.hpp"

using namespace nhqfi;
using namespace nhqfi::model;

namespace {

ChainSpec pt(int n, double g = 0)
{
    ChainSpec s;
    s.n = n;
    s.g = g;
    s.kind = Kind::pt;
    return s;
}

}  // namespace

TEST_SUITE("ptphase") {

TEST_CASE("last real pair coalesces at 2t cos(pi/(N+1))")
{
    for (int n : {2, 6, 10, 21}) {
        const auto r = ptphase::gc_numeric(pt(n), 0, 2.2, ptphase::Indicator::all_complex);
        CHECK(r.g == doctest::Approx(ptphase::gc_exact(n, 1)).epsilon(1e-7));
    }
}

TEST_CASE("first pair leaves the real axis at 2t sin(pi/(2(N+1))) for even N")
{
    for (int n : {4, 10}) {
        const auto r = ptphase::gc_numeric(pt(n), 0, 2.2, ptphase::Indicator::any_complex);
        CHECK(r.g == doctest::Approx(2 * std::sin(pi / (2 * (n + 1)))).epsilon(1e-7));
    }
}

TEST_CASE("no transition inside the bracket is reported")
{
    CHECK_THROWS_AS(ptphase::gc_numeric(pt(10), 0, 0.1, ptphase::Indicator::all_complex), Error);
}

TEST_CASE("expansion converges to the exact threshold")
{
    const int n = 200;
    const double e = ptphase::gc_exact(n, 1);
    CHECK(std::abs(ptphase::gc_expansion(n, 1, 4) - e) < std::abs(ptphase::gc_expansion(n, 1, 2) - e));
    // the series is in 1/N rather than 1/(N+1): leading residual 2 pi^2 / N^3
    CHECK(std::abs(ptphase::gc_expansion(n, 1, 4) - e) == doctest::Approx(2 * pi * pi / std::pow(n, 3)).epsilon(0.02));
}

TEST_CASE("square-root splitting near threshold")
{
    const auto f = ptphase::splitting_fit(pt(10), {1e-6, 1e-5, 1e-4, 1e-3});
    CHECK(f.exponent == doctest::Approx(0.5).epsilon(1e-2));
    CHECK_FALSE(f.low_r2);
}

TEST_CASE("dimer coalescing gap is 2 sqrt(t^2 - g^2)")
{
    const CVec ev = spectral::eigenvalues(build_chain(pt(2, 0.6)));
    CHECK(ptphase::coalescing_gap(ev) == doctest::Approx(2 * std::sqrt(1 - 0.36)));
}

TEST_CASE("regime labels and consistency flag")
{
    auto p = ptphase::classify_regime(pt(10, 0.1));
    CHECK(p.regime == ptphase::Regime::extended_unbroken);
    CHECK(p.consistent);
    p = ptphase::classify_regime(pt(10, 1.0));
    CHECK(p.regime == ptphase::Regime::extended_unbroken);
    CHECK_FALSE(p.consistent);  // inner pairs already broken
    p = ptphase::classify_regime(pt(10, 2.5));
    CHECK(p.regime == ptphase::Regime::extended_broken);
    CHECK(p.consistent);
}

TEST_CASE("phase diagram rows and csv")
{
    const auto rows = ptphase::phase_diagram({4, 8}, {0.0, 0.5, 1.5});
    CHECK(rows.size() == 2 * (3 + 2));
    const auto csv = ptphase::phase_diagram_csv(rows);
    CHECK(csv.rfind("N,gamma_over_t,kind,regime,g_c,max_im,qfi_log10\n", 0) == 0);
}

}
