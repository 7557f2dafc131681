#include <doctest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "nhqfi/protocols.hpp"
#include "nhqfi/ptphase.hpp"

using namespace nhqfi;
using namespace nhqfi::model;

namespace {

ChainSpec pt(int n)
{
    ChainSpec s;
    s.n = n;
    s.kind = Kind::pt;
    return s;
}

double circ(double a, double b)
{
    return std::abs(std::remainder(a - b, 2 * pi));
}

}  // namespace

TEST_SUITE("protocols") {

TEST_CASE("dimer quench survival matches direct propagation")
{
    const double gf = 0.7;
    std::vector<double> ts;
    for (int i = 0; i <= 40; ++i) ts.push_back(0.25 * i);
    const auto q = protocols::quench_survival(pt(2), 0.0, gf, ts);
    // ground mode of H(0) is (1, -1)/sqrt2 at E = -1
    Eigen::Vector2cd psi0(1, -1);
    psi0 /= std::sqrt(2.0);
    Eigen::Matrix2cd h;
    h << cplx(0, -gf), 1, 1, cplx(0, gf);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const Eigen::Matrix2cd u = (cplx(0, -ts[i]) * h).exp();
        const Eigen::Vector2cd p = u * psi0;
        const double ref = std::norm(psi0.dot(p)) / p.squaredNorm();
        CHECK(q.survival[i] == doctest::Approx(ref).epsilon(1e-9));
    }
}

TEST_CASE("quench refuses a broken initial state and bad grids")
{
    CHECK_THROWS_AS(protocols::quench_survival(pt(10), 0.5, 1.0, {0, 1, 2, 3}), Error);
    CHECK_THROWS_AS(protocols::quench_survival(pt(10), 0.1, 1.0, {0, 2, 1, 3}), Error);
}

TEST_CASE("gap scan exponent near threshold")
{
    const double gc = ptphase::gc_exact(10, 1);
    std::vector<double> gs;
    for (double e : {1e-5, 1e-4, 1e-3, 1e-2}) gs.push_back(gc - e);
    const auto s = protocols::adiabatic_gap_scan(pt(10), gs);
    CHECK(s.loglog.slope == doctest::Approx(0.5).epsilon(1e-2));
}

TEST_CASE("encircling the exceptional point swaps the pair and restores after two loops")
{
    for (int n : {2, 10}) {
        protocols::BraidOptions o;
        o.radius = 1e-2;
        const auto b = protocols::braid(pt(n), o);
        CHECK(b.swapped);
        CHECK(b.restored);
        CHECK(b.loops_closed == 2);
        CHECK(circ(b.berry_phase.real(), pi) < 1e-6);
        o.steps = 800;
        const auto b2 = protocols::braid(pt(n), o);
        CHECK(circ(b.berry_phase.real(), b2.berry_phase.real()) < 1e-4);
    }
}

TEST_CASE("a loop that misses the exceptional point does not swap")
{
    protocols::BraidOptions o;
    o.center = ptphase::gc_exact(2, 1) - 0.2;
    o.radius = 1e-2;
    const auto b = protocols::braid(pt(2), o);
    CHECK_FALSE(b.swapped);
    CHECK(b.loops_closed == 1);
}

TEST_CASE("resource budget")
{
    protocols::ResourceParams p;
    p.g = 0.1;
    const double tt = protocols::resource_time(p);
    CHECK(tt == doctest::Approx(10 + 1000 + 1 / std::sqrt(2500 / 1e-3) + 50).epsilon(1e-14));
    CHECK(protocols::resource_energy(p) == doctest::Approx(50 * (1 + 0.01 * tt + 1)));
    CHECK(protocols::resource_energy(p) == doctest::Approx(630).epsilon(1e-5));
}

}
