#include <doctest.h>

#include <cmath>

#include "nhqfi/model.hpp"

using namespace nhqfi;
using namespace nhqfi::model;

TEST_SUITE("model") {

TEST_CASE("hermitian chain is tridiagonal with +t hopping and -mu onsite")
{
    ChainSpec s;
    s.n = 4;
    s.mu = 0.3;
    const auto h = build_chain(s);
    CHECK(h.dim() == 4);
    CHECK(h.is_tridiagonal());
    CHECK(h.is_hermitian());
    CHECK(h.at(0, 1) == cplx(1, 0));
    CHECK(h.at(2, 2) == cplx(-0.3, 0));
}

TEST_CASE("nambu doubling only with pairing")
{
    ChainSpec s;
    s.n = 5;
    s.delta = 0.2;
    CHECK(build_chain(s).dim() == 10);
    s.delta = 0;
    CHECK(build_chain(s).dim() == 5);
}

TEST_CASE("pt chain carries i g (-1)^j with 1-based j")
{
    ChainSpec s;
    s.n = 3;
    s.g = 0.4;
    s.kind = Kind::pt;
    const auto h = build_chain(s);
    CHECK(h.at(0, 0).imag() == doctest::Approx(-0.4));
    CHECK(h.at(1, 1).imag() == doctest::Approx(0.4));
    CHECK_FALSE(h.is_hermitian());
}

TEST_CASE("validation rejects gamma >= t for the skin-effect chain")
{
    ChainSpec s;
    s.n = 4;
    s.kind = Kind::nhse;
    s.gamma = 1.5;
    CHECK_THROWS_AS(validate(s), Error);
    s.gamma = 0.5;
    CHECK_NOTHROW(validate(s));
}

TEST_CASE("key=value and json round trip")
{
    ChainSpec s;
    s.n = 7;
    s.g = 0.25;
    s.kind = Kind::pt;
    const auto a = parse_kv(to_kv(s));
    const auto b = from_json(to_json(s));
    CHECK(a.n == 7);
    CHECK(a.g == 0.25);
    CHECK(a.kind == Kind::pt);
    CHECK(b.g == 0.25);
}

TEST_CASE("exact derivative matches a central difference")
{
    ChainSpec s;
    s.n = 5;
    s.delta = 0.3;
    s.mu = 0.2;
    s.phi = 0.1;
    s.g = 0.05;
    s.kind = Kind::multiparam;
    for (Param p : {Param::mu, Param::phi, Param::g, Param::t, Param::delta}) {
        const double h = 1e-6;
        const CMat fd = (build_chain(with(s, p, get(s, p) + h)).dense() - build_chain(with(s, p, get(s, p) - h)).dense()) / (2 * h);
        CHECK((fd - derivative(s, p).dense()).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("banded apply agrees with dense product")
{
    ChainSpec s;
    s.n = 6;
    s.delta = 0.4;
    s.mu = 0.1;
    const auto h = build_chain(s);
    CVec x = CVec::LinSpaced(h.dim(), 1, 2) * cplx(1, 0.5);
    CHECK((h.apply(x) - h.dense() * x).norm() < 1e-13);
}

}
