#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "nhqfi/spectral.hpp"

using namespace nhqfi;
using namespace nhqfi::model;

TEST_SUITE("spectral") {

TEST_CASE("biorthonormal pairs reconstruct the operator")
{
    ChainSpec s;
    s.n = 8;
    s.g = 0.1;
    s.kind = Kind::pt;
    const auto h = build_chain(s);
    const auto es = spectral::eig_biorthogonal(h);
    const CMat lr = es.left.adjoint() * es.right;
    CHECK((lr - CMat::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-10);
    const CMat rebuilt = es.right * es.eigenvalues.asDiagonal() * es.left.adjoint();
    CHECK((rebuilt - h.dense()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("ground index picks the smallest real part")
{
    CVec ev(3);
    ev << cplx(0.5, 0), cplx(-1, 0.2), cplx(-0.9, 0);
    CHECK(spectral::ground_index(ev, 1.0) == 1);
}

TEST_CASE("hermitian open chain with pairing: eigenvalues come in +-E pairs")
{
    ChainSpec s;
    s.n = 6;
    s.delta = 0.3;
    s.mu = 0.2;
    CVec ev = spectral::eigenvalues(build_chain(s));
    std::vector<double> re;
    for (int i = 0; i < ev.size(); ++i) re.push_back(ev(i).real());
    std::sort(re.begin(), re.end());
    for (std::size_t i = 0; i < re.size(); ++i) CHECK(re[i] == doctest::Approx(-re[re.size() - 1 - i]).epsilon(1e-10));
}

TEST_CASE("skin-mode overlap closed form misses N^2 e^{2 kappa}")
{
    for (double k : {0.44, 1.0})
        for (int n : {10, 40}) {
            const auto sm = spectral::skin_modes(k, n);
            CHECK(sm.discrepancy);
            CHECK(sm.discrepancy_log_ratio == doctest::Approx(std::log(double(n) * n) + 2 * k).epsilon(1e-10));
        }
}

TEST_CASE("localization exponents")
{
    const auto l = spectral::localization_exponents(1.0, 1.1, 0.5);
    REQUIRE(l.kappa_arccosh);
    REQUIRE(l.kappa_hn);
    CHECK(*l.kappa_arccosh == doctest::Approx(std::acosh(1.1)));
    CHECK(*l.kappa_hn == doctest::Approx(0.5 * std::log(3.0)));
    CHECK_FALSE(spectral::localization_exponents(1.0, 0.0, 1.5).kappa_hn);
}

TEST_CASE("participation ratio of a uniform vector is its length")
{
    CHECK(spectral::participation_ratio(CVec::Ones(12)) == doctest::Approx(12));
    CVec e = CVec::Zero(12);
    e(3) = 1;
    CHECK(spectral::participation_ratio(e) == doctest::Approx(1));
}

TEST_CASE("dimer near its exceptional point is flagged by the overlap condition")
{
    ChainSpec s;
    s.n = 2;
    s.kind = Kind::pt;
    s.g = 1 - 1e-14;
    const auto es = spectral::eig_biorthogonal(build_chain(s));
    CHECK(es.min_overlap_cond() < 1e-6);
}

}
