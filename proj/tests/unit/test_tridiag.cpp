#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "nhqfi/tridiag.hpp"

using namespace nhqfi;

namespace {

double match_error(CVec a, CVec b)
{
    // greedy nearest matching; spectra here are well separated
    double worst = 0;
    std::vector<bool> used(b.size(), false);
    for (int i = 0; i < a.size(); ++i) {
        int best = -1;
        for (int j = 0; j < b.size(); ++j)
            if (!used[j] && (best < 0 || std::abs(a(i) - b(j)) < std::abs(a(i) - b(best)))) best = j;
        used[best] = true;
        worst = std::max(worst, std::abs(a(i) - b(best)));
    }
    return worst;
}

}  // namespace

TEST_SUITE("tridiag") {

TEST_CASE("open chain spectrum 2t cos(m pi/(N+1)), even and odd N")
{
    for (int n : {1, 2, 7, 64, 125}) {
        CVec a = CVec::Zero(n), b = CVec::Ones(std::max(n - 1, 0)), c = b;
        if (n == 1) continue;
        const auto ev = tridiag::eigenvalues(a, b, c);
        REQUIRE(ev);
        CVec ref(n);
        for (int m = 1; m <= n; ++m) ref(m - 1) = 2 * std::cos(m * pi / (n + 1));
        CHECK(match_error(ev->values, ref) < 1e-12);
    }
}

TEST_CASE("staggered gain spectrum sqrt(4 cos^2 k - g^2)")
{
    const int n = 40;
    const double g = 0.9;
    CVec a(n), b = CVec::Ones(n - 1);
    for (int j = 1; j <= n; ++j) a(j - 1) = cplx(0, (j % 2 ? -1 : 1) * g);
    const auto ev = tridiag::eigenvalues(a, b, b);
    REQUIRE(ev);
    CVec ref(n);
    for (int m = 1; m <= n; ++m) {
        const double c = 2 * std::cos(m * pi / (n + 1));
        ref(m - 1) = (c >= 0 ? 1.0 : -1.0) * std::sqrt(cplx(c * c - g * g, 0));
    }
    CHECK(match_error(ev->values, ref) < 1e-12);
}

TEST_CASE("asymmetric hopping is handled through the log-scaled similarity")
{
    const int n = 60;
    const double tr = 1.5, tl = 0.5;  // e^{kappa} asymmetry
    CVec a = CVec::Zero(n), b = CVec::Constant(n - 1, tr), c = CVec::Constant(n - 1, tl);
    const auto sym = tridiag::symmetrize(a, b, c);
    REQUIRE(sym);
    CHECK(std::abs(sym->e(0) - std::sqrt(cplx(tr * tl))) < 1e-14);
    const auto ev = tridiag::eigenvalues(a, b, c);
    REQUIRE(ev);
    CVec ref(n);
    for (int m = 1; m <= n; ++m) ref(m - 1) = 2 * std::sqrt(tr * tl) * std::cos(m * pi / (n + 1));
    CHECK(match_error(ev->values, ref) < 1e-12);
}

TEST_CASE("random complex tridiagonal agrees with the dense solver")
{
    const int n = 80;
    CVec a(n), b(n - 1), c(n - 1);
    unsigned s = 12345;
    auto rnd = [&] {
        s = s * 1103515245u + 12345u;
        return ((s >> 8) & 0xffff) / 65536.0 - 0.5;
    };
    for (int i = 0; i < n; ++i) a(i) = cplx(rnd(), rnd());
    for (int i = 0; i < n - 1; ++i) {
        b(i) = cplx(1 + rnd(), rnd());
        c(i) = cplx(1 + rnd(), rnd());
    }
    CMat d = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = a(i);
    for (int i = 0; i < n - 1; ++i) {
        d(i, i + 1) = b(i);
        d(i + 1, i) = c(i);
    }
    Eigen::ComplexEigenSolver<CMat> es(d, false);
    const auto ev = tridiag::eigenvalues(a, b, c);
    REQUIRE(ev);
    CHECK(match_error(ev->values, es.eigenvalues()) < 1e-10);
}

TEST_CASE("zero coupling is refused")
{
    CVec a = CVec::Zero(3), b = CVec::Ones(2), c = CVec::Ones(2);
    c(1) = 0;
    CHECK_FALSE(tridiag::eigenvalues(a, b, c).has_value());
}

}
