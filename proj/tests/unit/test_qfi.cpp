#include <doctest.h>

#include <cmath>

#include "nhqfi/qfi.hpp"

using namespace nhqfi;
using namespace nhqfi::model;

namespace {

ChainSpec dimer(double g)
{
    ChainSpec s;
    s.n = 2;
    s.g = g;
    s.kind = Kind::pt;
    return s;
}

}  // namespace

TEST_SUITE("qfi") {

TEST_CASE("pt dimer: biorthogonal QFI is -t^2/(t^2-g^2)^2 from both routes")
{
    for (double g : {0.2, 0.5, 0.9}) {
        const double ref = -1.0 / std::pow(1 - g * g, 2);
        const auto fd = qfi::finite_diff(dimer(g), Param::g);
        const auto ps = qfi::pert_sum(dimer(g), Param::g);
        CHECK(fd.converged);
        CHECK(fd.value == doctest::Approx(ref).epsilon(1e-6));
        CHECK(ps.value == doctest::Approx(ref).epsilon(1e-10));
    }
}

TEST_CASE("gauge invariance under rephasing of the base pair")
{
    const auto s = dimer(0.6);
    const double f0 = qfi::finite_diff(s, Param::g).value;
    for (double ph : {0.3, 1.7, -2.9}) {
        qfi::FdOptions o;
        o.base_phase = ph;
        CHECK(qfi::finite_diff(s, Param::g, o).value == doctest::Approx(f0).epsilon(1e-9));
    }
}

TEST_CASE("hermitian limit: Peierls phase QFI equals 4 Var(j) of the ground mode")
{
    // H(phi) = U H(0) U^dag with U = diag(e^{i j phi}), so d|psi> = i j |psi>.
    ChainSpec s;
    s.n = 9;
    s.kind = Kind::multiparam;
    double m1 = 0, m2 = 0;
    for (int j = 1; j <= s.n; ++j) {
        const double w = 2.0 / (s.n + 1) * std::pow(std::sin(pi * j / (s.n + 1)), 2);
        m1 += w * j;
        m2 += w * j * j;
    }
    const double ref = 4 * (m2 - m1 * m1);
    CHECK(qfi::hermitian_standard(s, Param::phi).value == doctest::Approx(ref).epsilon(1e-9));
    CHECK(qfi::finite_diff(s, Param::phi).value == doctest::Approx(ref).epsilon(1e-6));
    CHECK(qfi::pert_sum(s, Param::phi).value == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("finite-difference and perturbative routes agree on a pt chain")
{
    ChainSpec s;
    s.n = 10;
    s.g = 0.1;
    s.kind = Kind::pt;
    const double a = qfi::finite_diff(s, Param::g).value;
    const double b = qfi::pert_sum(s, Param::g).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-7));
}

TEST_CASE("matrix form reproduces the diagonal and is symmetric")
{
    ChainSpec s;
    s.n = 6;
    s.delta = 0.2;
    s.mu = 0.1;
    s.phi = 0.05;
    s.kind = Kind::multiparam;
    const std::vector<Param> ps = {Param::mu, Param::phi};
    const RMat f = qfi::finite_diff_matrix(s, ps);
    CHECK(std::abs(f(0, 1) - f(1, 0)) < 1e-9);
    CHECK(f(0, 0) == doctest::Approx(qfi::finite_diff(s, Param::mu).value).epsilon(1e-6));
}

TEST_CASE("EP-degenerate pairs are refused")
{
    CHECK_THROWS_AS(qfi::finite_diff(dimer(1.0), Param::g), Error);
}

TEST_CASE("closed forms")
{
    CHECK(qfi::ep_analytic(50, 1, 1e-3).value == doctest::Approx(2500 / 6e-3));
    CHECK(qfi::ep_analytic(50, 1, 1e-3).per_particle == doctest::Approx(50 / 6e-3));
    const int n = 40;
    CHECK(qfi::ep_dicke_sum(n, 1, 0.01).value == doctest::Approx((n * n + 2.0 * n) / 0.06));
    const auto b = qfi::braid_analytic(10, 0.01, 2);
    CHECK(b.value == doctest::Approx(100 * 4 / 0.04));
    CHECK(b.optimal == doctest::Approx(100));
    // far below double range: log-only
    const auto nh = qfi::nhse_analytic(2000, 0.5, 1);
    CHECK(nh.log_only);
    const double lg = std::log10(4.0 / 3) + 3 * std::log10(2000.0) - 2000 / std::log(10.0) - 2 * std::log10(std::sinh(0.5));
    CHECK(nh.log10_abs == doctest::Approx(lg).epsilon(1e-12));
}

TEST_CASE("sweep keeps order and writes log-only rows")
{
    ChainSpec s = dimer(0.3);
    const auto rows = qfi::sweep(s, Param::g, Param::g, {0.1, 0.2, 0.3}, qfi::Method::pert_sum);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].value == 0.2);
    CHECK(rows[1].estimate.value == doctest::Approx(-1 / std::pow(1 - 0.04, 2)));
    const std::string csv = qfi::sweep_csv(rows);
    CHECK(csv.rfind("parameter,value,N,method,qfi_or_log_qfi,step,converged", 0) == 0);
}

}

TEST_SUITE("qfi") {

TEST_CASE("skin-effect chain: similarity form equals the numeric routes")
{
    ChainSpec s;
    s.n = 12;
    s.gamma = 0.2;
    s.kind = Kind::nhse;
    const double ex = qfi::nhse_similarity(s).value;
    CHECK(ex < 0);
    CHECK(qfi::finite_diff(s, Param::gamma).value == doctest::Approx(ex).epsilon(1e-6));
    CHECK(qfi::pert_sum(s, Param::gamma).value == doctest::Approx(ex).epsilon(1e-8));
}

}
