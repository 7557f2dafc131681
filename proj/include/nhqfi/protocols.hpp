#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nhqfi/fit.hpp"
#include "nhqfi/model.hpp"

namespace nhqfi::protocols {

struct QuenchResult {
    std::vector<double> times;
    std::vector<double> survival;
    // e^{-gamma t} cos^2(omega t + phase)
    double gamma = 0;
    double omega = 0;
    double phase = 0;
    double r2 = 0;
    bool fit_ok = false;  // r2 >= 0.9
};

// Prepares the ground pair of H(g_initial), evolves under H(g_final) with
// exp(-i H dt) per interval and renormalizes after every step; survival is
// |<psi0|psi(t)>|^2 with unit-norm states. Times must be increasing from 0.
QuenchResult quench_survival(const model::ChainSpec& tmpl, double g_initial, double g_final,
                             const std::vector<double>& times);

std::string quench_csv(const QuenchResult& q);

struct GapScan {
    std::vector<double> g;
    std::vector<double> gap;  // NaN when fewer than two real levels remain
    fit::LinearFit loglog;    // log gap vs log |g - g_c| over finite entries
};

// Minimum adjacent spacing among the real levels (|Im E| <= 1e-9 t) at
// each g. The exponent fit uses points with g != g_c.
GapScan adiabatic_gap_scan(const model::ChainSpec& tmpl, const std::vector<double>& g_grid);
double min_real_gap(const CVec& ev, double tol_imag);

struct BraidOptions {
    double center = NAN;  // default: g_c of the template
    double radius = 1e-2;
    double period = 1.0;  // T, enters only the adiabaticity check
    int steps = 400;      // per loop
};

struct BraidResult {
    double center = 0, radius = 0, period = 0;
    int steps = 0;
    cplx start_value;          // tracked eigenvalue at s = 0
    cplx partner_value;        // its coalescing partner at s = 0
    cplx end_value;            // tracked eigenvalue after one loop
    cplx end_value_two;        // ... and after a second loop
    bool swapped = false;      // one loop lands on the partner
    bool restored = false;     // two loops land back on the start
    // i sum 1/2 log(<L_k|R_{k+1}> / <L_{k+1}|R_k>) over the closed monodromy: one loop when the
    // pair returns to itself, two when it swaps.
    cplx berry_phase;
    int loops_closed = 0;
    bool adiabatic_ok = false;   // 10 * 2 pi eps / T <= sqrt(2 t eps)
    cplx perturbation_element;   // <L|dH/dg|R> of the tracked state at s = 0
    std::vector<cplx> trajectory;  // tracked eigenvalue per step, both loops
};

// Encircles g = center + radius e^{2 pi i s} in the complex gain plane and
// follows the eigenpair of smallest |E| (ties: larger Im E) by maximal
// |<R_prev|R_next>| through two loops.
// Throws Error(tracking) when the best two overlaps tie within 1e-12.
BraidResult braid(const model::ChainSpec& tmpl, const BraidOptions& opt);
nlohmann::json to_json(const BraidResult& b);

struct ResourceParams {
    double t = 1;
    double delta = 1e-3;
    double nu = 1;
    int n = 50;
    double t_read = 1;
    double g = 0;
    double t2 = INFINITY;
};

// 10/t + 1/(t delta) + sqrt(nu) / (t sqrt(N^2/delta)) + N / t_read
double resource_time(const ResourceParams& p);
// N t [1 + (g^2/t^2)(T_total/t) + 1/(t t_read)]
double resource_energy(const ResourceParams& p, double t_total);
double resource_energy(const ResourceParams& p);

}  // namespace nhqfi::protocols
