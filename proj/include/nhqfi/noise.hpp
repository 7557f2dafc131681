#pragma once

#include <string>

#include <json.hpp>

#include "nhqfi/common.hpp"

namespace nhqfi::noise {

// Rates in energy units (hbar = 1).
struct NoiseParams {
    double gamma_phi = 0;    // dephasing
    double gamma_minus = 0;  // damping
    double gamma_pt = 0;     // gain/loss imbalance
    double alpha = 0;        // memory-kernel strength
    double gamma_mem = 1;    // memory decay rate
    double eps_sys = 0;      // fractional systematic variance
    double t2 = INFINITY;    // coherence time
};

void validate(const NoiseParams& p);

struct NoisyQfi {
    double f0 = 0;
    double t = 0;
    double value = 0;
};

// gamma_phi + gamma_minus / 2 + gamma_pt sin^2(pi g / g_c)
double gamma_eff(const NoiseParams& p, double g, double g_c);

// f0 e^{-G t} [1 + (gamma_pt / G)(1 - e^{-G t})]; as G -> 0 the bracket
// tends to 1 + gamma_pt t, which the series branch uses below G t = 1e-6.
NoisyQfi qfi_decay(double f0, const NoiseParams& p, double g, double g_c, double t);
NoisyQfi qfi_decay_rate(double f0, double rate, double gamma_pt, double t);

// G (1 + alpha / gamma_mem)
double gamma_eff_nonmarkov(double gamma_eff, double alpha, double gamma_mem);

// sqrt(gamma_pt / t)
double stability_detuning(double gamma_pt, double t);

struct EtaCap {
    double raw = 0;          // t N / (6 G)
    double systematic = 0;   // raw / sqrt(1 + eps_sys^2)
    double coherence = 0;    // t T2 / 6
    double value = 0;        // min of the two branches
    std::string active;      // "systematic", "coherence" or "none"
};

EtaCap eta_cap(double t, int n, double gamma_eff_nm, double eps_sys, double t2);

// Laboratory convention for the capped budget: t / 2 pi in Hz and T2 in
// seconds, so that t T2 is the dimensionless product entering the cap.
struct LabUnits {
    double t_over_2pi_hz = 10e6;
    double t2_seconds = 100e-6;
    double dimensionless_t_t2() const { return 2 * pi * t_over_2pi_hz * t2_seconds; }
};

// N = 50, G = 1e-3 t, 1% systematics, lab T2; all in units t = 1.
EtaCap eta_cap_fixture(const LabUnits& u = {});

nlohmann::json to_json(const EtaCap& e);

}  // namespace nhqfi::noise
