#include "nhqfi/noise.hpp"

#include <cmath>

namespace nhqfi::noise {

void validate(const NoiseParams& p)
{
    if (p.gamma_phi < 0 || p.gamma_minus < 0 || p.gamma_pt < 0 || p.alpha < 0 || p.gamma_mem < 0 || p.eps_sys < 0 ||
        !(p.t2 > 0))
        throw Error(ErrorKind::invalid_argument, "noise rates must be >= 0 and T2 > 0");
}

double gamma_eff(const NoiseParams& p, double g, double g_c)
{
    validate(p);
    if (!(g_c > 0)) throw Error(ErrorKind::invalid_argument, "g_c must be > 0");
    const double s = std::sin(pi * g / g_c);
    return p.gamma_phi + 0.5 * p.gamma_minus + p.gamma_pt * s * s;
}

NoisyQfi qfi_decay_rate(double f0, double rate, double gamma_pt, double t)
{
    if (!(t >= 0)) throw Error(ErrorKind::invalid_argument, "time must be >= 0");
    if (rate < 0 || gamma_pt < 0) throw Error(ErrorKind::invalid_argument, "rates must be >= 0");
    NoisyQfi q{f0, t, f0};
    const double x = rate * t;
    // (1 - e^{-x}) / G = t (1 - x/2 + x^2/6 - ...)
    const double growth = x < 1e-6 ? t * (1 - x / 2 + x * x / 6) : -std::expm1(-x) / rate;
    q.value = f0 * std::exp(-x) * (1 + gamma_pt * growth);
    return q;
}

NoisyQfi qfi_decay(double f0, const NoiseParams& p, double g, double g_c, double t)
{
    return qfi_decay_rate(f0, gamma_eff(p, g, g_c), p.gamma_pt, t);
}

double gamma_eff_nonmarkov(double gamma_eff, double alpha, double gamma_mem)
{
    if (!(gamma_mem > 0)) throw Error(ErrorKind::invalid_argument, "memory decay rate must be > 0");
    if (gamma_eff < 0 || alpha < 0) throw Error(ErrorKind::invalid_argument, "rates must be >= 0");
    return gamma_eff * (1 + alpha / gamma_mem);
}

double stability_detuning(double gamma_pt, double t)
{
    if (!(t > 0) || gamma_pt < 0) throw Error(ErrorKind::invalid_argument, "need t > 0 and gamma_pt >= 0");
    return std::sqrt(gamma_pt / t);
}

EtaCap eta_cap(double t, int n, double gamma_eff_nm, double eps_sys, double t2)
{
    if (!(t > 0) || n < 1 || !(gamma_eff_nm > 0) || eps_sys < 0 || !(t2 > 0))
        throw Error(ErrorKind::invalid_argument, "eta_cap needs positive inputs");
    EtaCap e;
    e.raw = t * n / (6 * gamma_eff_nm);
    e.systematic = e.raw / std::sqrt(1 + eps_sys * eps_sys);
    e.coherence = std::isinf(t2) ? INFINITY : t * t2 / 6;
    e.value = std::min(e.systematic, e.coherence);
    if (e.value == e.raw) e.active = "none";
    else e.active = e.coherence < e.systematic ? "coherence" : "systematic";
    return e;
}

EtaCap eta_cap_fixture(const LabUnits& u) { return eta_cap(1.0, 50, 1e-3, 0.01, u.dimensionless_t_t2()); }

nlohmann::json to_json(const EtaCap& e)
{
    return {{"raw", e.raw}, {"systematic_branch", e.systematic}, {"coherence_branch", e.coherence},
            {"value", e.value}, {"active", e.active}};
}

}  // namespace nhqfi::noise
