#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nhqfi/fit.hpp"
#include "nhqfi/model.hpp"

namespace nhqfi::ptphase {

constexpr double tol_real = 1e-10;         // x t: spectrum counts as real below this
constexpr double critical_window = 1e-6;   // x t around g_c

enum class Regime { extended_unbroken, extended_broken, nhse_suppressed, critical };
std::string to_string(Regime r);

struct PhasePoint {
    model::ChainSpec spec;
    Regime regime = Regime::extended_unbroken;
    double max_im = 0;
    double g_c = 0;
    double detuning = 0;
    // false when the label disagrees with the spectrum (unbroken label but
    // max_im above tol_real, or broken label with a real spectrum)
    bool consistent = true;
};

// 2t cos(pi / (N+1))
double gc_exact(int n, double t);
// order 2: 2t (1 - pi^2 / 2N^2); order 4 adds 2t pi^4 / (8 N^4)
double gc_expansion(int n, double t, int order);

// Which eigenvalue statistic flags the broken phase during bisection.
enum class Indicator {
    any_complex,  // max |Im E| > tol_real t: first pair leaves the real axis
    all_complex,  // min |Im E| > tol_real t: last real pair has coalesced
};
std::string to_string(Indicator i);
Indicator indicator_from_string(std::string_view s);

double max_imag(const CVec& ev);
double min_abs_imag(const CVec& ev);

struct GcSearch {
    double g = 0;
    double lo = 0, hi = 0;
    int evaluations = 0;
};

// Scan-then-bisect on g in [g_lo, g_hi] for the first flip of the indicator;
// the bracket is narrowed to <= 1e-8 t. Throws Error(no_transition) when the
// indicator has the same value everywhere on the scan.
GcSearch gc_numeric(const model::ChainSpec& tmpl, double g_lo, double g_hi, Indicator ind = Indicator::any_complex);

// sqrt(2 t^2 sin^2(pi/(N+1)) / (N+1))
double splitting_coefficient(int n, double t);

// Distance between the two eigenvalues of smallest modulus: the pair that
// coalesces at E = 0 when g reaches g_c.
double coalescing_gap(const CVec& ev);

struct SplittingFit {
    fit::LinearFit loglog;
    double exponent = 0;
    double prefactor = 0;       // alpha with gap = 2 alpha |eps|^exponent
    double alpha_formula = 0;
    double eps_min = 0, eps_max = 0;
    bool low_r2 = false;        // r2 < 0.99
    std::vector<double> eps, gap;
};

// eps > 0 values are |g - g_c|; side = -1 below g_c, +1 above.
SplittingFit splitting_fit(const model::ChainSpec& tmpl, const std::vector<double>& eps, int side = -1);

struct FlowPoint {
    double g = 0;
    cplx printed;     // piecewise formula with cos^2 on g^2, branch by radicand sign
    cplx dispersion;  // sqrt(4 t^2 cos^2 k + Delta^2 sin^2 k - g^2)
    cplx numeric;     // tracked eigenvalue of the chain
};

// Trajectory of mode m (positive branch) over the g grid; the numeric
// eigenvalue is followed by nearest continuation from +2t cos k_m at g = 0.
std::vector<FlowPoint> spectral_flow(const model::ChainSpec& tmpl, int m, const std::vector<double>& g_grid);

// max Re E - min Re E of the chain spectrum
double bandwidth(const model::ChainSpec& s);
// 2 sqrt((g_c^2 - g^2) cos^2(pi/(N+1)))
double bandwidth_formula(int n, double t, double g);

struct BandwidthFit {
    fit::LinearFit loglog;  // log bandwidth vs log(g_c - g)
    std::vector<double> g, width;
};
BandwidthFit bandwidth_fit(const model::ChainSpec& tmpl, const std::vector<double>& g_over_gc);

PhasePoint classify_regime(const model::ChainSpec& s);

struct DiagramRow {
    int n = 0;
    double gamma_over_t = 0;
    model::Kind kind = model::Kind::pt;
    Regime regime = Regime::extended_unbroken;
    double g_c = 0;
    double max_im = 0;
    double qfi_log10 = 0;  // NaN where the closed forms do not apply
    bool consistent = true;
};

// For each N and x: a pt row with g = x t and, for x < 1, an nhse row with
// gamma = x t. QFI is the EP law t N^2 / (6 (g_c - g)) on unbroken pt rows
// and the skin-effect law on nhse rows.
std::vector<DiagramRow> phase_diagram(const std::vector<int>& ns, const std::vector<double>& xs, double t = 1.0);
std::string phase_diagram_csv(const std::vector<DiagramRow>& rows);

}  // namespace nhqfi::ptphase
