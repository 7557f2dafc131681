#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nhqfi/model.hpp"

namespace nhqfi::qfi {

enum class Method {
    finite_diff,
    pert_sum,
    analytic_nhse,
    analytic_nhse_alternate,
    analytic_ep,
    analytic_ep_dicke,
    analytic_braid,
    hermitian_standard,
    similarity_nhse,
};
std::string to_string(Method m);
Method method_from_string(std::string_view s);

// A QFI value together with its provenance. Values too small for a double
// are carried as log10 only (log_only = true, value = 0). The biorthogonal
// form is not sign-definite away from the Hermitian limit, so `value` keeps
// its sign and log10_abs refers to |value|.
struct QfiEstimate {
    double value = 0;
    double log10_abs = 0;
    bool log_only = false;
    std::optional<model::Param> parameter;
    Method method = Method::finite_diff;
    double step = 0;
    int state_index = -1;
    bool converged = true;

    // finite_diff: the same differences inserted into 4[Re<dL|dR> - |<L|dR>|^2]
    double uncorrected_cross_term = 0;
    // analytic forms: F/N (EP: the enhancement eta)
    double per_particle = 0;
    double log10_per_particle = 0;
    // braid: optimal-dwell value
    double optimal = 0;

    static QfiEstimate from_log10(double log10_value, Method m);
};

struct FdOptions {
    double step = 0;        // 0: 1e-5 max(|theta|, 1)
    int state_index = -1;   // -1: ground state
    double base_phase = 0;  // extra phase on the base pair, for gauge checks
};

// Central differences of the biorthonormal pair, rephased so <R_0|R_+-> is
// real positive; F = 4 Re[<dL|dR> - <dL|R><L|dR>], which is invariant under
// R -> c R, L -> L / conj(c). converged = false when F(h) and F(h/2)
// differ by more than 1%.
QfiEstimate finite_diff(const model::ChainSpec& s, model::Param p, const FdOptions& opt = {});

// Pairwise form of the same construction over several parameters:
// F_ab = 2 Re[<daL|dbR> + <dbL|daR> - <daL|R><L|dbR> - <dbL|R><L|daR>].
RMat finite_diff_matrix(const model::ChainSpec& s, const std::vector<model::Param>& params, const FdOptions& opt = {});

// 4 Re sum_{n != 0} <L_0|dH|R_n><L_n|dH|R_0> / (E_n - E_0)^2 with exact dH.
QfiEstimate pert_sum(const model::ChainSpec& s, model::Param p, int state_index = -1);

// 4 sum |<n|dH|0>|^2 / (E_n - E_0)^2 on a Hermitian spec.
QfiEstimate hermitian_standard(const model::ChainSpec& s, model::Param p, int state_index = -1);

// Exact d/dgamma QFI of the skin-effect chain through H = S H' S^{-1},
// S = diag(e^{kappa j}), H' symmetric with hopping sqrt(t^2 - gamma^2): the
// eigenvectors of H' do not depend on gamma, so
// F = -4 (dkappa/dgamma)^2 Var_psi(j), dkappa/dgamma = t / (t^2 - gamma^2).
// mode = -1 selects the ground mode (m = N, smallest Re E).
QfiEstimate nhse_similarity(const model::ChainSpec& s, int mode = -1);
// 4 N^3 e^{-2 kappa N} / (3 t^2 sinh^2 kappa)
QfiEstimate nhse_analytic(int n, double kappa, double t);
// N^2 e^{-2 kappa N}
QfiEstimate nhse_alternate(int n, double kappa);
// tau^2 t N^2 / (6 delta); per_particle = tau^2 t N / (6 delta)
QfiEstimate ep_analytic(int n, double t, double delta, double tau = 1.0);
// Variance form over a uniform superposition of k = 0..N,
// 2 tau^2 t / delta * (<k^2> - <k>^2) = tau^2 t (N^2 + 2N) / (6 delta).
QfiEstimate ep_dicke_sum(int n, double t, double delta, double tau = 1.0);
// N^2 tau^2 / (4 eps); optimal = N^2
QfiEstimate braid_analytic(int n, double eps, double tau);

struct SweepRow {
    model::Param parameter;
    double value = 0;
    int n = 0;
    Method method = Method::finite_diff;
    QfiEstimate estimate;
};

// Evaluates `method` at each value of `vary` (a spec field other than the
// differentiated parameter, or the same one), in parallel, preserving order.
std::vector<SweepRow> sweep(const model::ChainSpec& base, model::Param differentiate, model::Param vary,
                            const std::vector<double>& values, Method method);

// CSV with columns parameter,value,N,method,qfi_or_log_qfi,step,converged;
// log-only values are written as "log10:<x>".
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace nhqfi::qfi
