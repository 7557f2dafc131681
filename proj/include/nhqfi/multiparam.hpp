#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "nhqfi/model.hpp"

namespace nhqfi::multiparam {

// Parameter order everywhere: mu, phi, g.
using Mat3 = Eigen::Matrix3d;

struct Sensitivities {
    double mu = 0, phi = 0, g = 0;
};

struct QfiMatrixResult {
    Mat3 f = Mat3::Zero();
    Mat3 f_inv = Mat3::Zero();
    bool invertible = false;
    double det_block = 0;  // det of the (mu, phi) block
    Sensitivities sens;    // sqrt((F^-1)_aa / nu)
    double nu = 1;
    std::string method;    // mode_sum, closed_form, numeric_fd
    std::vector<std::string> warnings;  // regime assumptions that do not hold
};

struct AngleDerivs {
    int m = 0;
    double d_mu = 0, d_phi = 0, d_g = 0;
};

// Bogoliubov-angle derivatives of block m (first order in phi and g).
// Throws Error(ep_degenerate) when E_k = 0.
AngleDerivs angle_derivs(const model::ChainSpec& s, int m);

// F_ab = 4 sum_m d_a theta_m d_b theta_m
QfiMatrixResult mode_sum(const model::ChainSpec& s, double nu = 1);

// Leading-order matrix diag-blocked as [[N^2/4D^2, -N^2 D t^2/4, 0], [., 3N^2 t^4/2, 0], [0, 0, N^2 D^2/4t^2]].
QfiMatrixResult closed_form(int n, double delta, double t, double nu = 1);
QfiMatrixResult closed_form(const model::ChainSpec& s, double nu = 1);

// Analytic inverse of the closed form; throws Error(invalid_argument) when
// delta^4 >= 6 or delta = 0.
Mat3 closed_form_inverse(int n, double delta, double t);
double closed_form_det_block(int n, double delta, double t);

Sensitivities sensitivities(int n, double delta, double t, double nu);

struct Enhancements {
    double eta_mu = 0;   // sqrt(N) / (2 delta)
    double eta_phi = 0;  // t^2 sqrt(3N/2)
    double eta_g = 0;    // delta sqrt(N) / (2 t)
    // Prefactors quoted for the circuit fixture: (2t/delta) sqrt(N),
    // t^2 sqrt(3N), (delta/t) sqrt(N).
    double eta_mu_quoted = 0;
    double eta_phi_quoted = 0;
    double eta_g_quoted = 0;
};
Enhancements enhancement_factors(int n, double delta, double t);

// (N+1)/pi * int_0^pi Delta_k^2 / E_k^4 dk (adaptive quadrature), and the
// Fermi-point estimate N^2 / (4 delta^2 sqrt(1 - (mu/2t)^2)).
struct Continuum {
    double integral = 0;
    double fermi_point = 0;
    bool in_window = false;  // delta << t and N >> 1/delta
};
Continuum f_mumu_continuum(const model::ChainSpec& s);

// sum_{m=1}^N sin^4(m pi / (N+1)) by direct summation.
double sin4_sum(int n);

// Sine-basis matrix elements of the first-order Peierls perturbation
// i phi t sum_j (c_j^dag c_{j+1} - h.c.): exact sums and the simplified
// trigonometric form, plus the largest first-order admixture
// |<k'|H1|k>| / |xi_k - xi_k'| over k' != k.
struct PeierlsCheck {
    CMat exact;
    CMat simplified;
    double max_abs_difference = 0;
    double max_admixture = 0;
};
PeierlsCheck peierls_matrix_elements(const model::ChainSpec& s);

// Quasiparticle-vacuum QFI of the Nambu chain by central differences of the
// biorthogonal projector P onto Re E < 0: F_ab = 2 Re Tr[dP_a dP_b]. For a
// product of independent Bogoliubov blocks this is 4 sum d_a theta d_b theta.
QfiMatrixResult numeric_fd(const model::ChainSpec& s, double nu = 1);

nlohmann::json to_json(const QfiMatrixResult& r, const model::ChainSpec& s);

}  // namespace nhqfi::multiparam
