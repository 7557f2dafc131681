#include "nhqfi/multiparam.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/LU>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nhqfi/spectral.hpp"

namespace nhqfi::multiparam {

namespace {

void finish(QfiMatrixResult& r)
{
    r.det_block = r.f(0, 0) * r.f(1, 1) - r.f(0, 1) * r.f(1, 0);
    Eigen::FullPivLU<Mat3> lu(r.f);
    r.invertible = lu.isInvertible();
    if (r.invertible) {
        r.f_inv = lu.inverse();
        r.sens.mu = std::sqrt(std::max(r.f_inv(0, 0), 0.0) / r.nu);
        r.sens.phi = std::sqrt(std::max(r.f_inv(1, 1), 0.0) / r.nu);
        r.sens.g = std::sqrt(std::max(r.f_inv(2, 2), 0.0) / r.nu);
    } else {
        r.f_inv.setConstant(NAN);
        r.sens = {INFINITY, INFINITY, INFINITY};
    }
}

std::vector<std::string> regime_warnings(const model::ChainSpec& s)
{
    std::vector<std::string> w;
    if (s.delta > 0.3 * s.t) w.push_back("pairing not weak (delta > 0.3 t)");
    if (std::abs(s.mu) >= 2 * s.t) w.push_back("|mu| >= 2t: no Fermi surface");
    if (s.g * s.n >= 1) w.push_back("gN >= 1: outside the perturbative gain window");
    if (std::abs(s.phi) > 0.3) w.push_back("|phi| > 0.3: first-order phase expansion questionable");
    return w;
}

}  // namespace

AngleDerivs angle_derivs(const model::ChainSpec& s, int m)
{
    const model::BdgBlock b = model::bdg_block(s, m);
    if (b.energy == 0.0) {
        std::ostringstream os;
        os << "block m=" << m << " has E_k = 0";
        throw Error(ErrorKind::ep_degenerate, os.str());
    }
    const double e2 = b.energy * b.energy;
    const double sk = std::sin(b.k);
    AngleDerivs d;
    d.m = m;
    d.d_mu = b.delta_k / (2 * e2);
    d.d_phi = -s.t * s.t * sk * sk / e2 * (1 + b.delta_k * b.delta_k / e2);
    d.d_g = b.delta_k * b.stag / (2 * e2);
    return d;
}

QfiMatrixResult mode_sum(const model::ChainSpec& s, double nu)
{
    QfiMatrixResult r;
    r.method = "mode_sum";
    r.nu = nu;
    r.warnings = regime_warnings(s);
    for (int m = 1; m <= s.n; ++m) {
        const AngleDerivs d = angle_derivs(s, m);
        const Eigen::Vector3d v(d.d_mu, d.d_phi, d.d_g);
        r.f += 4 * v * v.transpose();
    }
    finish(r);
    return r;
}

QfiMatrixResult closed_form(int n, double delta, double t, double nu)
{
    if (n < 1 || !(t > 0) || delta < 0) throw Error(ErrorKind::invalid_argument, "closed form needs N >= 1, t > 0, delta >= 0");
    const double n2 = static_cast<double>(n) * n;
    QfiMatrixResult r;
    r.method = "closed_form";
    r.nu = nu;
    r.f(0, 0) = delta > 0 ? n2 / (4 * delta * delta) : INFINITY;
    r.f(0, 1) = r.f(1, 0) = -n2 * delta * t * t / 4;
    r.f(1, 1) = 1.5 * n2 * std::pow(t, 4);
    r.f(2, 2) = n2 * delta * delta / (4 * t * t);
    if (delta > 0.3 * t) r.warnings.push_back("pairing not weak (delta > 0.3 t)");
    if (delta > 0 && std::pow(delta, 4) < 6) {
        r.f_inv = closed_form_inverse(n, delta, t);
        r.invertible = true;
        r.det_block = closed_form_det_block(n, delta, t);
        r.sens = sensitivities(n, delta, t, nu);
    } else {
        r.f_inv.setConstant(NAN);
        r.det_block = delta > 0 ? closed_form_det_block(n, delta, t) : NAN;
        r.sens = {INFINITY, INFINITY, INFINITY};
    }
    return r;
}

QfiMatrixResult closed_form(const model::ChainSpec& s, double nu)
{
    QfiMatrixResult r = closed_form(s.n, s.delta, s.t, nu);
    for (auto& w : regime_warnings(s))
        if (w.rfind("pairing", 0) != 0) r.warnings.push_back(w);
    return r;
}

Mat3 closed_form_inverse(int n, double delta, double t)
{
    const double d4 = std::pow(delta, 4);
    if (!(delta > 0) || d4 >= 6) throw Error(ErrorKind::invalid_argument, "closed-form block is singular (need 0 < delta^4 < 6)");
    const double pre = 1.0 / (static_cast<double>(n) * n * (6 - d4));
    Mat3 inv = Mat3::Zero();
    inv(0, 0) = 24 * delta * delta;
    inv(0, 1) = inv(1, 0) = 4 * std::pow(delta, 3) / (t * t);
    inv(1, 1) = 4 / std::pow(t, 4);
    inv(2, 2) = 4 * t * t * (6 - d4) / (delta * delta);
    return pre * inv;
}

double closed_form_det_block(int n, double delta, double t)
{
    const double n4 = std::pow(static_cast<double>(n), 4);
    return n4 * std::pow(t, 4) * (6 - std::pow(delta, 4)) / (16 * delta * delta);
}

Sensitivities sensitivities(int n, double delta, double t, double nu)
{
    if (!(nu >= 1)) throw Error(ErrorKind::invalid_argument, "nu must be >= 1");
    const double root = std::sqrt(nu * (6 - std::pow(delta, 4)));
    Sensitivities s;
    s.mu = 2 * delta * std::sqrt(6.0) / (n * root);
    s.phi = 2 / (n * t * t * root);
    s.g = 2 * t / (n * delta * std::sqrt(nu));
    return s;
}

Enhancements enhancement_factors(int n, double delta, double t)
{
    const double rn = std::sqrt(static_cast<double>(n));
    Enhancements e;
    e.eta_mu = rn / (2 * delta);
    e.eta_phi = t * t * std::sqrt(1.5 * n);
    e.eta_g = delta * rn / (2 * t);
    e.eta_mu_quoted = 2 * t / delta * rn;
    e.eta_phi_quoted = t * t * std::sqrt(3.0 * n);
    e.eta_g_quoted = delta / t * rn;
    return e;
}

Continuum f_mumu_continuum(const model::ChainSpec& s)
{
    using boost::math::quadrature::gauss_kronrod;
    const double t = s.t, d = s.delta, mu = s.mu;
    auto f = [&](double k) {
        const double dk = 2 * d * std::sin(k);
        const double x = 2 * t * std::cos(k) + mu;
        const double e2 = x * x + dk * dk;
        return e2 > 0 ? dk * dk / (e2 * e2) : 0.0;
    };
    // split at the Fermi point, where the integrand peaks with width ~ delta/t
    double integral = 0;
    if (std::abs(mu) < 2 * t) {
        const double kf = std::acos(-mu / (2 * t));
        const double w = std::max(d / t, 1e-6);
        const double pts[] = {0.0, std::max(kf - 20 * w, 0.0), kf, std::min(kf + 20 * w, pi), pi};
        for (int i = 0; i + 1 < 5; ++i)
            if (pts[i + 1] > pts[i]) integral += gauss_kronrod<double, 61>::integrate(f, pts[i], pts[i + 1], 25, 1e-13);
    } else {
        integral = gauss_kronrod<double, 61>::integrate(f, 0.0, pi, 25, 1e-13);
    }
    Continuum c;
    c.integral = (s.n + 1) / pi * integral;
    const double q = mu / (2 * t);
    c.fermi_point = std::abs(q) < 1 ? static_cast<double>(s.n) * s.n / (4 * d * d * std::sqrt(1 - q * q)) : NAN;
    c.in_window = d <= 0.1 * t && s.n * d / t >= 10;
    return c;
}

double sin4_sum(int n)
{
    double s = 0;
    for (int m = 1; m <= n; ++m) s += std::pow(std::sin(m * pi / (n + 1)), 4);
    return s;
}

PeierlsCheck peierls_matrix_elements(const model::ChainSpec& s)
{
    const int n = s.n;
    const double norm = 2.0 / (n + 1);
    auto k = [&](int m) { return m * pi / (n + 1); };
    PeierlsCheck c;
    c.exact = CMat::Zero(n, n);
    c.simplified = CMat::Zero(n, n);
    const cplx pre(0, s.phi * s.t);
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
            // <k_a| sum_j (|j><j+1| - |j+1><j|) |k_b>
            double sum = 0;
            for (int j = 1; j < n; ++j)
                sum += std::sin(k(a) * j) * std::sin(k(b) * (j + 1)) - std::sin(k(a) * (j + 1)) * std::sin(k(b) * j);
            c.exact(a - 1, b - 1) = pre * norm * sum;
            const double cm = std::cos(k(b) - k(a)), cp = std::cos(k(b) + k(a));
            const double den = (cm - 1) * (cp - 1);
            if (den != 0.0)
                c.simplified(a - 1, b - 1) = pre * 8.0 * std::sin(k(b) / 2) * std::sin(k(a) / 2) / (n + 1.0) * (cm - cp) / den;
        }
    c.max_abs_difference = (c.exact - c.simplified).cwiseAbs().maxCoeff();
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
            if (a == b) continue;
            const double gap = std::abs(2 * s.t * (std::cos(k(a)) - std::cos(k(b))));
            if (gap > 0) c.max_admixture = std::max(c.max_admixture, std::abs(c.exact(a - 1, b - 1)) / gap);
        }
    return c;
}

namespace {

// Biorthogonal spectral projector onto the Re E < 0 half of the Nambu operator.
CMat negative_projector(const model::ChainSpec& s)
{
    const auto es = spectral::eig_biorthogonal(model::build_chain(s));
    const double tol = 1e-10 * std::max(es.norm, 1e-300);
    CMat p = CMat::Zero(es.dim(), es.dim());
    for (int n = 0; n < es.dim(); ++n) {
        const double re = es.eigenvalues(n).real();
        if (std::abs(re) <= tol) throw Error(ErrorKind::near_degenerate, "Nambu level at Re E = 0; quasiparticle vacuum ambiguous");
        if (es.ep_degenerate[n]) throw Error(ErrorKind::ep_degenerate, "EP-degenerate Nambu pair");
        if (re < 0) p += es.right.col(n) * es.left.col(n).adjoint();
    }
    return p;
}

}  // namespace

QfiMatrixResult numeric_fd(const model::ChainSpec& s, double nu)
{
    model::validate(s);
    if (!s.nambu()) throw Error(ErrorKind::invalid_argument, "numeric_fd needs a Nambu-doubled chain (delta > 0)");
    QfiMatrixResult r;
    r.method = "numeric_fd";
    r.nu = nu;
    r.warnings = regime_warnings(s);
    const model::Param ps[3] = {model::Param::mu, model::Param::phi, model::Param::g};
    CMat dp[3];
    for (int a = 0; a < 3; ++a) {
        const double th = model::get(s, ps[a]);
        const double h = 1e-5 * std::max(std::abs(th), 1.0);
        dp[a] = (negative_projector(model::with(s, ps[a], th + h)) - negative_projector(model::with(s, ps[a], th - h))) / (2 * h);
    }
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) r.f(a, b) = 2 * (dp[a] * dp[b]).trace().real();
    finish(r);
    return r;
}

nlohmann::json to_json(const QfiMatrixResult& r, const model::ChainSpec& s)
{
    auto mat = [](const Mat3& m) {
        nlohmann::json a = nlohmann::json::array();
        for (int i = 0; i < 3; ++i) a.push_back({m(i, 0), m(i, 1), m(i, 2)});
        return a;
    };
    nlohmann::json j;
    j["order"] = {"mu", "phi", "g"};
    j["F"] = mat(r.f);
    j["F_inv"] = r.invertible ? mat(r.f_inv) : nlohmann::json(nullptr);
    j["det_block"] = r.det_block;
    j["nu"] = r.nu;
    j["sensitivities"] = {{"mu", r.sens.mu}, {"phi", r.sens.phi}, {"g", r.sens.g}};
    j["method"] = r.method;
    j["warnings"] = r.warnings;
    j["spec"] = model::to_json(s);
    return j;
}

}  // namespace nhqfi::multiparam
