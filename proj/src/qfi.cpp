#include "nhqfi/qfi.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "nhqfi/parallel.hpp"
#include "nhqfi/spectral.hpp"

namespace nhqfi::qfi {

std::string to_string(Method m)
{
    switch (m) {
    case Method::finite_diff: return "finite_diff";
    case Method::pert_sum: return "pert_sum";
    case Method::analytic_nhse: return "analytic_nhse";
    case Method::analytic_nhse_alternate: return "analytic_nhse_alternate";
    case Method::analytic_ep: return "analytic_ep";
    case Method::analytic_ep_dicke: return "analytic_ep_dicke";
    case Method::analytic_braid: return "analytic_braid";
    case Method::hermitian_standard: return "hermitian_standard";
    case Method::similarity_nhse: return "similarity_nhse";
    }
    return "?";
}

Method method_from_string(std::string_view s)
{
    for (Method m : {Method::finite_diff, Method::pert_sum, Method::analytic_nhse, Method::analytic_nhse_alternate,
                     Method::analytic_ep, Method::analytic_ep_dicke, Method::analytic_braid,
                     Method::hermitian_standard, Method::similarity_nhse})
        if (s == to_string(m)) return m;
    throw Error(ErrorKind::invalid_argument, "unknown QFI method '" + std::string(s) + "'");
}

QfiEstimate QfiEstimate::from_log10(double log10_value, Method m)
{
    QfiEstimate q;
    q.method = m;
    q.log10_abs = log10_value;
    if (log10_value < -300) {
        q.log_only = true;
        q.value = 0;
    } else {
        q.value = std::pow(10.0, log10_value);
    }
    return q;
}

namespace {

constexpr double min_overlap = 1e-6;

void set_value(QfiEstimate& q, double v)
{
    q.value = v;
    q.log10_abs = v == 0 ? -INFINITY : std::log10(std::abs(v));
}

struct Pair {
    CVec r, l;
};

int select_state(const spectral::BiorthogonalEigensystem& es, int state_index)
{
    if (state_index < 0) return spectral::ground_index(es.eigenvalues, es.norm);
    if (state_index >= es.dim()) throw Error(ErrorKind::invalid_argument, "state index out of range");
    return state_index;
}

void require_overlap(const spectral::BiorthogonalEigensystem& es, int i, const char* where)
{
    if (es.overlap_cond(i) <= min_overlap) {
        std::ostringstream os;
        os << "selected pair at " << where << " has overlap_cond " << es.overlap_cond(i)
           << " (<= " << min_overlap << "); too close to an exceptional point";
        throw Error(ErrorKind::ep_degenerate, os.str());
    }
}

// Eigenpair of the displaced operator continuously connected to r0, rephased
// so that <r0|R> is real positive (L follows with the conjugate factor).
Pair displaced_pair(const model::ChainSpec& s, const CVec& r0)
{
    const auto es = spectral::eig_biorthogonal(model::build_chain(s));
    int best = 0;
    double ov = -1;
    for (int j = 0; j < es.dim(); ++j) {
        const double o = std::abs(r0.dot(es.right.col(j)));
        if (o > ov) {
            ov = o;
            best = j;
        }
    }
    require_overlap(es, best, "displaced point");
    const cplx c = r0.dot(es.right.col(best));
    const cplx ph = std::conj(c) / std::abs(c);
    return {es.right.col(best) * ph, es.left.col(best) * ph};
}

struct PairDerivative {
    CVec dr, dl;
};

PairDerivative pair_derivative(const model::ChainSpec& s, model::Param p, double h, const CVec& r0)
{
    const double theta = model::get(s, p);
    const model::ChainSpec sp = model::with(s, p, theta + h), sm = model::with(s, p, theta - h);
    try {
        model::validate(sp);
        model::validate(sm);
    } catch (const Error& e) {
        throw Error(ErrorKind::invalid_argument, std::string("finite-difference stencil leaves the valid domain: ") + e.what());
    }
    const Pair plus = displaced_pair(sp, r0), minus = displaced_pair(sm, r0);
    return {(plus.r - minus.r) / (2 * h), (plus.l - minus.l) / (2 * h)};
}

struct FdValue {
    double invariant = 0;
    double uncorrected = 0;
};

FdValue fd_value(const model::ChainSpec& s, model::Param p, double h, const CVec& r0, const CVec& l0)
{
    const auto [dr, dl] = pair_derivative(s, p, h, r0);
    FdValue out;
    out.invariant = 4 * (dl.dot(dr) - dl.dot(r0) * l0.dot(dr)).real();
    out.uncorrected = 4 * (dl.dot(dr).real() - std::norm(l0.dot(dr)));
    return out;
}

}  // namespace

QfiEstimate finite_diff(const model::ChainSpec& s, model::Param p, const FdOptions& opt)
{
    model::validate(s);
    const auto es = spectral::eig_biorthogonal(model::build_chain(s));
    const int i = select_state(es, opt.state_index);
    require_overlap(es, i, "base point");
    const cplx ph = std::polar(1.0, opt.base_phase);
    const CVec r0 = es.right.col(i) * ph, l0 = es.left.col(i) * ph;

    const double h = opt.step > 0 ? opt.step : 1e-5 * std::max(std::abs(model::get(s, p)), 1.0);
    const FdValue f1 = fd_value(s, p, h, r0, l0);
    const FdValue f2 = fd_value(s, p, h / 2, r0, l0);

    QfiEstimate q;
    q.method = Method::finite_diff;
    q.parameter = p;
    q.step = h;
    q.state_index = i;
    set_value(q, f1.invariant);
    q.uncorrected_cross_term = f1.uncorrected;
    const double scale = std::max(std::abs(f2.invariant), 1e-10);
    q.converged = std::abs(f1.invariant - f2.invariant) <= 0.01 * scale;
    return q;
}

RMat finite_diff_matrix(const model::ChainSpec& s, const std::vector<model::Param>& params, const FdOptions& opt)
{
    model::validate(s);
    const auto es = spectral::eig_biorthogonal(model::build_chain(s));
    const int i = select_state(es, opt.state_index);
    require_overlap(es, i, "base point");
    const CVec r0 = es.right.col(i), l0 = es.left.col(i);
    std::vector<PairDerivative> d;
    for (auto p : params) {
        const double h = opt.step > 0 ? opt.step : 1e-5 * std::max(std::abs(model::get(s, p)), 1.0);
        d.push_back(pair_derivative(s, p, h, r0));
    }
    const auto k = static_cast<Eigen::Index>(params.size());
    RMat f(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b) {
            const cplx x = d[a].dl.dot(d[b].dr) + d[b].dl.dot(d[a].dr) - d[a].dl.dot(r0) * l0.dot(d[b].dr) -
                           d[b].dl.dot(r0) * l0.dot(d[a].dr);
            f(a, b) = 2 * x.real();
        }
    return f;
}

QfiEstimate pert_sum(const model::ChainSpec& s, model::Param p, int state_index)
{
    model::validate(s);
    const auto es = spectral::eig_biorthogonal(model::build_chain(s));
    const int i0 = select_state(es, state_index);
    for (int n = 0; n < es.dim(); ++n)
        if (es.ep_degenerate[n])
            throw Error(ErrorKind::ep_degenerate, "spectrum contains an EP-degenerate pair; perturbative sum undefined");
    const model::BandedOperator dh = model::derivative(s, p);
    const cplx e0 = es.eigenvalues(i0);
    const double tol = 1e-8 * std::max(es.norm, 1e-300);

    // a_n = <L_0|dH|R_n>, b_n = <L_n|dH|R_0>
    const CVec dh_r0 = dh.apply(es.right.col(i0));
    const CVec dh_adj_l0 = dh.adjoint().apply(es.left.col(i0));
    cplx sum = 0;
    for (int n = 0; n < es.dim(); ++n) {
        if (n == i0) continue;
        const cplx gap = es.eigenvalues(n) - e0;
        if (std::abs(gap) <= tol) {
            std::ostringstream os;
            os << "level " << n << " is within " << std::abs(gap) << " of the selected state";
            throw Error(ErrorKind::near_degenerate, os.str());
        }
        const cplx a = dh_adj_l0.dot(es.right.col(n));
        const cplx b = es.left.col(n).dot(dh_r0);
        sum += a * b / (gap * gap);
    }
    QfiEstimate q;
    q.method = Method::pert_sum;
    q.parameter = p;
    q.state_index = i0;
    set_value(q, 4 * sum.real());
    return q;
}

QfiEstimate hermitian_standard(const model::ChainSpec& s, model::Param p, int state_index)
{
    model::validate(s);
    const model::BandedOperator h = model::build_chain(s);
    if (!h.is_hermitian()) throw Error(ErrorKind::invalid_argument, "hermitian_standard requires a Hermitian operator");
    Eigen::SelfAdjointEigenSolver<CMat> sol(h.dense());
    const RVec& e = sol.eigenvalues();
    const CMat& v = sol.eigenvectors();
    const int i0 = state_index < 0 ? 0 : state_index;
    if (i0 >= e.size()) throw Error(ErrorKind::invalid_argument, "state index out of range");
    const double tol = 1e-8 * std::max(spectral::inf_norm(h), 1e-300);
    const CVec dv = model::derivative(s, p).apply(v.col(i0));
    double f = 0;
    for (int n = 0; n < e.size(); ++n) {
        if (n == i0) continue;
        const double gap = e(n) - e(i0);
        if (std::abs(gap) <= tol) throw Error(ErrorKind::near_degenerate, "degenerate level next to the selected state");
        f += std::norm(v.col(n).dot(dv)) / (gap * gap);
    }
    QfiEstimate q;
    q.method = Method::hermitian_standard;
    q.parameter = p;
    q.state_index = i0;
    set_value(q, 4 * f);
    return q;
}

QfiEstimate nhse_similarity(const model::ChainSpec& s, int mode)
{
    model::validate(s);
    if (s.kind != model::Kind::nhse || s.delta != 0)
        throw Error(ErrorKind::invalid_argument, "nhse_similarity needs kind = nhse and delta = 0");
    const int m = mode < 0 ? s.n : mode;
    if (m < 1 || m > s.n) throw Error(ErrorKind::invalid_argument, "mode index out of range");
    const double k = m * pi / (s.n + 1);
    double w = 0, m1 = 0, m2 = 0;
    for (int j = 1; j <= s.n; ++j) {
        const double p = std::pow(std::sin(j * k), 2);
        w += p;
        m1 += p * j;
        m2 += p * j * j;
    }
    m1 /= w;
    m2 /= w;
    const double dk = s.t / (s.t * s.t - s.gamma * s.gamma);
    QfiEstimate q;
    q.method = Method::similarity_nhse;
    q.parameter = model::Param::gamma;
    q.state_index = m;
    set_value(q, -4 * dk * dk * (m2 - m1 * m1));
    return q;
}

QfiEstimate nhse_analytic(int n, double kappa, double t)
{
    if (!(kappa > 0)) throw Error(ErrorKind::invalid_argument, "kappa must be > 0");
    if (n < 1 || !(t > 0)) throw Error(ErrorKind::invalid_argument, "need N >= 1 and t > 0");
    const double ln10 = std::log(10.0);
    const double lg = std::log10(4.0 / 3.0) + 3 * std::log10(n) - 2 * kappa * n / ln10 - 2 * std::log10(t * std::sinh(kappa));
    QfiEstimate q = QfiEstimate::from_log10(lg, Method::analytic_nhse);
    q.log10_per_particle = lg - std::log10(n);
    q.per_particle = q.log10_per_particle < -300 ? 0 : std::pow(10.0, q.log10_per_particle);
    return q;
}

QfiEstimate nhse_alternate(int n, double kappa)
{
    if (!(kappa > 0)) throw Error(ErrorKind::invalid_argument, "kappa must be > 0");
    if (n < 1) throw Error(ErrorKind::invalid_argument, "need N >= 1");
    const double lg = 2 * std::log10(n) - 2 * kappa * n / std::log(10.0);
    QfiEstimate q = QfiEstimate::from_log10(lg, Method::analytic_nhse_alternate);
    q.log10_per_particle = lg - std::log10(n);
    q.per_particle = q.log10_per_particle < -300 ? 0 : std::pow(10.0, q.log10_per_particle);
    return q;
}

QfiEstimate ep_analytic(int n, double t, double delta, double tau)
{
    if (!(delta > 0)) throw Error(ErrorKind::invalid_argument, "delta must be > 0");
    if (n < 1) throw Error(ErrorKind::invalid_argument, "need N >= 1");
    QfiEstimate q;
    q.method = Method::analytic_ep;
    set_value(q, tau * tau * t * n * n / (6 * delta));
    q.per_particle = tau * tau * t * n / (6 * delta);
    q.log10_per_particle = std::log10(q.per_particle);
    return q;
}

QfiEstimate ep_dicke_sum(int n, double t, double delta, double tau)
{
    if (!(delta > 0)) throw Error(ErrorKind::invalid_argument, "delta must be > 0");
    if (n < 1) throw Error(ErrorKind::invalid_argument, "need N >= 1");
    long double s1 = 0, s2 = 0;
    for (long k = 0; k <= n; ++k) {
        s1 += k;
        s2 += static_cast<long double>(k) * k;
    }
    const long double m = n + 1;
    const long double var = s2 / m - (s1 / m) * (s1 / m);
    QfiEstimate q;
    q.method = Method::analytic_ep_dicke;
    set_value(q, static_cast<double>(2.0L * tau * tau * t * var / delta));
    q.per_particle = q.value / n;
    q.log10_per_particle = std::log10(q.per_particle);
    return q;
}

QfiEstimate braid_analytic(int n, double eps, double tau)
{
    if (n < 1 || !(eps > 0) || !(tau > 0)) throw Error(ErrorKind::invalid_argument, "braid QFI needs N >= 1, eps > 0, tau > 0");
    QfiEstimate q;
    q.method = Method::analytic_braid;
    set_value(q, static_cast<double>(n) * n * tau * tau / (4 * eps));
    q.per_particle = q.value / n;
    q.log10_per_particle = std::log10(q.per_particle);
    q.optimal = static_cast<double>(n) * n;
    return q;
}

std::vector<SweepRow> sweep(const model::ChainSpec& base, model::Param differentiate, model::Param vary,
                            const std::vector<double>& values, Method method)
{
    return parallel_map<SweepRow>(values.size(), [&](std::size_t i) {
        const model::ChainSpec s = model::with(base, vary, values[i]);
        SweepRow row;
        row.parameter = vary;
        row.value = values[i];
        row.n = s.n;
        row.method = method;
        switch (method) {
        case Method::finite_diff: row.estimate = finite_diff(s, differentiate); break;
        case Method::pert_sum: row.estimate = pert_sum(s, differentiate); break;
        case Method::hermitian_standard: row.estimate = hermitian_standard(s, differentiate); break;
        default: throw Error(ErrorKind::invalid_argument, "sweep supports numeric methods only");
        }
        return row;
    });
}

std::string sweep_csv(const std::vector<SweepRow>& rows)
{
    std::ostringstream os;
    os << std::setprecision(17);
    os << "parameter,value,N,method,qfi_or_log_qfi,step,converged\n";
    for (const auto& r : rows) {
        os << model::to_string(r.parameter) << ',' << r.value << ',' << r.n << ',' << to_string(r.method) << ',';
        if (r.estimate.log_only) os << "log10:" << r.estimate.log10_abs;
        else os << r.estimate.value;
        os << ',' << r.estimate.step << ',' << (r.estimate.converged ? "true" : "false") << '\n';
    }
    return os.str();
}

}  // namespace nhqfi::qfi
