#include "nhqfi/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "nhqfi/tridiag.hpp"

namespace nhqfi::spectral {

namespace {

void sort_spectrum(std::vector<int>& order, const CVec& ev)
{
    order.resize(ev.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (ev(a).real() != ev(b).real()) return ev(a).real() < ev(b).real();
        return ev(a).imag() < ev(b).imag();
    });
}

CVec permuted(const CVec& v, const std::vector<int>& order)
{
    CVec out(v.size());
    for (std::size_t i = 0; i < order.size(); ++i) out(i) = v(order[i]);
    return out;
}

double log_sum_exp(const std::vector<double>& xs)
{
    double mx = -INFINITY;
    for (double x : xs) mx = std::max(mx, x);
    if (!std::isfinite(mx)) return mx;
    double s = 0;
    for (double x : xs) s += std::exp(x - mx);
    return mx + std::log(s);
}

// Largest component real-positive; ties within 1e-12 go to the lowest index.
double gauge_phase(const CVec& r)
{
    Eigen::Index best = 0;
    double mag = -1;
    for (Eigen::Index j = 0; j < r.size(); ++j) {
        const double a = std::abs(r(j));
        if (a > mag + 1e-12) {
            mag = a;
            best = j;
        }
    }
    return std::arg(r(best));
}

// r and l arrive unit-norm; <l|r> = exp(log_abs) e^{i arg}.
void finalize_pair(BiorthogonalEigensystem& es, int col, double log_abs, double arg)
{
    auto r = es.right.col(col);
    auto l = es.left.col(col);
    const double theta = gauge_phase(r);
    r *= std::polar(1.0, -theta);
    arg -= theta;
    es.log_overlap_cond(col) = log_abs;
    es.overlap_cond(col) = std::exp(log_abs);
    if (es.overlap_cond(col) >= ep_threshold) {
        l *= std::polar(std::exp(-log_abs), arg);
        es.ep_degenerate[col] = false;
    } else {
        l *= std::polar(1.0, arg);
        es.ep_degenerate[col] = true;
    }
}

void allocate(BiorthogonalEigensystem& es, int n)
{
    es.eigenvalues = CVec::Zero(n);
    es.right = CMat::Zero(n, n);
    es.left = CMat::Zero(n, n);
    es.overlap_cond = RVec::Ones(n);
    es.log_overlap_cond = RVec::Zero(n);
    es.ep_degenerate.assign(n, false);
}

std::optional<BiorthogonalEigensystem> tridiagonal_route(const model::BandedOperator& h, double norm)
{
    const CVec a = h.diag(), b = h.upper(), c = h.lower();
    const auto sym = tridiag::symmetrize(a, b, c);
    if (!sym) return std::nullopt;
    // H^dagger is tridiagonal with diagonal conj(a), super conj(c), sub conj(b).
    auto ev = tridiag::eigenvalues(a, b, c);
    auto ev_adj = tridiag::eigenvalues(a.conjugate(), c.conjugate(), b.conjugate());
    if (!ev || !ev_adj || !ev->converged || !ev_adj->converged) return std::nullopt;

    const int n = h.dim();
    std::vector<int> order;
    sort_spectrum(order, ev->values);
    const CVec lam = permuted(ev->values, order);
    const std::vector<int> perm = conjugate_pairing(lam, ev_adj->values, 1e-8 * norm);

    BiorthogonalEigensystem es;
    allocate(es, n);
    es.eigenvalues = lam;
    es.method = "tridiagonal_ql_aberth";
    es.norm = norm;
    const CVec& ls = sym->log_scale;
    const CVec ed = sym->e, edc = sym->e.conjugate(), dc = sym->d.conjugate();
    std::vector<double> lr(n), ll(n);
    for (int i = 0; i < n; ++i) {
        const CVec rp = tridiag::inverse_iteration(ed, sym->d, ed, lam(i));
        const CVec lp = tridiag::inverse_iteration(edc, dc, edc, ev_adj->values(perm[i]));
        // R = D R', L = conj(D)^{-1} L'; magnitudes assembled in log space.
        for (int j = 0; j < n; ++j) {
            lr[j] = rp(j) == 0.0 ? -INFINITY : ls(j).real() + std::log(std::abs(rp(j)));
            ll[j] = lp(j) == 0.0 ? -INFINITY : -ls(j).real() + std::log(std::abs(lp(j)));
        }
        const double lnr = 0.5 * log_sum_exp([&] { auto v = lr; for (auto& x : v) x *= 2; return v; }());
        const double lnl = 0.5 * log_sum_exp([&] { auto v = ll; for (auto& x : v) x *= 2; return v; }());
        for (int j = 0; j < n; ++j) {
            es.right(j, i) = rp(j) == 0.0 ? cplx(0) : std::polar(std::exp(lr[j] - lnr), std::arg(rp(j)) + ls(j).imag());
            es.left(j, i) = lp(j) == 0.0 ? cplx(0) : std::polar(std::exp(ll[j] - lnl), std::arg(lp(j)) + ls(j).imag());
        }
        const cplx raw = lp.dot(rp);  // <L'|R'> = <L|R> before normalization
        const double log_abs = std::log(std::abs(raw)) - lnr - lnl;
        finalize_pair(es, i, std::min(log_abs, 0.0), std::arg(raw));
    }
    return es;
}

BiorthogonalEigensystem dense_route(const model::BandedOperator& h, double norm)
{
    const int n = h.dim();
    const CMat a = h.dense();
    BiorthogonalEigensystem es;
    allocate(es, n);
    es.norm = norm;

    if (h.is_hermitian()) {
        Eigen::SelfAdjointEigenSolver<CMat> sa(a);
        es.method = "dense_hermitian";
        es.eigenvalues = sa.eigenvalues().cast<cplx>();
        es.right = sa.eigenvectors();
        for (int i = 0; i < n; ++i) {
            es.right.col(i) *= std::polar(1.0, -gauge_phase(es.right.col(i)));
            es.right.col(i).normalize();
        }
        es.left = es.right;
        return es;
    }

    es.method = "dense_general";
    Eigen::ComplexEigenSolver<CMat> right(a), left(a.adjoint().eval());
    if (right.info() != Eigen::Success || left.info() != Eigen::Success)
        throw Error(ErrorKind::pairing, "dense eigensolver did not converge");
    std::vector<int> order;
    sort_spectrum(order, right.eigenvalues());
    es.eigenvalues = permuted(right.eigenvalues(), order);
    const std::vector<int> perm = conjugate_pairing(es.eigenvalues, left.eigenvalues(), 1e-8 * norm);
    for (int i = 0; i < n; ++i) {
        es.right.col(i) = right.eigenvectors().col(order[i]).normalized();
        es.left.col(i) = left.eigenvectors().col(perm[i]).normalized();
    }

    // Within clusters of (numerically) equal eigenvalues the pairing is
    // arbitrary; restore <L_a|R_b> = delta_ab on the cluster.
    const double ctol = 1e-8 * norm;
    int start = 0;
    while (start < n) {
        int end = start + 1;
        while (end < n && std::abs(es.eigenvalues(end) - es.eigenvalues(end - 1)) <= ctol) ++end;
        const int k = end - start;
        if (k > 1) {
            const CMat m = es.left.middleCols(start, k).adjoint() * es.right.middleCols(start, k);
            Eigen::FullPivLU<CMat> lu(m);
            if (lu.rcond() > 1e-8) {
                es.left.middleCols(start, k) = es.left.middleCols(start, k) * m.inverse().adjoint();
                for (int c = start; c < end; ++c) es.left.col(c).normalize();
            }
        }
        start = end;
    }
    for (int i = 0; i < n; ++i) {
        const cplx ov = es.left.col(i).dot(es.right.col(i));
        const double mag = std::abs(ov);
        finalize_pair(es, i, mag > 0 ? std::min(std::log(mag), 0.0) : -745.0, std::arg(ov));
    }
    return es;
}

}  // namespace

double inf_norm(const model::BandedOperator& h)
{
    RVec rows = RVec::Zero(h.dim());
    for (int k : h.offsets()) {
        const CVec& b = *h.band(k);
        for (Eigen::Index i = 0; i < b.size(); ++i) rows(k >= 0 ? i : i - k) += std::abs(b(i));
    }
    return rows.maxCoeff();
}

std::vector<int> conjugate_pairing(const CVec& ev, const CVec& adj, double tol)
{
    const int n = static_cast<int>(ev.size());
    if (adj.size() != n) throw Error(ErrorKind::pairing, "spectra of H and H^dagger differ in size");
    struct Cand { double d; int i, j; };
    std::vector<Cand> cands;
    const int keep = std::min(n, 4);
    std::vector<Cand> row(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) row[j] = {std::abs(ev(i) - std::conj(adj(j))), i, j};
        std::partial_sort(row.begin(), row.begin() + keep, row.end(), [](const Cand& x, const Cand& y) { return x.d < y.d; });
        cands.insert(cands.end(), row.begin(), row.begin() + keep);
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return x.d < y.d; });
    std::vector<int> perm(n, -1);
    std::vector<bool> used(n, false);
    int assigned = 0;
    for (const Cand& c : cands) {
        if (perm[c.i] >= 0 || used[c.j]) continue;
        if (c.d > tol) break;
        perm[c.i] = c.j;
        used[c.j] = true;
        ++assigned;
    }
    if (assigned != n) {
        for (int i = 0; i < n; ++i)
            if (perm[i] < 0)
                throw Error(ErrorKind::pairing, "eigenvalue " + std::to_string(ev(i).real()) + (ev(i).imag() < 0 ? "" : "+") +
                                                    std::to_string(ev(i).imag()) + "i has no adjoint partner within " +
                                                    std::to_string(tol));
    }
    return perm;
}

BiorthogonalEigensystem eig_biorthogonal(const model::BandedOperator& h)
{
    if (h.dim() < 1) throw Error(ErrorKind::invalid_argument, "empty operator");
    const double norm = inf_norm(h);
    if (h.is_tridiagonal() && !h.is_hermitian() && h.dim() > 1)
        if (auto es = tridiagonal_route(h, norm)) return std::move(*es);
    return dense_route(h, norm);
}

CVec eigenvalues(const model::BandedOperator& h)
{
    if (h.is_tridiagonal() && h.dim() > 1 && !h.is_hermitian()) {
        if (auto ev = tridiag::eigenvalues(h.diag(), h.upper(), h.lower()); ev && ev->converged) {
            std::vector<int> order;
            sort_spectrum(order, ev->values);
            return permuted(ev->values, order);
        }
    }
    const CMat a = h.dense();
    if (h.is_hermitian()) return Eigen::SelfAdjointEigenSolver<CMat>(a, Eigen::EigenvaluesOnly).eigenvalues().cast<cplx>();
    Eigen::ComplexEigenSolver<CMat> es(a, false);
    std::vector<int> order;
    sort_spectrum(order, es.eigenvalues());
    return permuted(es.eigenvalues(), order);
}

int ground_index(const CVec& ev, double norm)
{
    const double tol = 1e-12 * std::max(norm, 1e-300);
    int best = 0;
    for (int i = 1; i < ev.size(); ++i) {
        const double dr = ev(i).real() - ev(best).real();
        if (dr < -tol) best = i;
        else if (std::abs(dr) <= tol && std::abs(ev(i).imag()) < std::abs(ev(best).imag()) - tol) best = i;
    }
    return best;
}

nlohmann::json to_json(const BiorthogonalEigensystem& es, bool with_vectors)
{
    nlohmann::json j;
    j["method"] = es.method;
    j["gauge"] = es.gauge;
    j["dim"] = es.dim();
    j["norm"] = es.norm;
    auto pairs = nlohmann::json::array();
    for (int i = 0; i < es.dim(); ++i) pairs.push_back({es.eigenvalues(i).real(), es.eigenvalues(i).imag()});
    j["eigenvalues"] = pairs;
    j["overlap_cond"] = std::vector<double>(es.overlap_cond.data(), es.overlap_cond.data() + es.dim());
    j["log_overlap_cond"] = std::vector<double>(es.log_overlap_cond.data(), es.log_overlap_cond.data() + es.dim());
    j["ep_degenerate"] = es.ep_degenerate;
    if (with_vectors) {
        auto dump = [&](const CMat& m) {
            auto cols = nlohmann::json::array();
            for (int c = 0; c < m.cols(); ++c) {
                auto col = nlohmann::json::array();
                for (int r = 0; r < m.rows(); ++r) col.push_back({m(r, c).real(), m(r, c).imag()});
                cols.push_back(col);
            }
            return cols;
        };
        j["right_vectors"] = dump(es.right);
        j["left_vectors"] = dump(es.left);
    }
    return j;
}

// ---------------------------------------------------------------- skin modes

SkinModePair skin_modes(double kappa, int n)
{
    if (!(kappa > 0) || n < 1) throw Error(ErrorKind::invalid_argument, "skin_modes requires kappa > 0 and N >= 1");
    SkinModePair s;
    s.kappa = kappa;
    s.n = n;
    std::vector<double> lr(n), ll(n);
    for (int j = 1; j <= n; ++j) {
        lr[j - 1] = -kappa * j;
        ll[j - 1] = kappa * j;
    }
    auto twice = [](std::vector<double> v) { for (auto& x : v) x *= 2; return v; };
    const double lnr = 0.5 * log_sum_exp(twice(lr));
    const double lnl = 0.5 * log_sum_exp(twice(ll));
    s.psi_r.resize(n);
    s.psi_l.resize(n);
    std::vector<double> terms(n);
    for (int j = 0; j < n; ++j) {
        s.psi_r(j) = std::exp(lr[j] - lnr);
        s.psi_l(j) = std::exp(ll[j] - lnl);
        terms[j] = lr[j] - lnr + ll[j] - lnl;
    }
    s.log_overlap_sq_direct = 2 * log_sum_exp(terms);
    s.overlap_sq_direct = std::exp(s.log_overlap_sq_direct);

    // (1 - e^{-2k})^2 / ((1 - e^{-2kN}) (e^{2kN} - 1))
    const double k2 = 2 * kappa, k2n = 2 * kappa * n;
    s.log_overlap_sq_exact = 2 * std::log(-std::expm1(-k2)) - std::log(-std::expm1(-k2n)) - (k2n + std::log(-std::expm1(-k2n)));
    s.overlap_sq_exact = std::exp(s.log_overlap_sq_exact);
    s.discrepancy_log_ratio = s.log_overlap_sq_direct - s.log_overlap_sq_exact;
    s.discrepancy = std::abs(s.discrepancy_log_ratio) > 1e-9;
    return s;
}

LocalizationExponents localization_exponents(double t, double g, double gamma)
{
    LocalizationExponents out;
    if (!(t > 0)) throw Error(ErrorKind::invalid_argument, "t must be > 0");
    if (std::abs(g) > t) out.kappa_arccosh = std::acosh(std::abs(g) / t);
    if (gamma >= 0 && gamma < t) out.kappa_hn = 0.5 * std::log((t + gamma) / (t - gamma));
    else out.diagnostic = "kappa_hn undefined: requires 0 <= gamma < t";
    return out;
}

LocalizationExponents localization_exponents(const model::ChainSpec& s)
{
    return localization_exponents(s.t, s.g, s.gamma);
}

double participation_ratio(const CVec& v)
{
    const double n2 = v.squaredNorm();
    if (!(n2 > 0)) throw Error(ErrorKind::invalid_argument, "participation ratio of a zero vector");
    double s4 = 0;
    for (Eigen::Index j = 0; j < v.size(); ++j) s4 += std::pow(std::norm(v(j)) / n2, 2);
    return 1.0 / s4;
}

// ---------------------------------------------------------------- statistics

double goe_density(double s) { return 0.5 * pi * s * std::exp(-pi * s * s / 4); }
double poisson_density(double s) { return std::exp(-s); }

LevelStatistics level_spacings(const CVec& eigenvalues, double tol_imag, int bins)
{
    if (eigenvalues.size() < 3) throw Error(ErrorKind::invalid_argument, "need at least 3 levels");
    double max_im = eigenvalues.imag().cwiseAbs().maxCoeff();
    if (max_im > tol_imag)
        throw Error(ErrorKind::regime, "complex spectrum (max |Im E| = " + std::to_string(max_im) +
                                           "); level statistics are defined for the unbroken phase only");
    std::vector<double> e(eigenvalues.size());
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) e[i] = eigenvalues(i).real();
    std::sort(e.begin(), e.end());
    LevelStatistics st;
    for (std::size_t i = 0; i + 1 < e.size(); ++i) st.spacings.push_back(e[i + 1] - e[i]);
    const double mean = std::accumulate(st.spacings.begin(), st.spacings.end(), 0.0) / st.spacings.size();
    if (!(mean > 0)) throw Error(ErrorKind::invalid_argument, "degenerate spectrum");
    for (double& s : st.spacings) s /= mean;

    const double smax = std::max(3.0, *std::max_element(st.spacings.begin(), st.spacings.end()));
    const double w = smax / bins;
    st.density.assign(bins, 0.0);
    for (int b = 0; b <= bins; ++b) st.bin_edges.push_back(b * w);
    for (double s : st.spacings) st.density[std::min(bins - 1, static_cast<int>(s / w))] += 1.0;
    for (double& d : st.density) d /= (st.spacings.size() * w);

    std::vector<double> sorted = st.spacings;
    std::sort(sorted.begin(), sorted.end());
    const double m = sorted.size();
    auto ks = [&](auto cdf) {
        double d = 0;
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            const double f = cdf(sorted[i]);
            d = std::max({d, std::abs((i + 1) / m - f), std::abs(i / m - f)});
        }
        return d;
    };
    st.ks_goe = ks([](double s) { return 1 - std::exp(-pi * s * s / 4); });
    st.ks_poisson = ks([](double s) { return 1 - std::exp(-s); });
    return st;
}

std::vector<EpCandidate> ep_proximity(const BiorthogonalEigensystem& es, double window)
{
    std::vector<EpCandidate> out;
    for (int m = 0; m < es.dim(); ++m)
        for (int n = m + 1; n < es.dim(); ++n) {
            const double gap = std::abs(es.eigenvalues(m) - es.eigenvalues(n));
            if (gap >= window) continue;
            EpCandidate c;
            c.m = m;
            c.n = n;
            c.gap = gap;
            c.coalescence = 1.0 - std::abs(es.right.col(m).normalized().dot(es.right.col(n).normalized()));
            c.overlap_cond = std::min(es.overlap_cond(m), es.overlap_cond(n));
            c.ep2 = gap < 1e-6 && c.coalescence < 1e-6;
            out.push_back(c);
        }
    return out;
}

}  // namespace nhqfi::spectral
