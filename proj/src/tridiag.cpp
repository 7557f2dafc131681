#include "nhqfi/tridiag.hpp"

#include <cmath>
#include <limits>

namespace nhqfi::tridiag {

std::optional<Symmetrized> symmetrize(const CVec& a, const CVec& b, const CVec& c)
{
    const Eigen::Index n = a.size();
    Symmetrized s;
    s.d = a;
    s.e = CVec::Zero(std::max<Eigen::Index>(n - 1, 0));
    s.log_scale = CVec::Zero(n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const cplx p = b(i) * c(i);
        if (p == 0.0) return std::nullopt;
        s.e(i) = std::sqrt(p);
        // (D^{-1} T D)(i,i+1) = b_i D_{i+1}/D_i must equal e_i
        s.log_scale(i + 1) = s.log_scale(i) + std::log(s.e(i) / b(i));
    }
    return s;
}

QlResult cs_ql_eigenvalues(CVec d, CVec e_in, int max_iter)
{
    const Eigen::Index n = d.size();
    QlResult out;
    if (n == 0) {
        out.values = d;
        return out;
    }
    CVec e = CVec::Zero(n);
    e.head(n - 1) = e_in;
    const double eps = std::numeric_limits<double>::epsilon();
    const double scale = d.cwiseAbs().maxCoeff() + 2 * e.cwiseAbs().maxCoeff();
    const double tiny = eps * eps * std::max(scale, std::numeric_limits<double>::min());

    for (Eigen::Index l = 0; l < n && out.clean; ++l) {
        int iter = 0;
        for (;;) {
            Eigen::Index m = l;
            for (; m < n - 1; ++m) {
                const double dd = std::abs(d(m)) + std::abs(d(m + 1));
                if (std::abs(e(m)) <= eps * dd || std::abs(e(m)) <= tiny) break;
            }
            if (m == l) break;
            if (++iter > max_iter) {
                out.clean = false;
                break;
            }

            const CVec d_save = d.segment(l, m - l + 1), e_save = e.segment(l, m - l + 1);
            cplx g = (d(l + 1) - d(l)) / (2.0 * e(l));
            cplx r = std::sqrt(g * g + 1.0);
            const cplx den = std::abs(g + r) >= std::abs(g - r) ? g + r : g - r;
            g = d(m) - d(l) + e(l) / den;
            if (iter % 10 == 0) g *= cplx(1.0, 0.5);  // exceptional shift
            cplx s = 1.0, c = 1.0, p = 0.0;
            bool deflated = false, isotropic = false;
            for (Eigen::Index i = m - 1; i >= l; --i) {
                const cplx f = s * e(i);
                const cplx b = c * e(i);
                r = std::sqrt(f * f + g * g);
                // Complex orthogonal rotations have no norm bound; a near-isotropic
                // pair (f ~ +-i g) would amplify rounding without limit.
                if (std::abs(r) < 1e-6 * (std::abs(f) + std::abs(g))) {
                    isotropic = true;
                    break;
                }
                e(i + 1) = r;
                if (std::abs(r) == 0.0) {
                    d(i + 1) -= p;
                    e(m) = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d(i + 1) - p;
                r = (d(i) - g) * s + 2.0 * c * b;
                p = s * r;
                d(i + 1) = g + p;
                g = c * r - b;
            }
            if (isotropic) {
                // undo the partial sweep; the next pass uses an exceptional shift
                d.segment(l, m - l + 1) = d_save;
                e.segment(l, m - l + 1) = e_save;
                iter = ((iter / 10) + 1) * 10 - 1;
                continue;
            }
            if (deflated) continue;
            d(l) -= p;
            e(l) = g;
            e(m) = 0.0;
        }
    }
    for (Eigen::Index i = 0; i < n; ++i)
        if (!std::isfinite(d(i).real()) || !std::isfinite(d(i).imag())) {
            d(i) = std::polar(scale, 2 * pi * i / n + 0.3);
            out.clean = false;
        }
    out.values = d;
    return out;
}

cplx newton_ratio(const CVec& a, const CVec& beta, cplx lambda, double floor)
{
    const Eigen::Index n = a.size();
    cplx r = a(0) - lambda, dr = -1.0;
    if (std::abs(r) < floor) r = floor;
    cplx sum = dr / r;
    for (Eigen::Index k = 1; k < n; ++k) {
        const cplx q = beta(k - 1) / r;
        cplx rn = (a(k) - lambda) - q;
        const cplx drn = -1.0 + q * dr / r;
        if (std::abs(rn) < floor) rn = floor;
        r = rn;
        dr = drn;
        sum += dr / r;
    }
    return 1.0 / sum;
}

int aberth_refine(const CVec& a, const CVec& beta, CVec& lam, int max_sweeps)
{
    const Eigen::Index n = a.size();
    if (n <= 1) {
        if (n == 1) lam(0) = a(0);
        return 0;
    }
    const double eps = std::numeric_limits<double>::epsilon();
    const double scale = a.cwiseAbs().maxCoeff() + 2 * std::sqrt(beta.cwiseAbs().maxCoeff());
    const double floor = eps * std::max(scale, 1e-300);
    std::vector<bool> done(n, false);
    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        bool all = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (done[i]) continue;
            const double tol = 8 * eps * (std::abs(lam(i)) + scale);
            const cplx nr = newton_ratio(a, beta, lam(i), floor);
            if (!std::isfinite(nr.real()) || !std::isfinite(nr.imag())) {
                lam(i) += floor * static_cast<double>(1 + i % 7) * cplx(1, 1);
                all = false;
                continue;
            }
            if (std::abs(nr) <= tol) {
                done[i] = true;
                continue;
            }
            cplx s = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                cplx diff = lam(i) - lam(j);
                if (diff == 0.0) diff = floor;
                s += 1.0 / diff;
            }
            const cplx step = nr / (1.0 - nr * s);
            lam(i) -= step;
            if (std::abs(step) > tol) all = false;
            else done[i] = true;
        }
        if (all) return sweep;
    }
    return -1;
}

std::optional<Eigenvalues> eigenvalues(const CVec& a, const CVec& b, const CVec& c)
{
    const auto sym = symmetrize(a, b, c);
    if (!sym) return std::nullopt;
    Eigenvalues out;
    QlResult ql = cs_ql_eigenvalues(sym->d, sym->e);
    out.ql_clean = ql.clean;
    out.values = std::move(ql.values);
    const CVec beta = b.cwiseProduct(c);
    out.sweeps = aberth_refine(a, beta, out.values);
    out.converged = out.sweeps >= 0;
    return out;
}

CVec inverse_iteration(const CVec& lo, const CVec& diag, const CVec& up, cplx lambda, int iterations)
{
    const Eigen::Index n = diag.size();
    if (n == 1) return CVec::Ones(1);
    const double eps = std::numeric_limits<double>::epsilon();
    const double scale = diag.cwiseAbs().maxCoeff() + lo.cwiseAbs().maxCoeff() + up.cwiseAbs().maxCoeff();
    const double floor = eps * std::max(scale, 1e-300);

    // LU of (T - lambda I) with row interchanges; U has two superdiagonals.
    CVec dl = lo, d = diag.array() - lambda, du = up, du2 = CVec::Zero(std::max<Eigen::Index>(n - 2, 0));
    std::vector<bool> swapped(n, false);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        if (std::abs(d(i)) >= std::abs(dl(i))) {
            if (d(i) == 0.0) d(i) = floor;
            const cplx f = dl(i) / d(i);
            dl(i) = f;
            d(i + 1) -= f * du(i);
        } else {
            const cplx f = d(i) / dl(i);
            d(i) = dl(i);
            dl(i) = f;
            const cplx tmp = du(i);
            du(i) = d(i + 1);
            d(i + 1) = tmp - f * d(i + 1);
            if (i + 2 < n) {
                du2(i) = du(i + 1);
                du(i + 1) = -f * du(i + 1);
            }
            swapped[i] = true;
        }
    }
    if (std::abs(d(n - 1)) < floor) d(n - 1) = floor;

    CVec x(n);
    for (Eigen::Index j = 0; j < n; ++j) x(j) = 1.0 + 0.25 * std::sin(1.0 + 0.7 * static_cast<double>(j));
    for (int it = 0; it < iterations; ++it) {
        // forward: apply L^{-1} with the recorded interchanges
        for (Eigen::Index i = 0; i + 1 < n; ++i) {
            if (!swapped[i]) x(i + 1) -= dl(i) * x(i);
            else {
                const cplx tmp = x(i);
                x(i) = x(i + 1);
                x(i + 1) = tmp - dl(i) * x(i);
            }
        }
        // back substitution with U
        x(n - 1) /= d(n - 1);
        if (n > 1) x(n - 2) = (x(n - 2) - du(n - 2) * x(n - 1)) / (std::abs(d(n - 2)) < floor ? cplx(floor) : d(n - 2));
        for (Eigen::Index i = n - 3; i >= 0; --i) {
            const cplx piv = std::abs(d(i)) < floor ? cplx(floor) : d(i);
            x(i) = (x(i) - du(i) * x(i + 1) - du2(i) * x(i + 2)) / piv;
        }
        const double mx = x.cwiseAbs().maxCoeff();
        if (!(mx > 0) || !std::isfinite(mx)) break;
        x /= mx;
    }
    return x;
}

}  // namespace nhqfi::tridiag
