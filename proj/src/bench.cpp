#include "nhqfi/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "nhqfi/spectral.hpp"
#include "nhqfi/tridiag.hpp"

namespace nhqfi::bench {

std::string to_string(Method m) { return m == Method::dense_general ? "dense_general" : "banded_specialized"; }

model::ChainSpec bench_spec(int n, double g_over_t)
{
    model::ChainSpec s;
    s.n = n;
    s.t = 1;
    s.g = g_over_t;
    s.kind = model::Kind::pt;
    model::validate(s);
    return s;
}

CVec solve(const model::ChainSpec& s, Method m)
{
    const model::BandedOperator h = model::build_chain(s);
    if (m == Method::dense_general) {
        Eigen::ComplexEigenSolver<CMat> es(h.dense(), false);
        if (es.info() != Eigen::Success) throw Error(ErrorKind::invalid_argument, "dense eigensolver did not converge");
        return es.eigenvalues();
    }
    if (!h.is_tridiagonal()) throw Error(ErrorKind::invalid_argument, "banded path needs a tridiagonal chain");
    const auto ev = tridiag::eigenvalues(h.diag(), h.upper(), h.lower());
    if (!ev) throw Error(ErrorKind::invalid_argument, "tridiagonal path needs nonzero couplings");
    return ev->values;
}

namespace {

double max_residual(const model::BandedOperator& h, const CVec& ev, int samples)
{
    const double norm = spectral::inf_norm(h);
    const CVec lo = h.lower(), up = h.upper(), d = h.diag();
    double worst = 0;
    const int n = static_cast<int>(ev.size());
    const int k = std::min(samples, n);
    for (int i = 0; i < k; ++i) {
        const int idx = k == 1 ? 0 : static_cast<int>(static_cast<long>(i) * (n - 1) / (k - 1));
        const CVec v = tridiag::inverse_iteration(lo, d, up, ev(idx));
        const CVec r = h.apply(v) - ev(idx) * v;
        worst = std::max(worst, r.norm() / (norm * v.norm()));
    }
    return worst;
}

std::size_t mem_estimate(int n, Method m)
{
    const std::size_t z = sizeof(cplx);
    const std::size_t nn = static_cast<std::size_t>(n);
    // dense: matrix, Schur form and workspace; banded: a handful of length-n vectors
    return m == Method::dense_general ? 3 * nn * nn * z : 12 * nn * z;
}

double quantile(std::vector<double> v, double q)
{
    std::sort(v.begin(), v.end());
    const double pos = q * (v.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    const double f = pos - i;
    return i + 1 < v.size() ? v[i] * (1 - f) + v[i + 1] * f : v[i];
}

}  // namespace

double spectra_agreement(const model::ChainSpec& s, double tol)
{
    const model::BandedOperator h = model::build_chain(s);
    const double norm = spectral::inf_norm(h);
    const CVec a = solve(s, Method::dense_general);
    const CVec b = solve(s, Method::banded_specialized);
    const auto perm = spectral::conjugate_pairing(a, b.conjugate(), tol * norm);
    double worst = 0;
    for (int i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a(i) - b(perm[i])));
    return worst / norm;
}

std::vector<BenchmarkRecord> run_bench(const BenchOptions& opt, const std::vector<Method>& methods)
{
    if (opt.repeats < 1) throw Error(ErrorKind::invalid_argument, "repeats must be >= 1");
    std::vector<BenchmarkRecord> out;
    for (int n : opt.ns) {
        const model::ChainSpec s = bench_spec(n, opt.g_over_t);
        const model::BandedOperator h = model::build_chain(s);
        const double norm = spectral::inf_norm(h);
        std::vector<CVec> spectra;
        std::vector<BenchmarkRecord> recs;
        for (Method m : methods) {
            BenchmarkRecord r;
            r.n = n;
            r.method = m;
            r.repeats = opt.repeats;
            std::vector<double> times;
            CVec ev;
            for (int k = 0; k < opt.repeats; ++k) {
                const auto t0 = std::chrono::steady_clock::now();
                ev = solve(s, m);
                times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
            }
            r.wall_seconds = quantile(times, 0.5);
            r.wall_seconds_iqr = quantile(times, 0.75) - quantile(times, 0.25);
            r.peak_mem_bytes = mem_estimate(n, m);
            r.max_residual = max_residual(h, ev, opt.sampled_pairs);
            spectra.push_back(ev);
            recs.push_back(r);
        }
        // correctness gate against the other method's spectrum
        for (std::size_t i = 0; i < recs.size(); ++i) {
            double dis = 0;
            for (std::size_t j = 0; j < recs.size(); ++j) {
                if (i == j) continue;
                try {
                    const auto perm = spectral::conjugate_pairing(spectra[i], spectra[j].conjugate(), opt.agreement_tol * norm);
                    for (int k = 0; k < spectra[i].size(); ++k)
                        dis = std::max(dis, std::abs(spectra[i](k) - spectra[j](perm[k])) / norm);
                } catch (const Error&) {
                    dis = INFINITY;
                }
            }
            recs[i].max_disagreement = dis;
            recs[i].accepted = recs[i].max_residual <= opt.residual_tol && dis <= opt.agreement_tol;
        }
        out.insert(out.end(), recs.begin(), recs.end());
    }
    return out;
}

std::vector<Scaling> scaling_fit(const std::vector<BenchmarkRecord>& records)
{
    std::vector<Scaling> out;
    for (Method m : {Method::dense_general, Method::banded_specialized}) {
        std::vector<double> x, y;
        for (const auto& r : records)
            if (r.method == m && r.accepted) {
                x.push_back(r.n);
                y.push_back(r.wall_seconds);
            }
        if (x.empty()) continue;
        std::vector<double> distinct = x;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        if (distinct.size() < 4)
            throw Error(ErrorKind::invalid_argument, "scaling fit needs >= 4 accepted sizes for " + to_string(m));
        Scaling s;
        s.method = m;
        s.loglog = fit::power_law(x, y);
        s.exponent = s.loglog.slope;
        s.ci95 = s.loglog.slope_ci_halfwidth(0.95);
        out.push_back(s);
    }
    return out;
}

std::string bench_csv(const std::vector<BenchmarkRecord>& records)
{
    std::ostringstream os;
    os << std::setprecision(10) << "N,method,wall_seconds_median,wall_seconds_iqr,peak_mem_bytes,max_residual\n";
    for (const auto& r : records)
        os << r.n << ',' << to_string(r.method) << ',' << r.wall_seconds << ',' << r.wall_seconds_iqr << ','
           << r.peak_mem_bytes << ',' << r.max_residual << '\n';
    return os.str();
}

}  // namespace nhqfi::bench
