#include "nhqfi/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "nhqfi/parallel.hpp"
#include "nhqfi/ptphase.hpp"
#include "nhqfi/spectral.hpp"

namespace nhqfi::protocols {

namespace {

double survival_model(double t, const RVec& p)
{
    const double c = std::cos(p(1) * t + p(2));
    return std::exp(-p(0) * t) * c * c;
}

}  // namespace

QuenchResult quench_survival(const model::ChainSpec& tmpl, double g_initial, double g_final,
                             const std::vector<double>& times)
{
    if (times.size() < 4 || times.front() != 0.0) throw Error(ErrorKind::invalid_argument, "time grid must start at 0 with >= 4 points");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw Error(ErrorKind::invalid_argument, "time grid must be increasing");
    const model::ChainSpec si = model::with(tmpl, model::Param::g, g_initial);
    const model::ChainSpec sf = model::with(tmpl, model::Param::g, g_final);
    model::validate(si);
    model::validate(sf);
    {
        const CVec ev = spectral::eigenvalues(model::build_chain(si));
        if (ptphase::max_imag(ev) > ptphase::tol_real * tmpl.t)
            throw Error(ErrorKind::regime, "g_initial is not in the unbroken phase (complex spectrum)");
    }
    const auto es = spectral::eig_biorthogonal(model::build_chain(si));
    const CVec psi0 = es.right.col(spectral::ground_index(es.eigenvalues, es.norm)).normalized();
    const CMat h = model::build_chain(sf).dense();

    QuenchResult q;
    q.times = times;
    q.survival.reserve(times.size());
    q.survival.push_back(1.0);
    CVec psi = psi0;
    double cached_dt = -1;
    CMat u;
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double dt = times[i] - times[i - 1];
        if (std::abs(dt - cached_dt) > 1e-15 * std::max(1.0, dt)) {
            u = (cplx(0, -dt) * h).exp();
            cached_dt = dt;
        }
        psi = u * psi;
        psi.normalize();
        q.survival.push_back(std::norm(psi0.dot(psi)));
    }

    // multi-start Levenberg-Marquardt over the oscillation frequency
    const double span = times.back();
    const double dt_min = span / static_cast<double>(times.size() - 1);
    std::vector<double> omegas = {0.0};
    for (int i = 0; i < 40; ++i)
        omegas.push_back(0.25 * pi / span * std::pow(4.0 * span / dt_min, i / 39.0));
    double mean = 0;
    for (double v : q.survival) mean += v;
    mean /= static_cast<double>(q.survival.size());
    double sst = 0;
    for (double v : q.survival) sst += (v - mean) * (v - mean);
    double best = INFINITY;
    for (double w : omegas) {
        RVec start(3);
        start << 0.0, w, 0.0;
        const auto f = fit::least_squares(survival_model, q.times, q.survival, start);
        if (f.rss < best) {
            best = f.rss;
            q.gamma = f.params(0);
            q.omega = std::abs(f.params(1));
            q.phase = f.params(1) < 0 ? -f.params(2) : f.params(2);
        }
    }
    q.r2 = sst > 0 ? 1 - best / sst : (best < 1e-20 ? 1.0 : 0.0);
    q.fit_ok = q.r2 >= 0.9;
    return q;
}

std::string quench_csv(const QuenchResult& q)
{
    std::ostringstream os;
    os << std::setprecision(17) << "time,survival\n";
    for (std::size_t i = 0; i < q.times.size(); ++i) os << q.times[i] << ',' << q.survival[i] << '\n';
    return os.str();
}

double min_real_gap(const CVec& ev, double tol_imag)
{
    std::vector<double> re;
    for (int i = 0; i < ev.size(); ++i)
        if (std::abs(ev(i).imag()) <= tol_imag) re.push_back(ev(i).real());
    if (re.size() < 2) return NAN;
    std::sort(re.begin(), re.end());
    double gap = INFINITY;
    for (std::size_t i = 1; i < re.size(); ++i) gap = std::min(gap, re[i] - re[i - 1]);
    return gap;
}

GapScan adiabatic_gap_scan(const model::ChainSpec& tmpl, const std::vector<double>& g_grid)
{
    GapScan s;
    s.g = g_grid;
    s.gap = parallel_map<double>(g_grid.size(), [&](std::size_t i) {
        const CVec ev = spectral::eigenvalues(model::build_chain(model::with(tmpl, model::Param::g, g_grid[i])));
        return min_real_gap(ev, 1e-9 * tmpl.t);
    });
    const double gc = ptphase::gc_exact(tmpl.n, tmpl.t);
    std::vector<double> x, y;
    for (std::size_t i = 0; i < g_grid.size(); ++i)
        if (std::isfinite(s.gap[i]) && s.gap[i] > 0 && g_grid[i] != gc) {
            x.push_back(std::abs(g_grid[i] - gc));
            y.push_back(s.gap[i]);
        }
    if (x.size() >= 2) s.loglog = fit::power_law(x, y);
    return s;
}

namespace {

struct Pair {
    cplx value;
    CVec r, l;
};

spectral::BiorthogonalEigensystem eig_at(const model::ChainSpec& tmpl, cplx g)
{
    return spectral::eig_biorthogonal(model::build_chain_complex_g(tmpl, g));
}

// Eigenpair with the largest |<r_prev|R>|; L rescaled to keep <L|R> = 1.
Pair follow(const spectral::BiorthogonalEigensystem& es, const CVec& r_prev)
{
    int best = -1, second = -1;
    double ob = -1, os = -1;
    for (int j = 0; j < es.dim(); ++j) {
        const double o = std::abs(r_prev.dot(es.right.col(j)));
        if (o > ob) {
            second = best;
            os = ob;
            best = j;
            ob = o;
        } else if (o > os) {
            second = j;
            os = o;
        }
    }
    if (second >= 0 && ob - os < 1e-12) {
        std::ostringstream msg;
        msg << "two continuation candidates with overlaps " << ob << " and " << os;
        throw Error(ErrorKind::tracking, msg.str());
    }
    if (es.ep_degenerate[best]) throw Error(ErrorKind::ep_degenerate, "contour passes through an exceptional point");
    return {es.eigenvalues(best), es.right.col(best), es.left.col(best)};
}

}  // namespace

BraidResult braid(const model::ChainSpec& tmpl, const BraidOptions& opt)
{
    if (tmpl.kind != model::Kind::pt && tmpl.kind != model::Kind::multiparam)
        throw Error(ErrorKind::invalid_argument, "braid needs a gain/loss chain (pt or multiparam)");
    if (!(opt.radius > 0) || !(opt.period > 0)) throw Error(ErrorKind::invalid_argument, "radius and period must be > 0");
    if (opt.steps < 100) throw Error(ErrorKind::invalid_argument, "braid needs >= 100 steps per loop");
    BraidResult b;
    b.center = std::isnan(opt.center) ? ptphase::gc_exact(tmpl.n, tmpl.t) : opt.center;
    b.radius = opt.radius;
    b.period = opt.period;
    b.steps = opt.steps;
    b.adiabatic_ok = 10 * 2 * pi * opt.radius / opt.period <= std::sqrt(2 * tmpl.t * opt.radius);

    auto g_of = [&](int k) { return b.center + opt.radius * std::polar(1.0, 2 * pi * k / opt.steps); };

    const auto es0 = eig_at(tmpl, g_of(0));
    int a = -1, p = -1;
    for (int j = 0; j < es0.dim(); ++j) {
        if (a < 0 || std::abs(es0.eigenvalues(j)) < std::abs(es0.eigenvalues(a)) - 1e-12) {
            p = a;
            a = j;
        } else if (p < 0 || std::abs(es0.eigenvalues(j)) < std::abs(es0.eigenvalues(p)) - 1e-12) {
            p = j;
        } else if (std::abs(std::abs(es0.eigenvalues(j)) - std::abs(es0.eigenvalues(p))) <= 1e-12 &&
                   es0.eigenvalues(j).imag() > es0.eigenvalues(p).imag()) {
            p = j;
        }
    }
    if (std::abs(std::abs(es0.eigenvalues(a)) - std::abs(es0.eigenvalues(p))) <= 1e-12 &&
        es0.eigenvalues(p).imag() > es0.eigenvalues(a).imag())
        std::swap(a, p);
    b.start_value = es0.eigenvalues(a);
    b.partner_value = es0.eigenvalues(p);
    const CVec r_start = es0.right.col(a);
    {
        const model::ChainSpec sr = model::with(tmpl, model::Param::g, std::max(b.center, 0.0));
        b.perturbation_element = es0.left.col(a).dot(model::derivative(sr, model::Param::g).apply(r_start));
    }

    Pair cur{b.start_value, r_start, es0.left.col(a)};
    b.trajectory.push_back(cur.value);
    auto closer_to_partner = [&](cplx v) { return std::abs(v - b.partner_value) < std::abs(v - b.start_value); };
    std::vector<cplx> logs;
    cplx closing[2];
    for (int loop = 0; loop < 2; ++loop) {
        for (int k = 1; k <= opt.steps; ++k) {
            Pair next = follow(eig_at(tmpl, g_of(k)), cur.r);
            // parallel-transport gauge: <L_k|R_k+1> real positive
            const cplx ov = cur.l.dot(next.r);
            const cplx ph = std::abs(ov) > 0 ? std::conj(ov) / std::abs(ov) : cplx(1);
            next.r *= ph;
            next.l *= ph;
            // midpoint-symmetric link: 1/2 log(<L_k|R_k+1> / <L_k+1|R_k>) is
            // gauge covariant and second-order accurate in the step
            logs.push_back(0.5 * std::log(cur.l.dot(next.r) / next.l.dot(cur.r)));
            cur = next;
            // holonomy: the transported vector against the starting one
            if (k == opt.steps) closing[loop] = std::log(cur.l.dot(r_start));
            b.trajectory.push_back(cur.value);
        }
        if (loop == 0) {
            b.end_value = cur.value;
            b.swapped = closer_to_partner(cur.value);
        } else {
            b.end_value_two = cur.value;
            b.restored = !closer_to_partner(cur.value);
        }
    }
    b.loops_closed = !b.swapped ? 1 : (b.restored ? 2 : 0);
    const int used = std::max(b.loops_closed, 1) * opt.steps;
    cplx log_sum = closing[std::max(b.loops_closed, 1) - 1];
    for (int i = 0; i < used; ++i) log_sum += logs[i];
    b.berry_phase = cplx(0, 1) * log_sum;
    return b;
}

nlohmann::json to_json(const BraidResult& b)
{
    auto c = [](cplx z) { return nlohmann::json{{"re", z.real()}, {"im", z.imag()}}; };
    nlohmann::json j;
    j["contour"] = {{"center", b.center}, {"radius", b.radius}, {"period", b.period}, {"steps", b.steps}};
    j["berry_phase"] = c(b.berry_phase);
    j["loops_closed"] = b.loops_closed;
    j["swapped"] = b.swapped;
    j["restored_after_two"] = b.restored;
    j["adiabatic_ok"] = b.adiabatic_ok;
    j["start_value"] = c(b.start_value);
    j["partner_value"] = c(b.partner_value);
    j["end_value"] = c(b.end_value);
    j["end_value_two"] = c(b.end_value_two);
    j["perturbation_element"] = c(b.perturbation_element);
    return j;
}

double resource_time(const ResourceParams& p)
{
    if (!(p.t > 0) || !(p.delta > 0) || !(p.nu > 0) || p.n < 1 || !(p.t_read > 0))
        throw Error(ErrorKind::invalid_argument, "resource parameters must be positive");
    const double n = p.n;
    return 10 / p.t + 1 / (p.t * p.delta) + std::sqrt(p.nu) / (p.t * std::sqrt(n * n / p.delta)) + n / p.t_read;
}

double resource_energy(const ResourceParams& p, double t_total)
{
    if (!(p.t > 0) || p.n < 1 || !(p.t_read > 0) || !(t_total >= 0))
        throw Error(ErrorKind::invalid_argument, "resource parameters must be positive");
    return p.n * p.t * (1 + (p.g * p.g) / (p.t * p.t) * (t_total / p.t) + 1 / (p.t * p.t_read));
}

double resource_energy(const ResourceParams& p) { return resource_energy(p, resource_time(p)); }

}  // namespace nhqfi::protocols
