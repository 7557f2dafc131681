#include "nhqfi/ptphase.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "nhqfi/parallel.hpp"
#include "nhqfi/qfi.hpp"
#include "nhqfi/spectral.hpp"

namespace nhqfi::ptphase {

std::string to_string(Regime r)
{
    switch (r) {
    case Regime::extended_unbroken: return "extended_unbroken";
    case Regime::extended_broken: return "extended_broken";
    case Regime::nhse_suppressed: return "nhse_suppressed";
    case Regime::critical: return "critical";
    }
    return "?";
}

std::string to_string(Indicator i) { return i == Indicator::any_complex ? "any_complex" : "all_complex"; }

Indicator indicator_from_string(std::string_view s)
{
    if (s == "any_complex") return Indicator::any_complex;
    if (s == "all_complex") return Indicator::all_complex;
    throw Error(ErrorKind::invalid_argument, "unknown indicator '" + std::string(s) + "'");
}

double gc_exact(int n, double t)
{
    if (n < 1) throw Error(ErrorKind::invalid_argument, "N must be >= 1");
    return 2 * t * std::cos(pi / (n + 1));
}

double gc_expansion(int n, double t, int order)
{
    if (n < 2) throw Error(ErrorKind::invalid_argument, "expansion needs N >= 2");
    const double n2 = static_cast<double>(n) * n;
    double v = 1 - pi * pi / (2 * n2);
    if (order == 4) v += std::pow(pi, 4) / (8 * n2 * n2);
    else if (order != 2) throw Error(ErrorKind::invalid_argument, "expansion order must be 2 or 4");
    return 2 * t * v;
}

double max_imag(const CVec& ev) { return ev.size() ? ev.imag().cwiseAbs().maxCoeff() : 0.0; }
double min_abs_imag(const CVec& ev) { return ev.size() ? ev.imag().cwiseAbs().minCoeff() : 0.0; }

namespace {

CVec spectrum_at(const model::ChainSpec& tmpl, double g)
{
    return spectral::eigenvalues(model::build_chain(model::with(tmpl, model::Param::g, g)));
}

bool broken(const model::ChainSpec& tmpl, double g, Indicator ind)
{
    const CVec ev = spectrum_at(tmpl, g);
    const double tol = tol_real * tmpl.t;
    return ind == Indicator::any_complex ? max_imag(ev) > tol : min_abs_imag(ev) > tol;
}

}  // namespace

GcSearch gc_numeric(const model::ChainSpec& tmpl, double g_lo, double g_hi, Indicator ind)
{
    if (tmpl.kind != model::Kind::pt) throw Error(ErrorKind::invalid_argument, "gc_numeric needs kind = pt");
    if (tmpl.delta != 0) throw Error(ErrorKind::invalid_argument, "gc_numeric needs delta = 0");
    if (!(g_hi > g_lo) || g_lo < 0) throw Error(ErrorKind::invalid_argument, "need 0 <= g_lo < g_hi");
    GcSearch out;
    constexpr int scan = 256;
    double prev_g = g_lo;
    bool prev = broken(tmpl, g_lo, ind);
    const bool first = prev;
    ++out.evaluations;
    double lo = NAN, hi = NAN;
    for (int i = 1; i <= scan; ++i) {
        const double g = g_lo + (g_hi - g_lo) * i / scan;
        const bool b = broken(tmpl, g, ind);
        ++out.evaluations;
        if (b != prev) {
            lo = prev_g;
            hi = g;
            break;
        }
        prev = b;
        prev_g = g;
    }
    if (std::isnan(lo)) {
        std::ostringstream os;
        os << "indicator " << to_string(ind) << " is " << (first ? "true" : "false") << " over the whole range [" << g_lo
           << ", " << g_hi << "]";
        throw Error(ErrorKind::no_transition, os.str());
    }
    const bool at_lo = broken(tmpl, lo, ind);
    ++out.evaluations;
    while (hi - lo > 1e-8 * tmpl.t) {
        const double mid = 0.5 * (lo + hi);
        if (broken(tmpl, mid, ind) == at_lo) lo = mid;
        else hi = mid;
        ++out.evaluations;
    }
    out.lo = lo;
    out.hi = hi;
    out.g = 0.5 * (lo + hi);
    return out;
}

double splitting_coefficient(int n, double t)
{
    if (n < 1) throw Error(ErrorKind::invalid_argument, "N must be >= 1");
    const double s = std::sin(pi / (n + 1));
    return std::sqrt(2 * t * t * s * s / (n + 1));
}

double coalescing_gap(const CVec& ev)
{
    if (ev.size() < 2) throw Error(ErrorKind::invalid_argument, "need at least two eigenvalues");
    int a = -1, b = -1;
    for (int i = 0; i < ev.size(); ++i) {
        if (a < 0 || std::abs(ev(i)) < std::abs(ev(a))) {
            b = a;
            a = i;
        } else if (b < 0 || std::abs(ev(i)) < std::abs(ev(b))) {
            b = i;
        }
    }
    return std::abs(ev(a) - ev(b));
}

SplittingFit splitting_fit(const model::ChainSpec& tmpl, const std::vector<double>& eps, int side)
{
    if (side != -1 && side != 1) throw Error(ErrorKind::invalid_argument, "side must be -1 or +1");
    if (eps.size() < 3) throw Error(ErrorKind::invalid_argument, "splitting fit needs >= 3 detunings");
    const double gc = gc_exact(tmpl.n, tmpl.t);
    SplittingFit f;
    f.eps = eps;
    f.gap = parallel_map<double>(eps.size(), [&](std::size_t i) {
        if (!(eps[i] > 0)) throw Error(ErrorKind::invalid_argument, "detunings must be > 0");
        return coalescing_gap(spectrum_at(tmpl, gc + side * eps[i]));
    });
    f.loglog = fit::power_law(f.eps, f.gap);
    f.exponent = f.loglog.slope;
    f.prefactor = 0.5 * std::exp(f.loglog.intercept);
    f.alpha_formula = splitting_coefficient(tmpl.n, tmpl.t);
    f.eps_min = *std::min_element(eps.begin(), eps.end());
    f.eps_max = *std::max_element(eps.begin(), eps.end());
    f.low_r2 = f.loglog.r2 < 0.99;
    return f;
}

std::vector<FlowPoint> spectral_flow(const model::ChainSpec& tmpl, int m, const std::vector<double>& g_grid)
{
    if (tmpl.delta < 0) throw Error(ErrorKind::invalid_argument, "delta must be >= 0");
    if (m < 1 || m > tmpl.n) throw Error(ErrorKind::invalid_argument, "mode index out of range");
    const double k = m * pi / (tmpl.n + 1);
    const double c2 = std::cos(k) * std::cos(k), s2 = std::sin(k) * std::sin(k);
    const double t = tmpl.t, d = tmpl.delta;
    auto branch = [](double r) { return r >= 0 ? cplx(std::sqrt(r), 0) : cplx(0, std::sqrt(-r)); };

    std::vector<FlowPoint> out;
    cplx track = std::sqrt(4 * t * t * c2 + d * d * s2);
    for (double g : g_grid) {
        FlowPoint p;
        p.g = g;
        p.printed = branch(4 * t * t * c2 - g * g * c2 + d * d * s2);
        p.dispersion = branch(4 * t * t * c2 + d * d * s2 - g * g);
        const CVec ev = spectrum_at(tmpl, g);
        int best = 0;
        for (int i = 1; i < ev.size(); ++i)
            if (std::abs(ev(i) - track) < std::abs(ev(best) - track)) best = i;
        track = ev(best);
        p.numeric = track;
        out.push_back(p);
    }
    return out;
}

double bandwidth(const model::ChainSpec& s)
{
    const CVec ev = spectral::eigenvalues(model::build_chain(s));
    return ev.real().maxCoeff() - ev.real().minCoeff();
}

double bandwidth_formula(int n, double t, double g)
{
    const double gc = gc_exact(n, t);
    const double c = std::cos(pi / (n + 1));
    return 2 * std::sqrt(std::max(gc * gc - g * g, 0.0) * c * c);
}

BandwidthFit bandwidth_fit(const model::ChainSpec& tmpl, const std::vector<double>& g_over_gc)
{
    const double gc = gc_exact(tmpl.n, tmpl.t);
    BandwidthFit f;
    std::vector<double> dx;
    for (double x : g_over_gc) {
        if (!(x < 1)) throw Error(ErrorKind::invalid_argument, "bandwidth fit needs g < g_c");
        f.g.push_back(x * gc);
        dx.push_back(gc - x * gc);
    }
    f.width = parallel_map<double>(f.g.size(), [&](std::size_t i) {
        return bandwidth(model::with(tmpl, model::Param::g, f.g[i]));
    });
    f.loglog = fit::power_law(dx, f.width);
    return f;
}

PhasePoint classify_regime(const model::ChainSpec& s)
{
    model::validate(s);
    PhasePoint p;
    p.spec = s;
    p.max_im = max_imag(spectral::eigenvalues(model::build_chain(s)));
    p.g_c = gc_exact(s.n, s.t);
    const double tol = tol_real * s.t;
    if (s.kind == model::Kind::nhse) {
        p.detuning = NAN;
        p.regime = s.gamma > 0 ? Regime::nhse_suppressed : Regime::extended_unbroken;
        p.consistent = true;
        return p;
    }
    const double g = s.kind == model::Kind::hermitian ? 0.0 : s.g;
    p.detuning = p.g_c - g;
    const double w = critical_window * s.t;
    if (g < p.g_c - w) p.regime = Regime::extended_unbroken;
    else if (g > p.g_c + w) p.regime = Regime::extended_broken;
    else p.regime = Regime::critical;
    if (p.regime == Regime::extended_unbroken) p.consistent = p.max_im <= tol;
    else if (p.regime == Regime::extended_broken) p.consistent = p.max_im > tol;
    return p;
}

std::vector<DiagramRow> phase_diagram(const std::vector<int>& ns, const std::vector<double>& xs, double t)
{
    struct Job {
        int n;
        double x;
        model::Kind kind;
    };
    std::vector<Job> jobs;
    for (int n : ns)
        for (double x : xs) {
            jobs.push_back({n, x, model::Kind::pt});
            if (x < 1) jobs.push_back({n, x, model::Kind::nhse});
        }
    return parallel_map<DiagramRow>(jobs.size(), [&](std::size_t i) {
        const Job& j = jobs[i];
        model::ChainSpec s;
        s.n = j.n;
        s.t = t;
        s.kind = j.kind;
        if (j.kind == model::Kind::pt) s.g = j.x * t;
        else s.gamma = j.x * t;
        const PhasePoint p = classify_regime(s);
        DiagramRow r;
        r.n = j.n;
        r.gamma_over_t = j.x;
        r.kind = j.kind;
        r.regime = p.regime;
        r.g_c = p.g_c;
        r.max_im = p.max_im;
        r.consistent = p.consistent;
        r.qfi_log10 = NAN;
        if (j.kind == model::Kind::pt && p.regime == Regime::extended_unbroken) {
            r.qfi_log10 = qfi::ep_analytic(j.n, t, p.detuning).log10_abs;
        } else if (j.kind == model::Kind::nhse && s.gamma > 0) {
            const auto k = spectral::localization_exponents(t, 0.0, s.gamma).kappa_hn;
            if (k) r.qfi_log10 = qfi::nhse_analytic(j.n, *k, t).log10_abs;
        }
        return r;
    });
}

std::string phase_diagram_csv(const std::vector<DiagramRow>& rows)
{
    std::ostringstream os;
    os << std::setprecision(17);
    os << "N,gamma_over_t,kind,regime,g_c,max_im,qfi_log10\n";
    for (const auto& r : rows)
        os << r.n << ',' << r.gamma_over_t << ',' << model::to_string(r.kind) << ',' << to_string(r.regime) << ','
           << r.g_c << ',' << r.max_im << ',' << r.qfi_log10 << '\n';
    return os.str();
}

}  // namespace nhqfi::ptphase
