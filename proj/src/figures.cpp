#include "nhqfi/figures.hpp"

#include <cmath>

#include "nhqfi/bench.hpp"
#include "nhqfi/model.hpp"
#include "nhqfi/multiparam.hpp"
#include "nhqfi/parallel.hpp"
#include "nhqfi/ptphase.hpp"
#include "nhqfi/qfi.hpp"
#include "nhqfi/spectral.hpp"

namespace nhqfi::figures {

using table::fmt;

namespace {

std::vector<int> range(int a, int b, int step)
{
    std::vector<int> v;
    for (int i = a; i <= b; i += step) v.push_back(i);
    return v;
}

std::vector<double> log_grid(double a, double b, int n)
{
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(std::pow(10.0, std::log10(a) + (std::log10(b) - std::log10(a)) * i / (n - 1)));
    return v;
}

Panel line(std::string name, std::vector<std::string> cols, std::string title, std::string x, std::string y,
           std::string group = "", bool log_x = false, bool log_y = false)
{
    Panel p;
    p.name = std::move(name);
    p.data.columns = std::move(cols);
    p.plot = {std::move(title), std::move(x), std::move(y), std::move(group), log_x, log_y};
    return p;
}

const char* pname[] = {"mu", "phi", "g"};

}  // namespace

Figure fig1(const KeyValues& cfg)
{
    const double t = cfg.get_double("t", 1.0);
    const auto ns = cfg.get_int_list("n_list", range(10, 100, 5));
    const auto kappas = cfg.get_list("kappa_list", {0.44, 0.62, 0.96});
    const auto deltas = cfg.get_list("delta_list", {1e-4, 5e-4, 1e-3});
    Figure f{"fig1", {}};

    Panel a = line("nhse", {"kappa", "N", "log10_qfi", "qfi", "floored"}, "Skin-effect QFI", "N", "log10_qfi", "kappa");
    for (double k : kappas)
        for (int n : ns) {
            const auto q = qfi::nhse_analytic(n, k, t);
            const bool floored = q.log10_abs < log_floor;
            const double l = floored ? log_floor : q.log10_abs;
            a.data.add({fmt(k), std::to_string(n), fmt(l), fmt(floored ? std::pow(10.0, log_floor) : q.value),
                        floored ? "1" : "0"});
        }
    Panel b = line("ep", {"delta", "N", "qfi", "eta"}, "EP-enhanced QFI", "N", "qfi", "delta", false, true);
    for (double d : deltas)
        for (int n : ns) {
            const auto q = qfi::ep_analytic(n, t, d);
            b.data.add({fmt(d), std::to_string(n), fmt(q.value), fmt(q.per_particle)});
        }
    Panel c = line("sql", {"N", "qfi"}, "Standard quantum limit", "N", "qfi");
    for (int n : ns) c.data.add({std::to_string(n), fmt(static_cast<double>(n))});
    f.panels = {a, b, c};
    return f;
}

Figure fig2(const KeyValues& cfg)
{
    const int n = cfg.get_int("n", 50);
    const double d = cfg.get_double("delta", 0.01);
    const double t = cfg.get_double("t", 1.0);
    const double nu = cfg.get_double("nu", 1.0);
    const auto r = multiparam::closed_form(n, d, t, nu);
    Figure f{"fig2", {}};
    Panel m;
    m.name = "matrix";
    m.heatmap = true;
    m.row = "row";
    m.col = "col";
    m.value = "value";
    m.plot.title = "QFI matrix";
    m.data.columns = {"row", "col", "value"};
    Panel inv = m;
    inv.name = "inverse";
    inv.plot.title = "Inverse QFI matrix";
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            m.data.add({pname[i], pname[j], fmt(r.f(i, j))});
            inv.data.add({pname[i], pname[j], fmt(r.f_inv(i, j))});
        }
    Panel s = line("sensitivity", {"parameter", "index", "sensitivity"}, "Cramer-Rao sensitivities", "index", "sensitivity");
    const double sv[] = {r.sens.mu, r.sens.phi, r.sens.g};
    for (int i = 0; i < 3; ++i) s.data.add({pname[i], std::to_string(i), fmt(sv[i])});
    f.panels = {m, inv, s};
    return f;
}

Figure figS1(const KeyValues& cfg)
{
    const int n = cfg.get_int("n", 50);
    const double t = cfg.get_double("t", 1.0);
    const auto kappas = cfg.get_list("kappa_list", {0.44, 0.96, 1.32, 1.57});
    const auto ns = cfg.get_int_list("n_list", range(10, 80, 10));
    Figure f{"figS1", {}};

    Panel prof = line("profiles", {"kappa", "j", "psi_r_sq", "psi_l_sq"}, "Skin-mode intensities", "j", "psi_r_sq", "kappa",
                      false, true);
    for (double k : kappas) {
        const auto sm = spectral::skin_modes(k, n);
        for (int j = 0; j < n; ++j)
            prof.data.add({fmt(k), std::to_string(j + 1), fmt(sm.psi_r(j) * sm.psi_r(j)), fmt(sm.psi_l(j) * sm.psi_l(j))});
    }
    Panel ov = line("overlap", {"kappa", "N", "ln_overlap_sq", "ln_overlap_sq_closed_form", "ln_ratio"},
                    "Biorthogonal overlap", "N", "ln_overlap_sq", "kappa");
    Panel slope = line("overlap_slope", {"kappa", "slope", "minus_two_kappa", "r2"}, "Overlap decay rate", "kappa", "slope");
    for (double k : kappas) {
        std::vector<double> x, y;
        for (int m : ns) {
            const auto sm = spectral::skin_modes(k, m);
            ov.data.add({fmt(k), std::to_string(m), fmt(sm.log_overlap_sq_direct), fmt(sm.log_overlap_sq_exact),
                         fmt(sm.discrepancy_log_ratio)});
            x.push_back(m);
            y.push_back(sm.log_overlap_sq_direct);
        }
        const auto lf = fit::linear(x, y);
        slope.data.add({fmt(k), fmt(lf.slope), fmt(-2 * k), fmt(lf.r2)});
    }
    Panel xi = line("localization_length", {"gamma_over_t", "kappa", "xi"}, "Localization length", "gamma_over_t", "xi");
    for (int i = 1; i <= 40; ++i) {
        const double x = 1 + 0.05 * i;
        const double k = *spectral::localization_exponents(t, x * t, 0.0).kappa_arccosh;
        xi.data.add({fmt(x), fmt(k), fmt(1 / k)});
    }
    Panel q = line("qfi", {"kappa", "N", "log10_qfi", "log10_sql"}, "QFI suppression", "N", "log10_qfi", "kappa");
    for (double k : kappas)
        for (int m : ns) q.data.add({fmt(k), std::to_string(m), fmt(qfi::nhse_analytic(m, k, t).log10_abs), fmt(std::log10(m))});
    f.panels = {prof, ov, slope, xi, q};
    return f;
}

Figure figS2(const KeyValues& cfg)
{
    const double t = cfg.get_double("t", 1.0);
    const int n = cfg.get_int("n", 20);
    Figure f{"figS2", {}};
    Panel th = line("threshold", {"N", "g_c", "g_c_order2", "g_c_order4"}, "Threshold vs expansion", "N", "g_c");
    for (int m : range(2, 100, 2))
        th.data.add({std::to_string(m), fmt(ptphase::gc_exact(m, t)), fmt(ptphase::gc_expansion(m, t, 2)),
                     fmt(ptphase::gc_expansion(m, t, 4))});
    Panel eta = line("eta_vs_n", {"delta", "N", "eta"}, "Enhancement factor", "N", "eta", "delta", false, true);
    for (double d : cfg.get_list("delta_list", {1e-4, 5e-4, 1e-3, 5e-3}))
        for (int m : range(10, 100, 10)) eta.data.add({fmt(d), std::to_string(m), fmt(qfi::ep_analytic(m, t, d).per_particle)});
    Panel prox = line("eta_vs_delta", {"delta", "eta", "heisenberg"}, "EP proximity", "delta", "eta", "", true, true);
    for (double d : log_grid(1e-5, 1e-1, 25))
        prox.data.add({fmt(d), fmt(qfi::ep_analytic(n, t, d).per_particle), fmt(static_cast<double>(n))});
    Panel marg = line("margins", {"margin", "delta", "eta", "qfi"}, "Safety margins", "margin", "eta");
    const double gc = ptphase::gc_exact(n, t);
    for (double m : cfg.get_list("margin_list", {0.01, 0.05, 0.10, 0.20})) {
        const auto q = qfi::ep_analytic(n, t, m * gc);
        marg.data.add({fmt(m), fmt(m * gc), fmt(q.per_particle), fmt(q.value)});
    }
    f.panels = {th, eta, prox, marg};
    return f;
}

Figure figS3(const KeyValues& cfg)
{
    const double t = cfg.get_double("t", 1.0);
    const auto ns = cfg.get_int_list("n_list", range(4, 40, 4));
    std::vector<double> xs = cfg.get_list("x_list", {});
    if (xs.empty())
        for (int i = 0; i <= 30; ++i) xs.push_back(0.1 * i);
    Figure f{"figS3", {}};
    const auto rows = ptphase::phase_diagram(ns, xs, t);
    Panel d = line("diagram", {"N", "gamma_over_t", "kind", "regime", "g_c", "max_im", "qfi_log10", "consistent"},
                   "Regime map", "gamma_over_t", "max_im", "N");
    for (const auto& r : rows)
        d.data.add({std::to_string(r.n), fmt(r.gamma_over_t), model::to_string(r.kind), ptphase::to_string(r.regime),
                    fmt(r.g_c), fmt(r.max_im), fmt(r.qfi_log10), r.consistent ? "1" : "0"});
    Panel b = line("boundary", {"N", "g_c", "nhse_threshold"}, "Regime boundaries", "N", "g_c");
    for (int n : ns) b.data.add({std::to_string(n), fmt(ptphase::gc_exact(n, t)), fmt(t)});
    Panel q = line("qfi_landscape", {"N", "gamma_over_t", "kind", "qfi_log10"}, "QFI landscape", "gamma_over_t", "qfi_log10", "N");
    for (const auto& r : rows)
        if (r.n == 10 || r.n == 20 || r.n == 30 || r.n == 12 || r.n == 28)
            q.data.add({std::to_string(r.n), fmt(r.gamma_over_t), model::to_string(r.kind), fmt(r.qfi_log10)});
    f.panels = {d, b, q};
    return f;
}

Figure figS4(const KeyValues& cfg)
{
    const double t = cfg.get_double("t", 1.0);
    Figure f{"figS4", {}};
    Panel route = line("route_equivalence", {"N", "g", "finite_diff", "pert_sum", "rel_err"}, "Finite difference vs sum",
                       "N", "rel_err", "", false, true);
    const auto ns = cfg.get_int_list("n_list", {2, 4, 6, 8, 10, 12});
    const auto rows = parallel_map<std::vector<std::string>>(ns.size(), [&](std::size_t i) {
        model::ChainSpec s;
        s.n = ns[i];
        s.t = t;
        s.kind = model::Kind::pt;
        // half of the first pair-breaking value keeps every level real
        s.g = t * std::sin(pi / (2.0 * (ns[i] + 1)));
        const auto a = qfi::finite_diff(s, model::Param::g);
        const auto b = qfi::pert_sum(s, model::Param::g);
        return std::vector<std::string>{std::to_string(ns[i]), fmt(s.g), fmt(a.value), fmt(b.value),
                                        fmt(std::abs(a.value - b.value) / std::abs(b.value))};
    });
    for (const auto& r : rows) route.data.add(r);
    Panel th = line("threshold", {"N", "numeric", "exact", "abs_err"}, "Last-pair coalescence", "N", "abs_err", "", false, true);
    for (int n : {2, 4, 8, 10, 16, 32}) {
        model::ChainSpec s;
        s.n = n;
        s.t = t;
        s.kind = model::Kind::pt;
        const double ex = ptphase::gc_exact(n, t);
        const double g = ptphase::gc_numeric(s, 0.5 * ex, 2.2 * t, ptphase::Indicator::all_complex).g;
        th.data.add({std::to_string(n), fmt(g), fmt(ex), fmt(std::abs(g - ex))});
    }
    Panel acc = line("solver_agreement", {"N", "max_rel_difference"}, "Tridiagonal vs dense spectra", "N",
                     "max_rel_difference", "", false, true);
    for (int n : {50, 100, 200, 400}) acc.data.add({std::to_string(n), fmt(bench::spectra_agreement(bench::bench_spec(n, 0.5), 1e-8))});
    f.panels = {route, th, acc};
    return f;
}

const std::vector<std::string>& names()
{
    static const std::vector<std::string> n = {"fig1", "fig2", "figS1", "figS2", "figS3", "figS4"};
    return n;
}

Figure make(const std::string& name, const KeyValues& cfg)
{
    if (name == "fig1") return fig1(cfg);
    if (name == "fig2") return fig2(cfg);
    if (name == "figS1") return figS1(cfg);
    if (name == "figS2") return figS2(cfg);
    if (name == "figS3") return figS3(cfg);
    if (name == "figS4") return figS4(cfg);
    throw Error(ErrorKind::invalid_argument, "unknown figure '" + name + "'");
}

std::string render_svg(const Panel& p, const std::string& csv)
{
    const table::Table t = table::parse_csv(csv);
    if (p.heatmap) return table::heatmap_svg(t, p.plot.title, p.row, p.col, p.value);
    return table::line_svg(t, p.plot);
}

}  // namespace nhqfi::figures
