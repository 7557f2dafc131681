#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nhqfi/acceptance.hpp"
#include "nhqfi/bench.hpp"
#include "nhqfi/config.hpp"
#include "nhqfi/figures.hpp"
#include "nhqfi/model.hpp"
#include "nhqfi/ptphase.hpp"
#include "nhqfi/spectral.hpp"
#include "nhqfi/table.hpp"

namespace fs = std::filesystem;
using namespace nhqfi;

namespace {

// exit codes
constexpr int ok = 0, failed = 1, bad_input = 2;

struct Run {
    std::string config;
    std::string out = ".";
    std::string formats = "csv,json,svg";
    std::vector<std::string> set;  // key=value overrides
    std::set<std::string> fmt;

    KeyValues load() const
    {
        KeyValues kv = config.empty() ? KeyValues{} : KeyValues::load(config);
        for (const auto& s : set) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw Error(ErrorKind::invalid_argument, "--set expects key=value, got '" + s + "'");
            kv.set(s.substr(0, eq), s.substr(eq + 1));
        }
        return kv;
    }
    bool wants(const std::string& f) const { return fmt.count(f) != 0; }
};

void write(const fs::path& p, const std::string& text)
{
    std::ofstream os(p, std::ios::binary);
    if (!os) throw Error(ErrorKind::io, "cannot write " + p.string());
    os << text;
    if (!os) throw Error(ErrorKind::io, "write failed for " + p.string());
    std::cout << p.string() << '\n';
}

void prepare(Run& r)
{
    std::stringstream ss(r.formats);
    std::string f;
    while (std::getline(ss, f, ',')) {
        if (f != "csv" && f != "json" && f != "svg") throw Error(ErrorKind::invalid_argument, "unknown format '" + f + "'");
        r.fmt.insert(f);
    }
    if (r.fmt.empty()) throw Error(ErrorKind::invalid_argument, "no output format selected");
    std::error_code ec;
    fs::create_directories(r.out, ec);
    if (ec || !fs::is_directory(r.out)) throw Error(ErrorKind::io, "output directory not usable: " + r.out);
}

int cmd_spectrum(Run& r)
{
    prepare(r);
    const model::ChainSpec s = model::from_map(r.load());
    model::validate(s);
    const auto es = spectral::eig_biorthogonal(model::build_chain(s));
    table::Table t;
    t.columns = {"index", "re", "im", "overlap_cond", "ep_degenerate"};
    for (int i = 0; i < es.dim(); ++i)
        t.add({std::to_string(i), table::fmt(es.eigenvalues(i).real()), table::fmt(es.eigenvalues(i).imag()),
               table::fmt(es.overlap_cond(i)), es.ep_degenerate[i] ? "1" : "0"});
    const std::string csv = table::to_csv(t);
    const fs::path base = fs::path(r.out) / "spectrum";
    if (r.wants("csv")) write(base.string() + ".csv", csv);
    if (r.wants("json")) {
        nlohmann::json j = spectral::to_json(es, false);
        j["spec"] = model::to_json(s);
        j["ground_index"] = spectral::ground_index(es.eigenvalues, es.norm);
        const auto loc = spectral::localization_exponents(s);
        j["kappa_hn"] = loc.kappa_hn ? nlohmann::json(*loc.kappa_hn) : nlohmann::json(nullptr);
        j["kappa_arccosh"] = loc.kappa_arccosh ? nlohmann::json(*loc.kappa_arccosh) : nlohmann::json(nullptr);
        if (s.kind != model::Kind::multiparam) {
            const auto p = ptphase::classify_regime(s);
            j["regime"] = ptphase::to_string(p.regime);
            j["max_im"] = p.max_im;
            j["g_c"] = p.g_c;
            j["regime_consistent"] = p.consistent;
        }
        write(base.string() + ".json", j.dump(2) + "\n");
    }
    if (r.wants("svg")) write(base.string() + ".svg", table::line_svg(table::parse_csv(csv), {"Spectrum", "re", "im", "", false, false}));
    return ok;
}

int cmd_figure(Run& r, const std::string& name)
{
    prepare(r);
    const auto f = figures::make(name, r.load());
    nlohmann::json index;
    index["figure"] = name;
    for (const auto& p : f.panels) {
        const std::string csv = table::to_csv(p.data);
        const std::string stem = (fs::path(r.out) / (name + "_" + p.name)).string();
        if (r.wants("csv")) write(stem + ".csv", csv);
        if (r.wants("svg")) write(stem + ".svg", figures::render_svg(p, csv));
        index["panels"].push_back({{"name", p.name}, {"columns", p.data.columns}, {"rows", p.data.rows.size()}});
    }
    if (r.wants("json")) write((fs::path(r.out) / (name + ".json")).string(), index.dump(2) + "\n");
    return ok;
}

int cmd_validate(Run& r, const std::vector<int>& only)
{
    prepare(r);
    std::vector<int> ids = only;
    if (ids.empty())
        for (int i = 1; i <= acceptance::count; ++i) ids.push_back(i);
    nlohmann::json j = nlohmann::json::array();
    bool all = true;
    for (int id : ids) {
        const auto res = acceptance::run(id);
        std::cout << acceptance::report(res) << std::flush;
        all = all && res.pass();
        j.push_back(acceptance::to_json(res));
    }
    if (r.wants("json")) write((fs::path(r.out) / "validation.json").string(), j.dump(2) + "\n");
    return all ? ok : failed;
}

int cmd_bench(Run& r)
{
    prepare(r);
    const KeyValues kv = r.load();
    bench::BenchOptions o;
    o.ns = kv.get_int_list("n_list", o.ns);
    o.repeats = kv.get_int("repeats", o.repeats);
    o.g_over_t = kv.get_double("g", o.g_over_t);
    const auto recs = bench::run_bench(o);
    const std::string csv = bench::bench_csv(recs);
    std::cout << csv;
    if (r.wants("csv")) write((fs::path(r.out) / "bench.csv").string(), csv);
    bool all = true;
    for (const auto& x : recs) all = all && x.accepted;
    if (r.wants("json")) {
        nlohmann::json j;
        for (const auto& x : recs)
            j["records"].push_back({{"N", x.n}, {"method", bench::to_string(x.method)}, {"wall_seconds_median", x.wall_seconds},
                                    {"wall_seconds_iqr", x.wall_seconds_iqr}, {"peak_mem_bytes", x.peak_mem_bytes},
                                    {"max_residual", x.max_residual}, {"accepted", x.accepted}});
        try {
            for (const auto& s : bench::scaling_fit(recs))
                j["scaling"][bench::to_string(s.method)] = {{"exponent", s.exponent}, {"ci95", s.ci95}};
        } catch (const Error& e) {
            j["scaling_error"] = e.what();
        }
        write((fs::path(r.out) / "bench.json").string(), j.dump(2) + "\n");
    }
    if (r.wants("svg")) write((fs::path(r.out) / "bench.svg").string(),
                              table::line_svg(table::parse_csv(csv), {"Eigensolver timing", "N", "wall_seconds_median", "method", true, true}));
    return all ? ok : failed;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Non-Hermitian chain spectra, quantum Fisher information and figure data"};
    app.require_subcommand(1);
    Run run;
    auto common = [&](CLI::App* c) {
        c->add_option("--config", run.config, "key = value file or flat JSON object")->check(CLI::ExistingFile);
        c->add_option("--out", run.out, "output directory");
        c->add_option("--format", run.formats, "comma separated subset of csv,json,svg");
        c->add_option("--set", run.set, "key=value override (repeatable)");
    };
    std::string which;
    std::vector<int> only;
    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues and diagnostics of one chain");
    common(spectrum);
    std::vector<CLI::App*> figs;
    for (const auto& n : figures::names()) {
        auto* c = app.add_subcommand(n, "regenerate " + n + " panel data and plots");
        common(c);
        figs.push_back(c);
    }
    auto* validate = app.add_subcommand("validate", "run the acceptance criteria");
    common(validate);
    validate->add_option("--criterion", only, "run only these criteria (repeatable)");
    auto* bench_cmd = app.add_subcommand("bench", "dense vs tridiagonal eigensolver timings");
    common(bench_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : bad_input;
    }
    try {
        if (*spectrum) return cmd_spectrum(run);
        for (auto* c : figs)
            if (*c) return cmd_figure(run, c->get_name());
        if (*validate) return cmd_validate(run, only);
        if (*bench_cmd) return cmd_bench(run);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::io || e.kind() == ErrorKind::invalid_spec || e.kind() == ErrorKind::invalid_argument ? bad_input
                                                                                                                           : failed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return bad_input;
    }
    return bad_input;
}
