#pragma once

#include <string>
#include <vector>

#include "nhqfi/fit.hpp"
#include "nhqfi/model.hpp"

namespace nhqfi::bench {

enum class Method { dense_general, banded_specialized };
std::string to_string(Method m);

struct BenchmarkRecord {
    int n = 0;
    Method method = Method::dense_general;
    double wall_seconds = 0;      // median over repeats
    double wall_seconds_iqr = 0;
    std::size_t peak_mem_bytes = 0;  // working-set estimate of the solver
    double max_residual = 0;      // ||H v - E v|| / (||H|| ||v||) over sampled pairs
    double max_disagreement = 0;  // vs the other method, / ||H||
    bool accepted = false;        // residual and cross-method agreement both pass
    int repeats = 0;
};

struct BenchOptions {
    std::vector<int> ns = {125, 250, 500, 1000};
    int repeats = 5;
    double g_over_t = 0.5;        // pt chain, t = 1
    double residual_tol = 1e-8;
    double agreement_tol = 1e-8;  // relative to ||H||
    int sampled_pairs = 8;
};

model::ChainSpec bench_spec(int n, double g_over_t);

// Full spectrum by the dense general solver (Hessenberg reduction + QR) and
// by the tridiagonal path (QL on the symmetrized form + Aberth polishing).
CVec solve(const model::ChainSpec& s, Method m);

// Runs are sequential, one thread, so timings are not perturbed. A record is
// accepted only when both spectra agree as multisets within
// agreement_tol ||H|| and sampled residuals stay below residual_tol.
std::vector<BenchmarkRecord> run_bench(const BenchOptions& opt, const std::vector<Method>& methods = {
                                           Method::dense_general, Method::banded_specialized});

struct Scaling {
    Method method = Method::dense_general;
    fit::LinearFit loglog;
    double exponent = 0;
    double ci95 = 0;  // half-width, Student t
};

// Needs >= 4 distinct sizes per method among accepted records.
std::vector<Scaling> scaling_fit(const std::vector<BenchmarkRecord>& records);

// Max distance of the best multiset matching between the two spectra,
// divided by ||H||_inf. Throws Error(pairing) above tol.
double spectra_agreement(const model::ChainSpec& s, double tol);

std::string bench_csv(const std::vector<BenchmarkRecord>& records);

}  // namespace nhqfi::bench
