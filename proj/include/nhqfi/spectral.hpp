#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nhqfi/common.hpp"
#include "nhqfi/model.hpp"

namespace nhqfi::spectral {

// Columns of right/left are paired by index. For pairs with
// overlap_cond >= ep_threshold, <L_n|R_n> = 1; flagged pairs keep unit-norm L
// with the phase of <L|R> made real-positive.
struct BiorthogonalEigensystem {
    CVec eigenvalues;
    CMat right;
    CMat left;
    RVec overlap_cond;      // |<L|R>| with unit-norm L and R
    RVec log_overlap_cond;  // natural log, finite even below 1e-300
    std::vector<bool> ep_degenerate;
    std::string gauge = "max-component-real-positive";
    std::string method;
    double norm = 0.0;  // infinity norm of the decomposed operator

    int dim() const { return static_cast<int>(eigenvalues.size()); }
    double min_overlap_cond() const { return overlap_cond.size() ? overlap_cond.minCoeff() : 1.0; }
};

constexpr double ep_threshold = 1e-8;

BiorthogonalEigensystem eig_biorthogonal(const model::BandedOperator& h);

// Eigenvalues only, through the same route selection.
CVec eigenvalues(const model::BandedOperator& h);

// Smallest real part, ties (1e-12 * norm) by smallest |Im|, then lowest index.
int ground_index(const CVec& eigenvalues, double norm);

double inf_norm(const model::BandedOperator& h);

nlohmann::json to_json(const BiorthogonalEigensystem& es, bool with_vectors);

// Greedy nearest-distance conjugate matching of eig(H) against eig(H^dagger):
// returns perm with conj(adj[perm[i]]) ~ ev[i]. Throws Error(pairing) when a
// match exceeds tol.
std::vector<int> conjugate_pairing(const CVec& ev, const CVec& adj, double tol);

struct SkinModePair {
    double kappa = 0;
    int n = 0;
    RVec psi_r;
    RVec psi_l;
    double overlap_sq_direct = 0;
    double log_overlap_sq_direct = 0;
    double overlap_sq_exact = 0;  // printed closed form, for comparison
    double log_overlap_sq_exact = 0;
    bool discrepancy = false;     // closed form differs from direct sum
    double discrepancy_log_ratio = 0;  // ln(direct / closed form)
};

SkinModePair skin_modes(double kappa, int n);

struct LocalizationExponents {
    std::optional<double> kappa_arccosh;
    std::optional<double> kappa_hn;
    std::string diagnostic;
};

LocalizationExponents localization_exponents(double t, double g, double gamma);
LocalizationExponents localization_exponents(const model::ChainSpec& s);

double participation_ratio(const CVec& v);

struct LevelStatistics {
    std::vector<double> spacings;   // unit mean
    std::vector<double> bin_edges;  // histogram over [0, s_max]
    std::vector<double> density;
    double ks_goe = 0;
    double ks_poisson = 0;
};

double goe_density(double s);
double poisson_density(double s);
LevelStatistics level_spacings(const CVec& eigenvalues, double tol_imag, int bins = 20);

struct EpCandidate {
    int m = 0;
    int n = 0;
    double gap = 0;
    double coalescence = 0;  // 1 - |<R_m|R_n>|
    double overlap_cond = 0;
    bool ep2 = false;
};

std::vector<EpCandidate> ep_proximity(const BiorthogonalEigensystem& es, double window);

}  // namespace nhqfi::spectral
