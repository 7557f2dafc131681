#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nhqfi/common.hpp"
#include "nhqfi/config.hpp"

namespace nhqfi::model {

enum class Kind { hermitian, nhse, pt, multiparam };

std::string to_string(Kind k);
Kind kind_from_string(std::string_view s);

struct ChainSpec {
    int n = 1;
    double t = 1.0;
    double delta = 0.0;
    double mu = 0.0;
    double phi = 0.0;
    double g = 0.0;
    double gamma = 0.0;
    Kind kind = Kind::hermitian;

    bool nambu() const { return delta != 0.0; }
    int dim() const { return nambu() ? 2 * n : n; }
};

// Throws Error(invalid_spec) when an invariant is violated.
void validate(const ChainSpec& s);

// Flat key=value (one per line, '#' comments) and JSON, keys n,t,delta,mu,phi,g,gamma,kind.
// Spec fields read from a key/value map; absent keys keep their defaults.
ChainSpec from_map(const KeyValues& kv);
ChainSpec parse_kv(std::string_view text);
std::string to_kv(const ChainSpec& s);
nlohmann::json to_json(const ChainSpec& s);
ChainSpec from_json(const nlohmann::json& j);
ChainSpec load_spec(const std::filesystem::path& p);

// Complex banded matrix stored as diagonals keyed by offset (col - row).
// Nambu-doubled chains carry bands at 0, ±1, ±(N-1), ±N, ±(N+1).
class BandedOperator {
public:
    BandedOperator() = default;
    explicit BandedOperator(int dim);

    int dim() const { return dim_; }
    void add(int row, int col, cplx v);
    cplx at(int row, int col) const;

    const CVec* band(int offset) const;
    CVec diag() const { return band_or_zero(0); }
    CVec upper() const { return band_or_zero(1); }
    CVec lower() const { return band_or_zero(-1); }
    std::vector<int> offsets() const;
    bool is_tridiagonal() const;
    bool is_hermitian(double tol = 1e-14) const;

    CMat dense() const;
    CVec apply(const CVec& x) const;
    BandedOperator adjoint() const;
    double norm_fro() const;

    BandedOperator& operator+=(const BandedOperator& o);
    BandedOperator& operator*=(cplx s);

private:
    CVec band_or_zero(int offset) const;

    int dim_ = 0;
    std::map<int, CVec> bands_;
};

BandedOperator operator+(BandedOperator a, const BandedOperator& b);
BandedOperator operator*(cplx s, BandedOperator a);

BandedOperator build_chain(const ChainSpec& s);

// Same as build_chain but with a complex gain/loss amplitude on the
// staggered diagonal; used for contours in the complex g plane.
BandedOperator build_chain_complex_g(const ChainSpec& s, cplx g);

struct BdgBlock {
    int m = 1;
    double k = 0.0;
    double xi = 0.0;
    double delta_k = 0.0;
    int stag = 1;
    Eigen::Matrix2cd block;
    double energy = 0.0;  // E_k
};

BdgBlock bdg_block(const ChainSpec& s, int m);

double pt_residual(const BandedOperator& h, int n);

enum class Parity { even, odd };
Eigen::Matrix2cd transfer_matrix(cplx e, const ChainSpec& s, Parity p);
// T_even * T_odd
Eigen::Matrix2cd unit_cell_transfer(cplx e, const ChainSpec& s);

// Exact partial derivative dH/d(param) of build_chain.
enum class Param { mu, phi, g, gamma, t, delta };
std::string to_string(Param p);
Param param_from_string(std::string_view s);
double get(const ChainSpec& s, Param p);
ChainSpec with(ChainSpec s, Param p, double v);
BandedOperator derivative(const ChainSpec& s, Param p);

}  // namespace nhqfi::model
