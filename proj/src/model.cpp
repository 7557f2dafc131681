#include "nhqfi/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>

#include "nhqfi/config.hpp"

namespace nhqfi::model {

std::string to_string(Kind k)
{
    switch (k) {
    case Kind::hermitian: return "hermitian";
    case Kind::nhse: return "nhse";
    case Kind::pt: return "pt";
    case Kind::multiparam: return "multiparam";
    }
    return "?";
}

Kind kind_from_string(std::string_view s)
{
    if (s == "hermitian") return Kind::hermitian;
    if (s == "nhse") return Kind::nhse;
    if (s == "pt") return Kind::pt;
    if (s == "multiparam") return Kind::multiparam;
    throw Error(ErrorKind::invalid_spec, "unknown kind '" + std::string(s) + "'");
}

void validate(const ChainSpec& s)
{
    auto bad = [](const std::string& m) { throw Error(ErrorKind::invalid_spec, m); };
    for (double v : {s.t, s.delta, s.mu, s.phi, s.g, s.gamma})
        if (!std::isfinite(v)) bad("non-finite parameter");
    if (s.n < 1) bad("N must be >= 1");
    if (!(s.t > 0)) bad("t must be > 0");
    if (s.delta < 0) bad("delta must be >= 0");
    if ((s.kind == Kind::pt || s.kind == Kind::multiparam) && s.g < 0) bad("g must be >= 0");
    if (s.kind == Kind::nhse) {
        if (s.gamma < 0) bad("gamma must be >= 0");
        if (s.gamma >= s.t) bad("nhse requires gamma < t (got gamma/t = " + std::to_string(s.gamma / s.t) + ")");
    }
}

ChainSpec from_map(const KeyValues& kv)
{
    ChainSpec s;
    s.n = kv.get_int("n", s.n);
    s.t = kv.get_double("t", s.t);
    s.delta = kv.get_double("delta", s.delta);
    s.mu = kv.get_double("mu", s.mu);
    s.phi = kv.get_double("phi", s.phi);
    s.g = kv.get_double("g", s.g);
    s.gamma = kv.get_double("gamma", s.gamma);
    if (kv.has("kind")) s.kind = kind_from_string(kv.get_string("kind", ""));
    return s;
}

ChainSpec parse_kv(std::string_view text) { return from_map(KeyValues::parse(text)); }

std::string to_kv(const ChainSpec& s)
{
    std::ostringstream os;
    os.precision(17);
    os << "n = " << s.n << "\n"
       << "t = " << s.t << "\n"
       << "delta = " << s.delta << "\n"
       << "mu = " << s.mu << "\n"
       << "phi = " << s.phi << "\n"
       << "g = " << s.g << "\n"
       << "gamma = " << s.gamma << "\n"
       << "kind = " << to_string(s.kind) << "\n";
    return os.str();
}

nlohmann::json to_json(const ChainSpec& s)
{
    return {{"n", s.n}, {"t", s.t}, {"delta", s.delta}, {"mu", s.mu}, {"phi", s.phi},
            {"g", s.g}, {"gamma", s.gamma}, {"kind", to_string(s.kind)}};
}

ChainSpec from_json(const nlohmann::json& j) { return from_map(KeyValues::from_json(j)); }

ChainSpec load_spec(const std::filesystem::path& p) { return from_map(KeyValues::load(p)); }

// ---------------------------------------------------------------- BandedOperator

BandedOperator::BandedOperator(int dim) : dim_(dim)
{
    if (dim < 1) throw Error(ErrorKind::invalid_argument, "operator dimension must be >= 1");
}

void BandedOperator::add(int row, int col, cplx v)
{
    const int k = col - row;
    auto it = bands_.find(k);
    if (it == bands_.end()) it = bands_.emplace(k, CVec::Zero(dim_ - std::abs(k))).first;
    it->second(k >= 0 ? row : col) += v;
}

cplx BandedOperator::at(int row, int col) const
{
    const int k = col - row;
    auto it = bands_.find(k);
    if (it == bands_.end()) return 0.0;
    return it->second(k >= 0 ? row : col);
}

const CVec* BandedOperator::band(int offset) const
{
    auto it = bands_.find(offset);
    return it == bands_.end() ? nullptr : &it->second;
}

CVec BandedOperator::band_or_zero(int offset) const
{
    if (const CVec* b = band(offset)) return *b;
    return CVec::Zero(std::max(0, dim_ - std::abs(offset)));
}

std::vector<int> BandedOperator::offsets() const
{
    std::vector<int> out;
    for (const auto& [k, _] : bands_) out.push_back(k);
    return out;
}

bool BandedOperator::is_tridiagonal() const
{
    for (const auto& [k, b] : bands_)
        if (std::abs(k) > 1 && b.cwiseAbs().maxCoeff() != 0.0) return false;
    return true;
}

bool BandedOperator::is_hermitian(double tol) const
{
    for (const auto& [k, b] : bands_) {
        if (k == 0) {
            if (b.imag().cwiseAbs().maxCoeff() > tol) return false;
            continue;
        }
        CVec mirror = band_or_zero(-k);
        if ((b - mirror.conjugate()).cwiseAbs().maxCoeff() > tol) return false;
    }
    return true;
}

CMat BandedOperator::dense() const
{
    CMat m = CMat::Zero(dim_, dim_);
    for (const auto& [k, b] : bands_)
        for (Eigen::Index i = 0; i < b.size(); ++i) {
            if (k >= 0) m(i, i + k) = b(i);
            else m(i - k, i) = b(i);
        }
    return m;
}

CVec BandedOperator::apply(const CVec& x) const
{
    CVec y = CVec::Zero(dim_);
    for (const auto& [k, b] : bands_) {
        const Eigen::Index len = b.size();
        if (k >= 0) y.head(len) += b.cwiseProduct(x.segment(k, len));
        else y.segment(-k, len) += b.cwiseProduct(x.head(len));
    }
    return y;
}

BandedOperator BandedOperator::adjoint() const
{
    BandedOperator a(dim_);
    for (const auto& [k, b] : bands_) a.bands_[-k] = b.conjugate();
    return a;
}

double BandedOperator::norm_fro() const
{
    double s = 0;
    for (const auto& [_, b] : bands_) s += b.squaredNorm();
    return std::sqrt(s);
}

BandedOperator& BandedOperator::operator+=(const BandedOperator& o)
{
    if (o.dim_ != dim_) throw Error(ErrorKind::invalid_argument, "dimension mismatch");
    for (const auto& [k, b] : o.bands_) {
        auto it = bands_.find(k);
        if (it == bands_.end()) bands_.emplace(k, b);
        else it->second += b;
    }
    return *this;
}

BandedOperator& BandedOperator::operator*=(cplx s)
{
    for (auto& [_, b] : bands_) b *= s;
    return *this;
}

BandedOperator operator+(BandedOperator a, const BandedOperator& b) { return a += b; }
BandedOperator operator*(cplx s, BandedOperator a) { return a *= s; }

// ---------------------------------------------------------------- construction

namespace {

using Entry = std::tuple<int, int, cplx>;

struct Parts {
    std::vector<Entry> h;  // single-particle block
    std::vector<Entry> d;  // pairing block D (particle-hole)
};

double stagger(int j0) { return (j0 % 2 == 0) ? -1.0 : 1.0; }  // (-1)^j with j = j0 + 1

BandedOperator assemble(const ChainSpec& s, const Parts& p)
{
    const int n = s.n;
    BandedOperator op(s.dim());
    for (const auto& [i, j, v] : p.h) {
        op.add(i, j, v);
        if (s.nambu()) op.add(n + j, n + i, -v);
    }
    if (s.nambu())
        for (const auto& [i, j, v] : p.d) {
            op.add(i, n + j, v);
            op.add(n + j, i, std::conj(v));
        }
    if (!s.nambu()) op.add(0, 0, 0.0);  // keep the main diagonal materialized
    return op;
}

void hopping(Parts& p, int n, cplx fwd, cplx bwd)
{
    for (int j = 0; j + 1 < n; ++j) {
        if (fwd != 0.0) p.h.emplace_back(j, j + 1, fwd);
        if (bwd != 0.0) p.h.emplace_back(j + 1, j, bwd);
    }
}

void pairing(Parts& p, int n, double delta)
{
    for (int j = 0; j + 1 < n; ++j) {
        p.d.emplace_back(j, j + 1, delta);
        p.d.emplace_back(j + 1, j, -delta);
    }
}

Parts chain_parts(const ChainSpec& s, cplx g)
{
    Parts p;
    const int n = s.n;
    switch (s.kind) {
    case Kind::hermitian:
        hopping(p, n, s.t, s.t);
        for (int j = 0; j < n; ++j) p.h.emplace_back(j, j, -s.mu);
        break;
    case Kind::nhse:
        hopping(p, n, s.t + s.gamma, s.t - s.gamma);
        break;
    case Kind::pt:
        hopping(p, n, s.t, s.t);
        for (int j = 0; j < n; ++j) p.h.emplace_back(j, j, -s.mu + cplx(0, 1) * g * stagger(j));
        break;
    case Kind::multiparam:
        hopping(p, n, s.t * std::polar(1.0, s.phi), s.t * std::polar(1.0, -s.phi));
        for (int j = 0; j < n; ++j) p.h.emplace_back(j, j, -s.mu + cplx(0, 1) * g * stagger(j));
        break;
    }
    pairing(p, n, s.delta);
    return p;
}

}  // namespace

BandedOperator build_chain(const ChainSpec& s)
{
    validate(s);
    return assemble(s, chain_parts(s, s.g));
}

BandedOperator build_chain_complex_g(const ChainSpec& s, cplx g)
{
    validate(s);
    if (s.kind != Kind::pt && s.kind != Kind::multiparam)
        throw Error(ErrorKind::invalid_argument, "complex gain requires kind pt or multiparam");
    return assemble(s, chain_parts(s, g));
}

BdgBlock bdg_block(const ChainSpec& s, int m)
{
    validate(s);
    if (s.kind == Kind::nhse) throw Error(ErrorKind::invalid_argument, "bdg_block: nhse chains have no BdG block form");
    if (m < 1 || m > s.n) throw Error(ErrorKind::invalid_argument, "bdg_block: mode index out of range");
    BdgBlock b;
    b.m = m;
    b.k = m * pi / (s.n + 1);
    b.xi = 2 * s.t * std::cos(b.k) + s.mu;
    b.delta_k = 2 * s.delta * std::sin(b.k);
    b.stag = (m % 2 == 0) ? 1 : -1;
    const double x = b.xi + s.g * b.stag;
    // Hermitian 2x2 form whose eigenvalues are exactly +-E_k.
    b.block << x, cplx(0, b.delta_k), cplx(0, -b.delta_k), -x;
    b.energy = std::hypot(x, b.delta_k);
    return b;
}

double pt_residual(const BandedOperator& h, int n)
{
    if (h.dim() != n) throw Error(ErrorKind::invalid_argument, "pt_residual expects the single-particle block (dim = N)");
    const CMat a = h.dense();
    double s = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += std::norm(std::conj(a(n - 1 - i, n - 1 - j)) - a(i, j));
    return std::sqrt(s);
}

Eigen::Matrix2cd transfer_matrix(cplx e, const ChainSpec& s, Parity p)
{
    if (!(s.t > 0)) throw Error(ErrorKind::invalid_argument, "transfer matrix requires t > 0");
    const double sign = (p == Parity::even) ? 1.0 : -1.0;
    Eigen::Matrix2cd m;
    m << (e - cplx(0, 1) * s.g * sign) / s.t, -1.0, 1.0, 0.0;
    return m;
}

Eigen::Matrix2cd unit_cell_transfer(cplx e, const ChainSpec& s)
{
    return transfer_matrix(e, s, Parity::even) * transfer_matrix(e, s, Parity::odd);
}

// ---------------------------------------------------------------- derivatives

std::string to_string(Param p)
{
    switch (p) {
    case Param::mu: return "mu";
    case Param::phi: return "phi";
    case Param::g: return "g";
    case Param::gamma: return "gamma";
    case Param::t: return "t";
    case Param::delta: return "delta";
    }
    return "?";
}

Param param_from_string(std::string_view s)
{
    for (Param p : {Param::mu, Param::phi, Param::g, Param::gamma, Param::t, Param::delta})
        if (s == to_string(p)) return p;
    throw Error(ErrorKind::invalid_argument, "unknown parameter '" + std::string(s) + "'");
}

double get(const ChainSpec& s, Param p)
{
    switch (p) {
    case Param::mu: return s.mu;
    case Param::phi: return s.phi;
    case Param::g: return s.g;
    case Param::gamma: return s.gamma;
    case Param::t: return s.t;
    case Param::delta: return s.delta;
    }
    return 0;
}

ChainSpec with(ChainSpec s, Param p, double v)
{
    switch (p) {
    case Param::mu: s.mu = v; break;
    case Param::phi: s.phi = v; break;
    case Param::g: s.g = v; break;
    case Param::gamma: s.gamma = v; break;
    case Param::t: s.t = v; break;
    case Param::delta: s.delta = v; break;
    }
    return s;
}

BandedOperator derivative(const ChainSpec& s, Param p)
{
    validate(s);
    Parts d;
    const int n = s.n;
    const cplx i1(0, 1);
    switch (p) {
    case Param::mu:
        if (s.kind != Kind::nhse)
            for (int j = 0; j < n; ++j) d.h.emplace_back(j, j, -1.0);
        break;
    case Param::phi:
        if (s.kind == Kind::multiparam)
            hopping(d, n, i1 * s.t * std::polar(1.0, s.phi), -i1 * s.t * std::polar(1.0, -s.phi));
        break;
    case Param::g:
        if (s.kind == Kind::pt || s.kind == Kind::multiparam)
            for (int j = 0; j < n; ++j) d.h.emplace_back(j, j, i1 * stagger(j));
        break;
    case Param::gamma:
        if (s.kind == Kind::nhse) hopping(d, n, 1.0, -1.0);
        break;
    case Param::t:
        if (s.kind == Kind::multiparam) hopping(d, n, std::polar(1.0, s.phi), std::polar(1.0, -s.phi));
        else hopping(d, n, 1.0, 1.0);
        break;
    case Param::delta:
        if (!s.nambu())
            throw Error(ErrorKind::invalid_argument, "d/d(delta) at delta = 0 changes the matrix dimension");
        pairing(d, n, 1.0);
        break;
    }
    return assemble(s, d);
}

}  // namespace nhqfi::model
