#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace nhqfi {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

enum class ErrorKind {
    invalid_spec,
    invalid_argument,
    ep_degenerate,
    pairing,
    near_degenerate,
    regime,
    tracking,
    no_transition,
    io,
};

const char* to_string(ErrorKind k);

// All recoverable failures surface as this type; kind() tells callers which
// diagnostic fired without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::invalid_spec: return "invalid spec";
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::ep_degenerate: return "EP-degenerate";
    case ErrorKind::pairing: return "pairing failure";
    case ErrorKind::near_degenerate: return "near-degenerate";
    case ErrorKind::regime: return "regime";
    case ErrorKind::tracking: return "tracking ambiguity";
    case ErrorKind::no_transition: return "no transition";
    case ErrorKind::io: return "io";
    }
    return "error";
}

constexpr double pi = 3.14159265358979323846;

}  // namespace nhqfi
