// Shared matrix aliases, error types and seeding helpers.
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gnnloc {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// Invalid user-facing configuration (counts, thresholds, probabilities).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Caller broke a shape or structural precondition.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Numerical failure: non-finite loss, eigensolver non-convergence.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_shape(bool ok, const char* what) {
    if (!ok) throw ContractError(std::string("shape mismatch: ") + what);
}

}  // namespace detail

/// splitmix64 finalizer. Used to derive independent child seeds from a
/// master seed so that cells and trials never share a stream.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace gnnloc
