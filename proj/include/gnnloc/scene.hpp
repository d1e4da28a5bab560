// Random planar network scenes and the LOS/NLOS ranging model.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "gnnloc/common.hpp"

namespace gnnloc {

/// Node layout on a square area. Rows [0, n_anchors) are anchors, the
/// remaining rows are agents.
struct Scene {
    Matrix positions;  // N x 2, meters
    std::size_t n_anchors = 0;
    double area_side = 5.0;

    std::size_t size() const noexcept { return static_cast<std::size_t>(positions.rows()); }
    std::size_t n_agents() const noexcept { return size() - n_anchors; }

    auto anchors() const { return positions.topRows(static_cast<Eigen::Index>(n_anchors)); }
    auto agents() const { return positions.bottomRows(static_cast<Eigen::Index>(n_agents())); }
};

struct NoiseParams {
    double sigma_sq = 0.25;  // LOS Gaussian variance, m^2
    double p_nlos = 0.3;     // Bernoulli NLOS occurrence
    double nlos_max = 10.0;  // NLOS bias ~ U[0, nlos_max]

    void validate() const {
        if (!(sigma_sq >= 0.0)) throw ConfigError("sigma_sq must be >= 0");
        if (!(p_nlos >= 0.0 && p_nlos <= 1.0)) throw ConfigError("p_nlos must lie in [0, 1]");
        if (!(nlos_max >= 0.0)) throw ConfigError("nlos_max must be >= 0");
    }
};

/// Symmetric, zero-diagonal N x N range matrix.
using DistanceMatrix = Matrix;

inline Scene generate_scene(std::size_t n, std::size_t n_anchors, double area_side, Rng& rng) {
    if (n_anchors < 1 || n_anchors >= n)
        throw ConfigError("need 1 <= n_anchors < n (got n_anchors=" + std::to_string(n_anchors) +
                          ", n=" + std::to_string(n) + ")");
    if (!(area_side > 0.0)) throw ConfigError("area_side must be positive");

    std::uniform_real_distribution<double> coord(0.0, area_side);
    Scene scene;
    scene.positions.resize(static_cast<Eigen::Index>(n), 2);
    scene.n_anchors = n_anchors;
    scene.area_side = area_side;
    for (Eigen::Index i = 0; i < scene.positions.rows(); ++i) {
        scene.positions(i, 0) = coord(rng);
        scene.positions(i, 1) = coord(rng);
    }
    return scene;
}

inline DistanceMatrix true_distances(const Scene& scene) {
    const auto n = scene.positions.rows();
    DistanceMatrix d = DistanceMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = (scene.positions.row(i) - scene.positions.row(j)).norm();
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return d;
}

/// One realisation of the additive ranging error n = n_los + b * n_nlos.
struct RangeError {
    double los = 0.0;
    bool nlos = false;
    double bias = 0.0;

    double total() const noexcept { return nlos ? los + bias : los; }
};

/// Draws RangeError samples. Draw order per sample is fixed (LOS, switch,
/// bias) so streams are reproducible regardless of which branch fires.
class RangeErrorSampler {
public:
    explicit RangeErrorSampler(const NoiseParams& noise)
        : los_(0.0, std::sqrt(validated(noise).sigma_sq)),
          has_los_(noise.sigma_sq > 0.0),
          switch_(noise.p_nlos),
          bias_(0.0, noise.nlos_max) {}

    RangeError operator()(Rng& rng) {
        RangeError e;
        e.los = has_los_ ? los_(rng) : 0.0;
        e.nlos = switch_(rng);
        e.bias = bias_(rng);
        return e;
    }

private:
    static const NoiseParams& validated(const NoiseParams& noise) {
        noise.validate();
        return noise;
    }

    std::normal_distribution<double> los_;
    bool has_los_;
    std::bernoulli_distribution switch_;
    std::uniform_real_distribution<double> bias_;
};

/// One draw per unordered pair, mirrored across the diagonal, clamped at zero.
inline DistanceMatrix measure_distances(const Scene& scene, const NoiseParams& noise, Rng& rng) {
    RangeErrorSampler sample(noise);
    const auto n = scene.positions.rows();
    DistanceMatrix x = DistanceMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double d = (scene.positions.row(i) - scene.positions.row(j)).norm();
            const double v = std::max(0.0, d + sample(rng).total());
            x(i, j) = v;
            x(j, i) = v;
        }
    }
    return x;
}

}  // namespace gnnloc
