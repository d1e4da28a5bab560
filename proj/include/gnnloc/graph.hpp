// Thresholded connectivity graph, augmented normalized adjacency and
// sparsified range features.
#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "gnnloc/common.hpp"
#include "gnnloc/scene.hpp"

namespace gnnloc {

/// Keeps pairs with x_ij <= t_h (boundary counts as an edge). The diagonal
/// is always 0: the self-loop is added once, by augment_normalize.
inline Matrix threshold_adjacency(const DistanceMatrix& x, double t_h) {
    if (!(t_h > 0.0)) throw ConfigError("threshold must be positive");
    detail::require_shape(x.rows() == x.cols(), "distance matrix must be square");
    Matrix a = (x.array() <= t_h).cast<double>().matrix();
    a.diagonal().setZero();
    return a;
}

/// Row sums of a 0/1 adjacency.
inline Vector degrees(const Matrix& adjacency) { return adjacency.rowwise().sum(); }

/// D^-1/2 (A + I) D^-1/2 with D the degree matrix of A + I.
inline Matrix augment_normalize(const Matrix& adjacency) {
    detail::require_shape(adjacency.rows() == adjacency.cols(), "adjacency must be square");
    const auto n = adjacency.rows();
    const Vector inv_sqrt = (degrees(adjacency).array() + 1.0).rsqrt().matrix();
    Matrix out = adjacency + Matrix::Identity(n, n);
    out = inv_sqrt.asDiagonal() * out * inv_sqrt.asDiagonal();
    return out;
}

/// D^-1 (A + I): plain neighbourhood averaging. Not symmetric; offered as
/// an alternative propagation operator for comparison runs.
inline Matrix augment_row_normalize(const Matrix& adjacency) {
    detail::require_shape(adjacency.rows() == adjacency.cols(), "adjacency must be square");
    const auto n = adjacency.rows();
    const Vector inv = (degrees(adjacency).array() + 1.0).inverse().matrix();
    return inv.asDiagonal() * (adjacency + Matrix::Identity(n, n));
}

enum class Propagation { Symmetric, RandomWalk };

inline std::string_view to_string(Propagation p) { return p == Propagation::Symmetric ? "symmetric" : "random_walk"; }

inline Propagation parse_propagation(std::string_view s) {
    if (s == "symmetric") return Propagation::Symmetric;
    if (s == "random_walk") return Propagation::RandomWalk;
    throw ConfigError("unknown propagation '" + std::string(s) + "' (expected symmetric|random_walk)");
}

/// Hadamard product A (.) X.
inline Matrix sparse_features(const Matrix& adjacency, const DistanceMatrix& x) {
    detail::require_shape(adjacency.rows() == x.rows() && adjacency.cols() == x.cols(),
                          "adjacency and distance matrix differ");
    return adjacency.cwiseProduct(x);
}

/// Divides every row by its L1 norm; all-zero rows pass through.
inline Matrix row_normalize(const Matrix& features) {
    Matrix out = features;
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        const double l1 = out.row(i).cwiseAbs().sum();
        if (l1 > 0.0) out.row(i) /= l1;
    }
    return out;
}

inline Matrix propagate(const Matrix& norm_adjacency, const Matrix& h) {
    detail::require_shape(norm_adjacency.cols() == h.rows(), "propagate: A.cols != H.rows");
    return norm_adjacency * h;
}

/// Row-wise evaluation of the propagation as own-information plus
/// neighbour aggregation:
///   h_i' = h_i / (d_i + 1) + sum_j a_ij h_j / sqrt((d_i + 1)(d_j + 1))
inline Matrix propagate_decomposed(const Matrix& adjacency, const Vector& degree, const Matrix& h) {
    detail::require_shape(adjacency.rows() == h.rows() && adjacency.cols() == h.rows() &&
                              degree.size() == h.rows(),
                          "propagate_decomposed: inputs disagree on N");
    const auto n = h.rows();
    Matrix out = Matrix::Zero(n, h.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
        out.row(i) = h.row(i) / (degree(i) + 1.0);
        for (Eigen::Index j = 0; j < n; ++j) {
            if (adjacency(i, j) != 0.0)
                out.row(i) += adjacency(i, j) / std::sqrt((degree(i) + 1.0) * (degree(j) + 1.0)) * h.row(j);
        }
    }
    return out;
}

/// Everything the regressor consumes, derived from one measured matrix.
struct ThresholdedGraph {
    Matrix adjacency;
    Matrix norm_adjacency;
    Matrix features;  // A (.) X, before row normalization
    double threshold = 0.0;
    Propagation propagation = Propagation::Symmetric;

    std::size_t size() const noexcept { return static_cast<std::size_t>(adjacency.rows()); }
};

inline ThresholdedGraph build_graph(const DistanceMatrix& x, double t_h,
                                    Propagation propagation = Propagation::Symmetric) {
    ThresholdedGraph g;
    g.threshold = t_h;
    g.propagation = propagation;
    g.adjacency = threshold_adjacency(x, t_h);
    g.norm_adjacency = propagation == Propagation::Symmetric ? augment_normalize(g.adjacency)
                                                             : augment_row_normalize(g.adjacency);
    g.features = sparse_features(g.adjacency, x);
    return g;
}

}  // namespace gnnloc
