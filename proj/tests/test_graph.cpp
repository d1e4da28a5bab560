#include <gtest/gtest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "gnnloc/graph.hpp"
#include "gnnloc/scene.hpp"

using namespace gnnloc;

namespace {

Matrix random_adjacency(Eigen::Index n, double p, Rng& rng) {
    std::bernoulli_distribution edge(p);
    Matrix a = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) a(i, j) = a(j, i) = edge(rng) ? 1.0 : 0.0;
    return a;
}

Matrix random_matrix(Eigen::Index r, Eigen::Index c, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = g(rng);
    return m;
}

}  // namespace

TEST(Threshold, StrictlyAboveIsCut) {
    Matrix x(2, 2);
    x << 0, 1.5, 1.5, 0;
    EXPECT_EQ(threshold_adjacency(x, 1.2)(0, 1), 0.0);
}

TEST(Threshold, BoundaryIsEdge) {
    Matrix x(2, 2);
    x << 0, 1.2, 1.2, 0;
    const auto a = threshold_adjacency(x, 1.2);
    EXPECT_EQ(a(0, 1), 1.0);
    EXPECT_EQ(a(1, 0), 1.0);
}

TEST(Threshold, DiagonalAlwaysZero) {
    Matrix x = Matrix::Zero(3, 3);
    const auto a = threshold_adjacency(x, 1.0);
    EXPECT_TRUE(a.diagonal().isZero(0.0));
    EXPECT_EQ(a.sum(), 6.0);
}

TEST(Threshold, SaturatesToComplete) {
    Rng rng(1);
    const auto s = generate_scene(30, 3, 5.0, rng);
    const auto x = measure_distances(s, {0.25, 0.3, 10.0}, rng);
    const auto a = threshold_adjacency(x, x.maxCoeff());
    EXPECT_EQ(a.sum(), 30.0 * 29.0);
}

TEST(Threshold, RejectsNonPositive) {
    Matrix x = Matrix::Zero(2, 2);
    EXPECT_THROW(threshold_adjacency(x, 0.0), ConfigError);
    EXPECT_THROW(threshold_adjacency(x, -1.0), ConfigError);
}

TEST(AugmentNormalize, Pair) {
    Matrix a(2, 2);
    a << 0, 1, 1, 0;
    const auto n = augment_normalize(a);
    for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index j = 0; j < 2; ++j) EXPECT_NEAR(n(i, j), 0.5, 1e-15);
}

TEST(AugmentNormalize, Isolated) {
    const auto n = augment_normalize(Matrix::Zero(1, 1));
    EXPECT_DOUBLE_EQ(n(0, 0), 1.0);
}

TEST(AugmentNormalize, ThreeNodeChain) {
    // D~ = diag(2, 3, 2)
    Matrix a(3, 3);
    a << 0, 1, 0, 1, 0, 1, 0, 1, 0;
    const auto n = augment_normalize(a);
    EXPECT_NEAR(n(0, 0), 0.5, 1e-15);
    EXPECT_NEAR(n(1, 1), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(n(0, 1), 1.0 / std::sqrt(6.0), 1e-15);
    EXPECT_NEAR(n(1, 0), 1.0 / std::sqrt(6.0), 1e-15);
    EXPECT_EQ(n(0, 2), 0.0);
}

TEST(AugmentNormalize, SymmetricNonnegativeSpectrumInRange) {
    Rng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_adjacency(12, 0.3, rng);
        const auto n = augment_normalize(a);
        EXPECT_TRUE(n.isApprox(n.transpose(), 1e-15));
        EXPECT_GE(n.minCoeff(), 0.0);
        const Eigen::MatrixXd lap = Matrix::Identity(12, 12) - n;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
        EXPECT_GE(es.eigenvalues().minCoeff(), -1e-9);
        EXPECT_LT(es.eigenvalues().maxCoeff(), 2.0 + 1e-9);
    }
}

TEST(RowAveraging, RowsSumToOne) {
    Rng rng(3);
    const auto a = random_adjacency(15, 0.2, rng);
    const auto p = augment_row_normalize(a);
    for (Eigen::Index i = 0; i < 15; ++i) EXPECT_NEAR(p.row(i).sum(), 1.0, 1e-14);
}

TEST(SparseFeatures, ZeroMaskAnnihilates) {
    Matrix x = Matrix::Constant(4, 4, 2.0);
    EXPECT_TRUE(sparse_features(Matrix::Zero(4, 4), x).isZero(0.0));
}

TEST(SparseFeatures, FullMaskKeepsOffDiagonal) {
    Rng rng(6);
    const auto s = generate_scene(10, 2, 5.0, rng);
    const auto x = measure_distances(s, {0.1, 0.1, 10.0}, rng);
    Matrix full = Matrix::Ones(10, 10);
    full.diagonal().setZero();
    EXPECT_TRUE(sparse_features(full, x) == x);
}

TEST(SparseFeatures, RetainedEntriesBelowThreshold) {
    Rng rng(7);
    const auto s = generate_scene(200, 20, 5.0, rng);
    const auto x = measure_distances(s, {0.25, 0.3, 10.0}, rng);
    const auto g = build_graph(x, 1.2);
    EXPECT_LE(g.features.maxCoeff(), 1.2);
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            if (g.features(i, j) != 0.0) EXPECT_EQ(g.adjacency(i, j), 1.0);
}

TEST(SparseFeatures, ShapeMismatch) {
    EXPECT_THROW(sparse_features(Matrix::Zero(2, 2), Matrix::Zero(3, 3)), ContractError);
}

TEST(SparseFeatures, NoiseTruncation) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        Rng rng(seed);
        const auto s = generate_scene(300, 30, 5.0, rng);
        const auto x = measure_distances(s, {0.25, 0.3, 10.0}, rng);
        const auto d = true_distances(s);
        const auto g = build_graph(x, 1.2);
        for (Eigen::Index i = 0; i < x.rows(); ++i)
            for (Eigen::Index j = 0; j < x.cols(); ++j)
                if (g.features(i, j) != 0.0) EXPECT_LE(x(i, j) - d(i, j), 1.2 - d(i, j));
    }
}

TEST(RowNormalize, L1Scaling) {
    Matrix f(1, 2);
    f << 1, 3;
    const auto r = row_normalize(f);
    EXPECT_DOUBLE_EQ(r(0, 0), 0.25);
    EXPECT_DOUBLE_EQ(r(0, 1), 0.75);
}

TEST(RowNormalize, ZeroRowPassesThrough) {
    Matrix f = Matrix::Zero(2, 2);
    f(1, 0) = 2.0;
    const auto r = row_normalize(f);
    EXPECT_EQ(r(0, 0), 0.0);
    EXPECT_EQ(r(0, 1), 0.0);
    EXPECT_EQ(r(1, 0), 1.0);
}

TEST(RowNormalize, NonnegativeRowsSumToOne) {
    Rng rng(9);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    Matrix f(25, 7);
    for (Eigen::Index i = 0; i < f.rows(); ++i)
        for (Eigen::Index j = 0; j < f.cols(); ++j) f(i, j) = u(rng);
    const auto r = row_normalize(f);
    for (Eigen::Index i = 0; i < r.rows(); ++i) EXPECT_NEAR(r.row(i).sum(), 1.0, 1e-14);
}

TEST(Propagate, IdentityIsNoop) {
    Rng rng(1);
    const auto h = random_matrix(6, 3, rng);
    EXPECT_TRUE(propagate(Matrix::Identity(6, 6), h) == h);
}

TEST(Propagate, CompleteGraphOverSmooths) {
    Rng rng(2);
    const Eigen::Index n = 9;
    Matrix a = Matrix::Ones(n, n);
    a.diagonal().setZero();
    const auto h = random_matrix(n, 4, rng);
    const auto out = propagate(augment_normalize(a), h);
    const Eigen::RowVectorXd means = h.colwise().mean();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index c = 0; c < 4; ++c) EXPECT_NEAR(out(i, c), means(c), 1e-12);
}

TEST(Propagate, ShapeMismatch) {
    EXPECT_THROW(propagate(Matrix::Identity(3, 3), Matrix::Zero(4, 2)), ContractError);
}

TEST(PropagateDecomposed, IsolatedNodeKeepsOwnRow) {
    Rng rng(3);
    const auto h = random_matrix(3, 2, rng);
    Matrix a = Matrix::Zero(3, 3);
    a(1, 2) = a(2, 1) = 1.0;
    const auto out = propagate_decomposed(a, degrees(a), h);
    EXPECT_TRUE(out.row(0) == h.row(0));
}

TEST(PropagateDecomposed, PairAverages) {
    Matrix a(2, 2);
    a << 0, 1, 1, 0;
    Matrix h(2, 2);
    h << 1, 2, 5, -4;
    const auto out = propagate_decomposed(a, degrees(a), h);
    for (Eigen::Index i = 0; i < 2; ++i) {
        EXPECT_NEAR(out(i, 0), 3.0, 1e-15);
        EXPECT_NEAR(out(i, 1), -1.0, 1e-15);
    }
}

TEST(PropagateDecomposed, MatchesMatrixForm) {
    Rng rng(10);
    std::uniform_int_distribution<int> size(1, 50);
    std::uniform_real_distribution<double> density(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto n = size(rng);
        const auto a = random_adjacency(n, density(rng), rng);
        const auto h = random_matrix(n, 3, rng);
        const auto lhs = propagate(augment_normalize(a), h);
        const auto rhs = propagate_decomposed(a, degrees(a), h);
        EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12) << "n=" << n;
    }
}

TEST(BuildGraph, RandomWalkOption) {
    Rng rng(12);
    const auto s = generate_scene(40, 4, 5.0, rng);
    const auto x = measure_distances(s, {0.1, 0.0, 10.0}, rng);
    const auto sym = build_graph(x, 1.2);
    const auto rw = build_graph(x, 1.2, Propagation::RandomWalk);
    EXPECT_TRUE(sym.adjacency == rw.adjacency);
    EXPECT_TRUE(sym.features == rw.features);
    EXPECT_EQ(rw.propagation, Propagation::RandomWalk);
    EXPECT_TRUE(rw.norm_adjacency.rowwise().sum().isOnes(1e-12));
    EXPECT_THROW(parse_propagation("laplace"), ConfigError);
}
