#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "gnnloc/spectral.hpp"

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

TEST(Laplacian, IdentityGivesZero) { EXPECT_TRUE(laplacian(Matrix::Identity(4, 4)).isZero(0.0)); }

TEST(Laplacian, PairHandComputed) {
    const Matrix a_hat = Matrix::Constant(2, 2, 0.5);
    const auto l = laplacian(a_hat);
    EXPECT_DOUBLE_EQ(l(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(l(0, 1), -0.5);
    const auto d = eigendecompose(l);
    EXPECT_NEAR(d.eigenvalues(0), 0.0, 1e-15);
    EXPECT_NEAR(d.eigenvalues(1), 1.0, 1e-15);
}

TEST(Laplacian, RowSumsVanishWhenRowsSumToOne) {
    Matrix a_hat(3, 3);
    a_hat << 0.5, 0.25, 0.25, 0.25, 0.5, 0.25, 0.25, 0.25, 0.5;
    EXPECT_TRUE(laplacian(a_hat).rowwise().sum().isZero(1e-15));
}

TEST(Eigendecompose, DiagonalInput) {
    Vector diag(4);
    diag << 0.7, 0.1, 1.9, 0.4;
    const auto d = eigendecompose(Matrix(diag.asDiagonal()));
    Vector sorted(4);
    sorted << 0.1, 0.4, 0.7, 1.9;
    EXPECT_TRUE(d.eigenvalues.isApprox(sorted, 1e-15));
    EXPECT_TRUE(d.eigenvectors.cwiseAbs().colwise().sum().isOnes(1e-15));
}

TEST(Eigendecompose, RandomGraphReconstruction) {
    Rng rng(1);
    const auto l = laplacian(augment_normalize(random_adjacency(20, 0.3, rng)));
    const auto d = eigendecompose(l);
    const Matrix recon = d.eigenvectors * d.eigenvalues.asDiagonal() * d.eigenvectors.transpose();
    EXPECT_LT((recon - l).norm() / l.norm(), 1e-9);
    EXPECT_LT((d.eigenvectors.transpose() * d.eigenvectors - Matrix::Identity(20, 20)).cwiseAbs().maxCoeff(), 1e-8);
    for (Eigen::Index i = 1; i < d.size(); ++i) EXPECT_LE(d.eigenvalues(i - 1), d.eigenvalues(i));
}

TEST(Eigendecompose, SpectrumInRange) {
    Rng rng(2);
    std::uniform_real_distribution<double> density(0.0, 1.0);
    for (int t = 0; t < 25; ++t) {
        const auto d = eigendecompose(laplacian(augment_normalize(random_adjacency(15, density(rng), rng))));
        EXPECT_GE(d.eigenvalues.minCoeff(), -1e-9);
        EXPECT_LT(d.eigenvalues.maxCoeff(), 2.0 + 1e-9);
    }
}

TEST(Gft, EigenvectorMapsToBasis) {
    Rng rng(3);
    const auto d = eigendecompose(laplacian(augment_normalize(random_adjacency(10, 0.4, rng))));
    const Vector col = d.eigenvectors.col(4);
    const Vector c = gft(d, col);
    EXPECT_TRUE(c.isApprox(Vector::Unit(10, 4), 1e-12) || (c - Vector::Unit(10, 4)).norm() < 1e-12);
}

TEST(Gft, ParsevalAndRoundTrip) {
    Rng rng(4);
    const auto d = eigendecompose(laplacian(augment_normalize(random_adjacency(30, 0.2, rng))));
    const Matrix s = random_matrix(30, 5, rng);
    const Matrix c = gft(d, s);
    EXPECT_NEAR(c.norm(), s.norm(), 1e-9);
    EXPECT_LT((inverse_gft(d, c) - s).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_THROW(gft(d, Matrix(Matrix::Zero(29, 1))), ContractError);
}

TEST(Gft, FilteringIsDiagonalInEigenbasis) {
    Rng rng(5);
    const auto a_hat = augment_normalize(random_adjacency(25, 0.25, rng));
    const auto d = eigendecompose(laplacian(a_hat));
    const Matrix s = random_matrix(25, 3, rng);
    for (int k : {1, 2, 3}) {
        Matrix filt = Matrix::Identity(25, 25);
        for (int i = 0; i < k; ++i) filt = filt * a_hat;
        const Matrix lhs = gft(d, Matrix(filt * s));
        const Matrix rhs = filter_response(d.eigenvalues, k).asDiagonal() * gft(d, s);
        EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-7) << "k=" << k;
    }
}

TEST(FilterResponse, Values) {
    Vector l(3);
    l << 0.0, 1.0, 0.5;
    const auto g2 = filter_response(l, 2);
    EXPECT_DOUBLE_EQ(g2(0), 1.0);
    EXPECT_DOUBLE_EQ(g2(1), 0.0);
    EXPECT_DOUBLE_EQ(g2(2), 0.25);
    EXPECT_DOUBLE_EQ(filter_response(l, 5)(1), 0.0);
    EXPECT_THROW(filter_response(l, 0), ConfigError);
}

TEST(FilterResponse, NonincreasingOnUnitInterval) {
    const Vector l = Vector::LinSpaced(101, 0.0, 1.0);
    for (int k = 1; k <= 6; ++k) {
        const auto g = filter_response(l, k);
        for (Eigen::Index i = 1; i < g.size(); ++i) EXPECT_LE(g(i), g(i - 1)) << "k=" << k;
    }
}

TEST(SpectralReport, ConstantSignalIsAllDc) {
    // On a regular graph the lowest eigenvector is constant.
    Matrix ring = Matrix::Zero(12, 12);
    for (Eigen::Index i = 0; i < 12; ++i) ring(i, (i + 1) % 12) = ring((i + 1) % 12, i) = 1.0;
    const auto d = eigendecompose(laplacian(augment_normalize(ring)));
    const auto prof = spectral_profile("const", d, Matrix::Ones(12, 1));
    EXPECT_NEAR(prof.mean_energy(0), prof.mean_energy.sum(), 1e-12);
}

TEST(SpectralReport, SeriesAndShape) {
    Rng rng(6);
    const auto s = generate_scene(150, 15, 5.0, rng);
    const auto x = measure_distances(s, {0.1, 0.0, 10.0}, rng);
    const auto g = build_graph(x, 1.2);
    const auto rep = spectral_energy_report(g, s, {0.1, 0.0, 10.0}, rng, 2);
    EXPECT_EQ(rep.signals.size(), 4u);
    EXPECT_EQ(rep.eigenvalues.size(), 150);
    const double hi_noise = band_energy(rep.signal("los_noise"), 0.25, false);
    const double hi_filtered = band_energy(rep.signal("los_noise_filtered"), 0.25, false);
    EXPECT_LT(hi_filtered, hi_noise);
    EXPECT_GT(band_energy_fraction(rep.signal("true_distance"), 0.25),
              2.0 * band_energy_fraction(rep.signal("los_noise"), 0.25));

    std::ostringstream csv;
    rep.write_csv(csv);
    const auto text = csv.str();
    EXPECT_EQ(text.rfind("signal_name,eigenvalue,mean_abs_coeff\n", 0), 0u);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + 4 * 150);
}
