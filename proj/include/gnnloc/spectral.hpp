// Graph-spectral view of the propagation operator: Laplacian eigenbasis,
// graph Fourier transform and the K-step low-pass response.
#pragma once

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "gnnloc/graph.hpp"
#include "gnnloc/scene.hpp"

namespace gnnloc {

/// Eigenvalues ascending; eigenvector k is column k.
struct SpectralDecomposition {
    Vector eigenvalues;
    Matrix eigenvectors;

    Eigen::Index size() const noexcept { return eigenvalues.size(); }
};

/// Augmented normalized Laplacian I - A_hat.
inline Matrix laplacian(const Matrix& norm_adjacency) {
    detail::require_shape(norm_adjacency.rows() == norm_adjacency.cols(), "laplacian: A_hat must be square");
    return Matrix::Identity(norm_adjacency.rows(), norm_adjacency.cols()) - norm_adjacency;
}

/// Dense symmetric eigendecomposition. Throws NumericError if the solver
/// does not converge or the reconstruction residual exceeds `tolerance`
/// relative to ||L||_F.
inline SpectralDecomposition eigendecompose(const Matrix& symmetric, double tolerance = 1e-7) {
    detail::require_shape(symmetric.rows() == symmetric.cols(), "eigendecompose: matrix must be square");
    SpectralDecomposition out;
    if (symmetric.rows() == 0) return out;

    // Column-major copy: the solver works in place on its own storage.
    const Eigen::MatrixXd l = symmetric;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l);
    if (solver.info() != Eigen::Success) throw NumericError("symmetric eigensolver did not converge");
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();

    const double scale = std::max(1.0, l.norm());
    const double residual =
        (out.eigenvectors * out.eigenvalues.asDiagonal() * out.eigenvectors.transpose() - symmetric).norm() / scale;
    if (!(residual <= tolerance)) {
        std::ostringstream msg;
        msg << "eigendecomposition residual " << residual << " exceeds " << tolerance;
        throw NumericError(msg.str());
    }
    return out;
}

/// Graph Fourier transform U^T s (column-wise for matrix signals).
inline Matrix gft(const SpectralDecomposition& decomp, const Matrix& signal) {
    detail::require_shape(signal.rows() == decomp.size(), "gft: signal length != N");
    return decomp.eigenvectors.transpose() * signal;
}

inline Vector gft(const SpectralDecomposition& decomp, const Vector& signal) {
    detail::require_shape(signal.size() == decomp.size(), "gft: signal length != N");
    return decomp.eigenvectors.transpose() * signal;
}

inline Matrix inverse_gft(const SpectralDecomposition& decomp, const Matrix& coeffs) {
    detail::require_shape(coeffs.rows() == decomp.size(), "inverse_gft: coefficient length != N");
    return decomp.eigenvectors * coeffs;
}

inline Vector inverse_gft(const SpectralDecomposition& decomp, const Vector& coeffs) {
    detail::require_shape(coeffs.size() == decomp.size(), "inverse_gft: coefficient length != N");
    return decomp.eigenvectors * coeffs;
}

/// g(lambda) = (1 - lambda)^k, the response of k propagation steps.
inline Vector filter_response(const Vector& eigenvalues, int k) {
    if (k < 1) throw ConfigError("filter order must be >= 1");
    return (1.0 - eigenvalues.array()).pow(static_cast<double>(k)).matrix();
}

/// Per-frequency profile of a matrix signal, averaged over its columns.
struct SpectralProfile {
    std::string name;
    Vector mean_abs_coeff;
    Vector mean_energy;  // mean squared coefficient
};

inline SpectralProfile spectral_profile(std::string name, const SpectralDecomposition& decomp, const Matrix& signal) {
    const Matrix c = gft(decomp, signal);
    const double cols = static_cast<double>(std::max<Eigen::Index>(1, c.cols()));
    return {std::move(name), c.cwiseAbs().rowwise().sum() / cols, c.cwiseAbs2().rowwise().sum() / cols};
}

/// Share of total energy in the lowest (or highest) `fraction` of the
/// spectrum by eigenvalue index.
inline double band_energy_fraction(const SpectralProfile& profile, double fraction, bool low_band = true) {
    const Eigen::Index n = profile.mean_energy.size();
    const auto band = static_cast<Eigen::Index>(std::floor(fraction * static_cast<double>(n)));
    const double total = profile.mean_energy.sum();
    if (total <= 0.0 || band == 0) return 0.0;
    const double part = low_band ? profile.mean_energy.head(band).sum() : profile.mean_energy.tail(band).sum();
    return part / total;
}

inline double band_energy(const SpectralProfile& profile, double fraction, bool low_band = true) {
    const Eigen::Index n = profile.mean_energy.size();
    const auto band = static_cast<Eigen::Index>(std::floor(fraction * static_cast<double>(n)));
    return low_band ? profile.mean_energy.head(band).sum() : profile.mean_energy.tail(band).sum();
}

struct SpectralReport {
    Vector eigenvalues;
    std::vector<SpectralProfile> signals;

    const SpectralProfile& signal(const std::string& name) const {
        for (const auto& s : signals)
            if (s.name == name) return s;
        throw ContractError("no spectral series named " + name);
    }

    /// CSV columns: signal_name,eigenvalue,mean_abs_coeff
    void write_csv(std::ostream& os) const {
        os << "signal_name,eigenvalue,mean_abs_coeff\n";
        os.precision(17);
        for (const auto& s : signals)
            for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
                os << s.name << ',' << eigenvalues(i) << ',' << s.mean_abs_coeff(i) << '\n';
    }
};

/// Spectra of the true distance matrix and of an i.i.d. LOS noise matrix,
/// each before and after K applications of A_hat.
inline SpectralReport spectral_energy_report(const ThresholdedGraph& graph, const Scene& scene,
                                             const NoiseParams& noise, Rng& rng, int k = 2) {
    if (k < 1) throw ConfigError("filter order must be >= 1");
    detail::require_shape(graph.size() == scene.size(), "graph and scene disagree on N");

    // Always the symmetric operator: the eigenbasis needs a symmetric Laplacian.
    const Matrix a_hat = augment_normalize(graph.adjacency);
    const auto decomp = eigendecompose(laplacian(a_hat));
    const Matrix truth = true_distances(scene);

    NoiseParams los_only = noise;
    los_only.p_nlos = 0.0;
    RangeErrorSampler sample(los_only);
    const auto n = truth.rows();
    Matrix noise_m = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) noise_m(i, j) = noise_m(j, i) = sample(rng).total();

    Matrix filter = a_hat;
    for (int step = 1; step < k; ++step) filter = filter * a_hat;

    SpectralReport report;
    report.eigenvalues = decomp.eigenvalues;
    report.signals.push_back(spectral_profile("true_distance", decomp, truth));
    report.signals.push_back(spectral_profile("los_noise", decomp, noise_m));
    report.signals.push_back(spectral_profile("true_distance_filtered", decomp, filter * truth));
    report.signals.push_back(spectral_profile("los_noise_filtered", decomp, filter * noise_m));
    return report;
}

}  // namespace gnnloc
