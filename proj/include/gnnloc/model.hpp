// GCN / MLP position regressors: initialization, forward pass, anchor loss,
// analytic gradients and agent RMSE.
#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "gnnloc/common.hpp"
#include "gnnloc/scene.hpp"

namespace gnnloc {

enum class ModelKind { Gcn, Mlp };

inline std::string_view to_string(ModelKind kind) { return kind == ModelKind::Gcn ? "GCN" : "MLP"; }

inline ModelKind parse_model_kind(std::string_view s) {
    if (s == "GCN" || s == "gcn") return ModelKind::Gcn;
    if (s == "MLP" || s == "mlp") return ModelKind::Mlp;
    throw ConfigError("unknown model kind '" + std::string(s) + "'");
}

struct ModelConfig {
    ModelKind kind = ModelKind::Gcn;
    std::vector<Eigen::Index> layer_dims;  // D_0 = N, ..., D_K = 2
    double dropout_rate = 0.5;

    std::size_t depth() const noexcept { return layer_dims.empty() ? 0 : layer_dims.size() - 1; }

    void validate() const {
        if (layer_dims.size() < 2) throw ConfigError("model needs at least one layer");
        if (layer_dims.back() != 2) throw ConfigError("final layer width must be 2");
        for (auto d : layer_dims)
            if (d < 1) throw ConfigError("layer widths must be positive");
        if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) throw ConfigError("dropout_rate must lie in [0, 1)");
    }
};

/// N inputs -> hidden widths... -> 2 outputs.
inline ModelConfig make_model_config(ModelKind kind, Eigen::Index n_inputs, std::vector<Eigen::Index> hidden,
                                     double dropout_rate = 0.5) {
    ModelConfig cfg;
    cfg.kind = kind;
    cfg.dropout_rate = dropout_rate;
    cfg.layer_dims.push_back(n_inputs);
    cfg.layer_dims.insert(cfg.layer_dims.end(), hidden.begin(), hidden.end());
    cfg.layer_dims.push_back(2);
    cfg.validate();
    return cfg;
}

/// W^(k) is D_{k-1} x D_k.
struct Weights {
    std::vector<Matrix> layers;

    bool operator==(const Weights& other) const {
        if (layers.size() != other.layers.size()) return false;
        for (std::size_t k = 0; k < layers.size(); ++k) {
            if (layers[k].rows() != other.layers[k].rows() || layers[k].cols() != other.layers[k].cols() ||
                layers[k] != other.layers[k])
                return false;
        }
        return true;
    }
};

using Gradients = std::vector<Matrix>;

/// N x 2 estimated coordinates.
using PositionEstimate = Matrix;

/// Uniform Glorot: U[-sqrt(6/(fan_in+fan_out)), +sqrt(6/(fan_in+fan_out))].
inline Weights glorot_init(const std::vector<Eigen::Index>& dims, Rng& rng) {
    if (dims.size() < 2) throw ConfigError("glorot_init needs at least two layer widths");
    Weights w;
    for (std::size_t k = 1; k < dims.size(); ++k) {
        const double bound = std::sqrt(6.0 / static_cast<double>(dims[k - 1] + dims[k]));
        std::uniform_real_distribution<double> u(-bound, bound);
        Matrix m(dims[k - 1], dims[k]);
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = u(rng);
        w.layers.push_back(std::move(m));
    }
    return w;
}

/// Inverted-dropout masks, one per layer input (input features and each
/// hidden activation). Entries are 0 or 1/(1-rate). Empty means no dropout.
struct DropoutMasks {
    std::vector<Matrix> layers;

    bool empty() const noexcept { return layers.empty(); }
};

inline DropoutMasks sample_dropout(const ModelConfig& cfg, Eigen::Index n_nodes, Rng& rng) {
    DropoutMasks masks;
    if (cfg.dropout_rate <= 0.0) return masks;
    const double keep_scale = 1.0 / (1.0 - cfg.dropout_rate);
    std::bernoulli_distribution keep(1.0 - cfg.dropout_rate);
    for (std::size_t k = 0; k + 1 < cfg.layer_dims.size(); ++k) {
        Matrix m(n_nodes, cfg.layer_dims[k]);
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = keep(rng) ? keep_scale : 0.0;
        masks.layers.push_back(std::move(m));
    }
    return masks;
}

namespace detail {

struct LayerCache {
    Matrix input;       // layer input after dropout
    Matrix propagated;  // A_hat * input, when that association order was used
    Matrix pre_activation;
};

struct ForwardPass {
    std::vector<LayerCache> layers;
    Matrix output;
};

inline void check_inputs(const ModelConfig& cfg, const Matrix* norm_adjacency, const Matrix& features,
                         const Weights& w, const DropoutMasks& masks) {
    cfg.validate();
    if (cfg.kind == ModelKind::Gcn && norm_adjacency == nullptr)
        throw ContractError("GCN forward needs a propagation matrix");
    if (cfg.kind == ModelKind::Mlp && norm_adjacency != nullptr)
        throw ContractError("MLP forward takes no propagation matrix");
    if (norm_adjacency)
        require_shape(norm_adjacency->rows() == features.rows() && norm_adjacency->cols() == features.rows(),
                      "propagation matrix must be N x N");
    require_shape(features.cols() == cfg.layer_dims.front(), "feature width != D_0");
    require_shape(w.layers.size() == cfg.depth(), "weight count != layer count");
    for (std::size_t k = 0; k < w.layers.size(); ++k)
        require_shape(w.layers[k].rows() == cfg.layer_dims[k] && w.layers[k].cols() == cfg.layer_dims[k + 1],
                      "weight shape does not chain");
    if (!masks.empty()) {
        require_shape(masks.layers.size() == cfg.depth(), "dropout mask count != layer count");
        for (std::size_t k = 0; k < masks.layers.size(); ++k)
            require_shape(masks.layers[k].rows() == features.rows() && masks.layers[k].cols() == cfg.layer_dims[k],
                          "dropout mask shape");
    }
}

inline ForwardPass run_forward(const ModelConfig& cfg, const Matrix* norm_adjacency, const Matrix& features,
                               const Weights& w, const DropoutMasks& masks) {
    check_inputs(cfg, norm_adjacency, features, w, masks);
    ForwardPass pass;
    pass.layers.resize(w.layers.size());
    Matrix h = features;
    for (std::size_t k = 0; k < w.layers.size(); ++k) {
        auto& c = pass.layers[k];
        if (masks.empty())
            c.input = std::move(h);
        else
            c.input = h.cwiseProduct(masks.layers[k]);
        const Matrix& wk = w.layers[k];
        if (norm_adjacency == nullptr) {
            c.pre_activation.noalias() = c.input * wk;
        } else if (wk.cols() < wk.rows()) {
            // A (H W) is cheaper when the layer narrows.
            Matrix hw = c.input * wk;
            c.pre_activation.noalias() = *norm_adjacency * hw;
        } else {
            c.propagated.noalias() = *norm_adjacency * c.input;
            c.pre_activation.noalias() = c.propagated * wk;
        }
        const bool last = k + 1 == w.layers.size();
        h = last ? c.pre_activation : Matrix(c.pre_activation.cwiseMax(0.0));
    }
    pass.output = std::move(h);
    return pass;
}

}  // namespace detail

/// R_hat for the given model. `norm_adjacency` must be null for MLP and
/// non-null for GCN. The final layer is linear; hidden layers use ReLU.
inline PositionEstimate forward(const ModelConfig& cfg, const Matrix* norm_adjacency, const Matrix& features,
                                const Weights& w, const DropoutMasks& masks = {}) {
    return detail::run_forward(cfg, norm_adjacency, features, w, masks).output;
}

/// ||R_l - R_hat_l||_F^2 over the first anchor_targets.rows() nodes.
inline double anchor_loss(const PositionEstimate& est, const Matrix& anchor_targets) {
    detail::require_shape(est.cols() == 2 && anchor_targets.cols() == 2 && anchor_targets.rows() <= est.rows(),
                          "anchor_loss");
    return (est.topRows(anchor_targets.rows()) - anchor_targets).squaredNorm();
}

inline double anchor_loss(const PositionEstimate& est, const Scene& scene) {
    return anchor_loss(est, Matrix(scene.anchors()));
}

struct LossAndGradients {
    double loss = 0.0;
    Gradients grads;
};

/// Analytic gradients of anchor_loss through forward. Only rows of
/// `anchor_targets` contribute to the residual.
inline LossAndGradients backward(const ModelConfig& cfg, const Matrix* norm_adjacency, const Matrix& features,
                                 const Weights& w, const DropoutMasks& masks, const Matrix& anchor_targets) {
    auto pass = detail::run_forward(cfg, norm_adjacency, features, w, masks);
    detail::require_shape(anchor_targets.cols() == 2 && anchor_targets.rows() <= pass.output.rows(), "backward");

    const auto n_anchor = anchor_targets.rows();
    Matrix d_z = Matrix::Zero(pass.output.rows(), 2);
    d_z.topRows(n_anchor) = 2.0 * (pass.output.topRows(n_anchor) - anchor_targets);

    LossAndGradients out;
    out.loss = (pass.output.topRows(n_anchor) - anchor_targets).squaredNorm();
    out.grads.resize(w.layers.size());

    for (std::size_t k = w.layers.size(); k-- > 0;) {
        const auto& c = pass.layers[k];
        const Matrix& wk = w.layers[k];
        Matrix d_input;
        if (norm_adjacency == nullptr) {
            out.grads[k].noalias() = c.input.transpose() * d_z;
            if (k > 0) d_input.noalias() = d_z * wk.transpose();
        } else if (c.propagated.size() > 0) {
            out.grads[k].noalias() = c.propagated.transpose() * d_z;
            if (k > 0) {
                Matrix d_prop = d_z * wk.transpose();
                d_input.noalias() = norm_adjacency->transpose() * d_prop;
            }
        } else {
            Matrix back = norm_adjacency->transpose() * d_z;
            out.grads[k].noalias() = c.input.transpose() * back;
            if (k > 0) d_input.noalias() = back * wk.transpose();
        }
        if (k == 0) break;
        if (!masks.empty()) d_input.array() *= masks.layers[k].array();
        const auto& z_prev = pass.layers[k - 1].pre_activation;
        d_z = (z_prev.array() > 0.0).select(d_input, 0.0);
    }
    return out;
}

inline LossAndGradients backward(const ModelConfig& cfg, const Matrix* norm_adjacency, const Matrix& features,
                                 const Weights& w, const DropoutMasks& masks, const Scene& scene) {
    return backward(cfg, norm_adjacency, features, w, masks, Matrix(scene.anchors()));
}

/// ||R_u - R_hat_u||_F / sqrt(N_u) over agent rows.
inline double evaluate_rmse(const PositionEstimate& est, const Scene& scene) {
    detail::require_shape(est.rows() == scene.positions.rows() && est.cols() == 2, "evaluate_rmse");
    if (scene.n_agents() == 0) return 0.0;
    const auto n_u = static_cast<Eigen::Index>(scene.n_agents());
    return (est.bottomRows(n_u) - scene.agents()).norm() / std::sqrt(static_cast<double>(n_u));
}

/// Raw ||R_u - R_hat_u||_F, reported alongside the normalized RMSE.
inline double agent_error_frobenius(const PositionEstimate& est, const Scene& scene) {
    detail::require_shape(est.rows() == scene.positions.rows() && est.cols() == 2, "agent_error_frobenius");
    const auto n_u = static_cast<Eigen::Index>(scene.n_agents());
    return (est.bottomRows(n_u) - scene.agents()).norm();
}

}  // namespace gnnloc
