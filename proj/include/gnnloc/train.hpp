// Adam optimizer and the full-batch training loop.
#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include "gnnloc/graph.hpp"
#include "gnnloc/model.hpp"

namespace gnnloc {

struct TrainConfig {
    int epochs = 200;
    double learning_rate = 0.01;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    std::uint64_t seed = 0;

    void validate() const {
        if (epochs < 1) throw ConfigError("epochs must be >= 1");
        if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
    }
};

struct AdamState {
    std::vector<Matrix> m;
    std::vector<Matrix> v;
    long step = 0;

    static AdamState zeros_like(const Weights& w) {
        AdamState s;
        for (const auto& layer : w.layers) {
            s.m.push_back(Matrix::Zero(layer.rows(), layer.cols()));
            s.v.push_back(Matrix::Zero(layer.rows(), layer.cols()));
        }
        return s;
    }
};

/// Bias-corrected Adam update, in place.
inline void adam_step(Weights& w, const Gradients& grads, AdamState& state, const TrainConfig& cfg) {
    detail::require_shape(grads.size() == w.layers.size() && state.m.size() == w.layers.size() &&
                              state.v.size() == w.layers.size(),
                          "adam_step: layer counts differ");
    ++state.step;
    const double c1 = 1.0 - std::pow(cfg.adam_beta1, static_cast<double>(state.step));
    const double c2 = 1.0 - std::pow(cfg.adam_beta2, static_cast<double>(state.step));
    for (std::size_t k = 0; k < w.layers.size(); ++k) {
        detail::require_shape(grads[k].rows() == w.layers[k].rows() && grads[k].cols() == w.layers[k].cols() &&
                                  state.m[k].rows() == grads[k].rows() && state.m[k].cols() == grads[k].cols(),
                              "adam_step: layer shape");
        auto m = state.m[k].array();
        auto v = state.v[k].array();
        const auto g = grads[k].array();
        m = cfg.adam_beta1 * m + (1.0 - cfg.adam_beta1) * g;
        v = cfg.adam_beta2 * v + (1.0 - cfg.adam_beta2) * g.square();
        w.layers[k].array() -= cfg.learning_rate * (m / c1) / ((v / c2).sqrt() + cfg.adam_eps);
    }
}

/// Row-normalized features and the propagation operator for one model kind.
struct ModelInputs {
    Matrix features;
    const Matrix* norm_adjacency = nullptr;
};

inline ModelInputs model_inputs(const ModelConfig& cfg, const ThresholdedGraph& graph) {
    return {row_normalize(graph.features), cfg.kind == ModelKind::Gcn ? &graph.norm_adjacency : nullptr};
}

struct TrainResult {
    Weights weights;
    std::vector<double> loss_history;  // one entry per epoch, taken under that epoch's dropout mask
};

/// Full-batch training against anchor coordinates only. Agent positions
/// are never an input here.
inline TrainResult train(const ModelConfig& model_cfg, const TrainConfig& train_cfg, const ThresholdedGraph& graph,
                         const Matrix& anchor_targets) {
    model_cfg.validate();
    train_cfg.validate();
    detail::require_shape(model_cfg.layer_dims.front() == static_cast<Eigen::Index>(graph.size()),
                          "D_0 must equal the node count");

    Rng rng(train_cfg.seed);
    const auto inputs = model_inputs(model_cfg, graph);
    TrainResult result;
    result.weights = glorot_init(model_cfg.layer_dims, rng);
    auto state = AdamState::zeros_like(result.weights);
    result.loss_history.reserve(static_cast<std::size_t>(train_cfg.epochs));

    for (int epoch = 0; epoch < train_cfg.epochs; ++epoch) {
        const auto masks = sample_dropout(model_cfg, inputs.features.rows(), rng);
        auto lg = backward(model_cfg, inputs.norm_adjacency, inputs.features, result.weights, masks, anchor_targets);
        if (!std::isfinite(lg.loss)) {
            std::ostringstream msg;
            msg << "training diverged: loss=" << lg.loss << " at epoch " << epoch << " (lr=" << train_cfg.learning_rate
                << ", kind=" << to_string(model_cfg.kind) << ")";
            throw NumericError(msg.str());
        }
        result.loss_history.push_back(lg.loss);
        adam_step(result.weights, lg.grads, state, train_cfg);
    }
    return result;
}

inline TrainResult train(const ModelConfig& model_cfg, const TrainConfig& train_cfg, const ThresholdedGraph& graph,
                         const Scene& scene) {
    return train(model_cfg, train_cfg, graph, Matrix(scene.anchors()));
}

/// Dropout-free evaluation pass.
inline PositionEstimate predict(const ModelConfig& cfg, const ThresholdedGraph& graph, const Weights& w) {
    const auto inputs = model_inputs(cfg, graph);
    return forward(cfg, inputs.norm_adjacency, inputs.features, w);
}

}  // namespace gnnloc
