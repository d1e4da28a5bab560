// JSON scene documents, model checkpoints and loss-history CSV.
//
// Requires nlohmann/json on the include path.
#pragma once

#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "gnnloc/model.hpp"
#include "gnnloc/scene.hpp"
#include "gnnloc/train.hpp"

namespace gnnloc {

using json = nlohmann::json;

/// A generated scene together with the measurements drawn for it.
struct SceneDocument {
    Scene scene;
    DistanceMatrix distances;
    std::uint64_t seed = 0;
    NoiseParams noise;
};

namespace detail {

inline json rows_to_json(const Matrix& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.push_back(std::move(row));
    }
    return out;
}

inline Matrix rows_from_json(const json& j, Eigen::Index expect_cols = -1) {
    if (!j.is_array()) throw ConfigError("expected an array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = rows == 0 ? std::max<Eigen::Index>(0, expect_cols) : static_cast<Eigen::Index>(j[0].size());
    if (expect_cols >= 0 && cols != expect_cols) throw ConfigError("unexpected row width in matrix");
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw ConfigError("ragged matrix rows");
        for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
    return m;
}

inline json flat_to_json(const Matrix& m) {
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline Matrix flat_from_json(const json& j) {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto& data = j.at("data");
    if (static_cast<Eigen::Index>(data.size()) != rows * cols) throw ConfigError("weight matrix size mismatch");
    Matrix m(rows, cols);
    std::size_t idx = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = data[idx++].get<double>();
    return m;
}

}  // namespace detail

inline json noise_to_json(const NoiseParams& n) {
    return {{"sigma_sq", n.sigma_sq}, {"p_nlos", n.p_nlos}, {"nlos_max", n.nlos_max}};
}

inline NoiseParams noise_from_json(const json& j) {
    NoiseParams n;
    n.sigma_sq = j.value("sigma_sq", n.sigma_sq);
    n.p_nlos = j.value("p_nlos", n.p_nlos);
    n.nlos_max = j.value("nlos_max", n.nlos_max);
    n.validate();
    return n;
}

inline json to_json(const SceneDocument& doc) {
    return {{"area_side", doc.scene.area_side},
            {"n_anchors", doc.scene.n_anchors},
            {"positions", detail::rows_to_json(doc.scene.positions)},
            {"distances", detail::rows_to_json(doc.distances)},
            {"seed", doc.seed},
            {"noise", noise_to_json(doc.noise)}};
}

inline SceneDocument scene_from_json(const json& j) {
    SceneDocument doc;
    try {
        doc.scene.area_side = j.at("area_side").get<double>();
        doc.scene.n_anchors = j.at("n_anchors").get<std::size_t>();
        doc.scene.positions = detail::rows_from_json(j.at("positions"), 2);
        doc.distances = detail::rows_from_json(j.at("distances"));
        doc.seed = j.value("seed", std::uint64_t{0});
        if (j.contains("noise")) doc.noise = noise_from_json(j.at("noise"));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed scene document: ") + e.what());
    }
    const auto n = doc.scene.positions.rows();
    if (doc.scene.n_anchors < 1 || static_cast<Eigen::Index>(doc.scene.n_anchors) >= n)
        throw ConfigError("scene document: need 1 <= n_anchors < N");
    if (doc.distances.rows() != n || doc.distances.cols() != n)
        throw ConfigError("scene document: distance matrix must be N x N");
    return doc;
}

/// Weights plus everything needed to rebuild the model around them.
struct Checkpoint {
    ModelConfig model;
    TrainConfig train;
    double threshold = 1.2;
    Weights weights;
};

inline json to_json(const Checkpoint& ck) {
    json layers = json::array();
    for (const auto& w : ck.weights.layers) layers.push_back(detail::flat_to_json(w));
    return {{"model",
             {{"kind", std::string(to_string(ck.model.kind))},
              {"layer_dims", ck.model.layer_dims},
              {"dropout_rate", ck.model.dropout_rate}}},
            {"train",
             {{"epochs", ck.train.epochs},
              {"learning_rate", ck.train.learning_rate},
              {"adam_beta1", ck.train.adam_beta1},
              {"adam_beta2", ck.train.adam_beta2},
              {"adam_eps", ck.train.adam_eps},
              {"seed", ck.train.seed}}},
            {"threshold", ck.threshold},
            {"weights", std::move(layers)}};
}

inline Checkpoint checkpoint_from_json(const json& j) {
    Checkpoint ck;
    try {
        const auto& m = j.at("model");
        ck.model.kind = parse_model_kind(m.at("kind").get<std::string>());
        ck.model.layer_dims = m.at("layer_dims").get<std::vector<Eigen::Index>>();
        ck.model.dropout_rate = m.at("dropout_rate").get<double>();
        const auto& t = j.at("train");
        ck.train.epochs = t.at("epochs").get<int>();
        ck.train.learning_rate = t.at("learning_rate").get<double>();
        ck.train.adam_beta1 = t.at("adam_beta1").get<double>();
        ck.train.adam_beta2 = t.at("adam_beta2").get<double>();
        ck.train.adam_eps = t.at("adam_eps").get<double>();
        ck.train.seed = t.at("seed").get<std::uint64_t>();
        ck.threshold = j.at("threshold").get<double>();
        for (const auto& layer : j.at("weights")) ck.weights.layers.push_back(detail::flat_from_json(layer));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed checkpoint: ") + e.what());
    }
    ck.model.validate();
    if (ck.weights.layers.size() != ck.model.depth()) throw ConfigError("checkpoint: layer count mismatch");
    for (std::size_t k = 0; k < ck.weights.layers.size(); ++k)
        if (ck.weights.layers[k].rows() != ck.model.layer_dims[k] ||
            ck.weights.layers[k].cols() != ck.model.layer_dims[k + 1])
            throw ConfigError("checkpoint: weight shape does not match layer_dims");
    return ck;
}

/// CSV columns: epoch,loss
inline void write_loss_csv(std::ostream& os, const std::vector<double>& history) {
    os << "epoch,loss\n";
    os.precision(17);
    for (std::size_t e = 0; e < history.size(); ++e) os << e << ',' << history[e] << '\n';
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path);
    out << text;
}

}  // namespace gnnloc
