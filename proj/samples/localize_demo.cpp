// Train a GCN and an MLP on one noisy scene and compare their error.
#include <iostream>

#include "gnnloc/gnnloc.hpp"

int main() {
    using namespace gnnloc;

    Rng rng(2024);
    const Scene scene = generate_scene(300, 30, 5.0, rng);
    const NoiseParams noise{0.1, 0.1, 10.0};
    const DistanceMatrix x = measure_distances(scene, noise, rng);
    const ThresholdedGraph graph = build_graph(x, 1.2);

    TrainConfig tcfg;
    tcfg.seed = 7;
    for (auto kind : {ModelKind::Gcn, ModelKind::Mlp}) {
        const auto mcfg = make_model_config(kind, static_cast<Eigen::Index>(scene.size()), {128});
        const auto trained = train(mcfg, tcfg, graph, scene);
        const auto est = predict(mcfg, graph, trained.weights);
        std::cout << to_string(kind) << " RMSE " << evaluate_rmse(est, scene) << "\n";
    }
}
