// gnnloc command line: scene generation, single training runs and the
// experiment scenarios.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gnnloc/gnnloc.hpp"
#include "gnnloc/io.hpp"

using namespace gnnloc;

namespace {

ExperimentConfig load_config(const std::string& path, Scenario scenario, const std::vector<std::string>& overrides) {
    std::string text;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    // Overrides are appended as extra lines so they win over the file.
    for (const auto& o : overrides) text += "\n" + o;
    text += "\nscenario = " + std::string(to_string(scenario));
    auto cfg = parse_config(text, scenario);
    cfg.validate();
    return cfg;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-")
        std::cout << text;
    else
        write_text_file(out_path, text);
}

struct ScenarioArgs {
    std::string config;
    std::string out;
    std::vector<std::string> set;
};

CLI::App* add_scenario(CLI::App& app, const std::string& name, const std::string& help, ScenarioArgs& args) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("-c,--config", args.config, "key = value config file");
    sub->add_option("-o,--out", args.out, "output CSV (default stdout)");
    sub->add_option("--set", args.set, "override, e.g. --set trials=2")->allow_extra_args(false);
    return sub;
}

void run_scenario(Scenario s, const ScenarioArgs& args) {
    const auto cfg = load_config(args.config, s, args.set);
    std::ostringstream os;
    if (s == Scenario::SpectralReport) {
        run_spectral_report(cfg).write_csv(os);
    } else {
        const auto result = run_experiment(cfg);
        result.write_csv(os);
        for (const auto& t : result.timings) std::cerr << "time " << t.label << " " << t.seconds << " s\n";
    }
    emit(args.out, os.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph-network localization from noisy pairwise ranges"};
    app.require_subcommand(1);

    // generate
    std::size_t n = 500, n_anchors = 50;
    double side = 5.0, sigma_sq = 0.25, p_nlos = 0.3, nlos_max = 10.0;
    std::uint64_t seed = 1;
    std::string scene_out;
    auto* gen = app.add_subcommand("generate", "Sample a scene and its measured range matrix as JSON");
    gen->add_option("--n", n, "total nodes");
    gen->add_option("--anchors", n_anchors, "anchor count");
    gen->add_option("--side", side, "square side length");
    gen->add_option("--sigma-sq", sigma_sq, "LOS noise variance");
    gen->add_option("--p-nlos", p_nlos, "NLOS probability");
    gen->add_option("--nlos-max", nlos_max, "upper bound of the NLOS bias");
    gen->add_option("--seed", seed, "RNG seed");
    gen->add_option("-o,--out", scene_out, "output JSON (default stdout)");

    // train
    std::string scene_in, checkpoint_out, metrics_out, loss_out, model_name = "GCN", propagation = "symmetric";
    std::vector<Eigen::Index> hidden{512};
    double t_h = 1.2, dropout = 0.5, lr = 0.01;
    int epochs = 200;
    std::uint64_t train_seed = 0;
    auto* tr = app.add_subcommand("train", "Train one model on a scene JSON");
    tr->add_option("scene", scene_in, "scene JSON from `generate`")->required();
    tr->add_option("--model", model_name, "GCN or MLP");
    tr->add_option("--hidden", hidden, "hidden widths")->delimiter(',');
    tr->add_option("--threshold", t_h, "connectivity threshold");
    tr->add_option("--propagation", propagation, "symmetric or random_walk");
    tr->add_option("--dropout", dropout, "dropout rate");
    tr->add_option("--epochs", epochs, "training epochs");
    tr->add_option("--lr", lr, "Adam learning rate");
    tr->add_option("--seed", train_seed, "init and dropout seed");
    tr->add_option("--checkpoint", checkpoint_out, "write weights JSON");
    tr->add_option("--metrics", metrics_out, "write metrics JSON (default stdout)");
    tr->add_option("--loss-csv", loss_out, "write per-epoch loss CSV");

    ScenarioArgs noise_args, anchor_args, threshold_args, spectral_args, single_args;
    auto* nt = add_scenario(app, "noise-table", "RMSE of each model across noise conditions", noise_args);
    auto* as = add_scenario(app, "anchor-sweep", "RMSE against anchor count", anchor_args);
    auto* ts = add_scenario(app, "threshold-sweep", "RMSE against connectivity threshold", threshold_args);
    auto* sp = add_scenario(app, "spectral", "Graph-spectral energy of distances and noise", spectral_args);
    auto* sr = add_scenario(app, "single", "One configuration, one or more trials", single_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*gen) {
            if (n_anchors < 1 || n_anchors >= n) throw ConfigError("need 1 <= anchors < n");
            const NoiseParams noise{sigma_sq, p_nlos, nlos_max};
            noise.validate();
            Rng scene_rng(mix_seed(seed, 1)), measure_rng(mix_seed(seed, 2));
            SceneDocument doc{generate_scene(n, n_anchors, side, scene_rng), {}, seed, noise};
            doc.distances = measure_distances(doc.scene, noise, measure_rng);
            emit(scene_out, to_json(doc).dump() + "\n");
        } else if (*tr) {
            const auto doc = scene_from_json(read_json_file(scene_in));
            const auto kind = parse_model_kind(model_name);
            const auto graph = build_graph(doc.distances, t_h, parse_propagation(propagation));
            const auto mcfg =
                make_model_config(kind, static_cast<Eigen::Index>(doc.scene.size()), hidden, dropout);
            TrainConfig tcfg;
            tcfg.epochs = epochs;
            tcfg.learning_rate = lr;
            tcfg.seed = train_seed;

            TrainResult result;
            const double seconds = time_run("train", [&] { result = train(mcfg, tcfg, graph, doc.scene); });
            const auto est = predict(mcfg, graph, result.weights);
            const json metrics = {{"model", std::string(to_string(kind))},
                                  {"rmse", evaluate_rmse(est, doc.scene)},
                                  {"frobenius", agent_error_frobenius(est, doc.scene)},
                                  {"final_loss", result.loss_history.back()},
                                  {"seconds", seconds},
                                  {"threshold", t_h},
                                  {"propagation", propagation}};
            emit(metrics_out, metrics.dump(2) + "\n");
            if (!checkpoint_out.empty())
                write_text_file(checkpoint_out, to_json(Checkpoint{mcfg, tcfg, t_h, result.weights}).dump() + "\n");
            if (!loss_out.empty()) {
                std::ostringstream os;
                write_loss_csv(os, result.loss_history);
                write_text_file(loss_out, os.str());
            }
        } else if (*nt) {
            run_scenario(Scenario::NoiseTable, noise_args);
        } else if (*as) {
            run_scenario(Scenario::AnchorSweep, anchor_args);
        } else if (*ts) {
            run_scenario(Scenario::ThresholdSweep, threshold_args);
        } else if (*sp) {
            run_scenario(Scenario::SpectralReport, spectral_args);
        } else if (*sr) {
            run_scenario(Scenario::SingleRun, single_args);
        }
    } catch (const std::exception& e) {
        std::cerr << "gnnloc: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
