// Experiment configuration, sweep runners and CSV emission.
//
// A sweep is a list of cells (noise condition x anchor count x threshold x
// model). Each cell trains `trials` independent networks and reports the
// mean and spread of the agent RMSE. Trial t draws its scene from
// mix_seed(seed, t), so every cell of a sweep sees the same node layouts
// and GCN/MLP are compared on identical measurements and initial weights.
#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "gnnloc/graph.hpp"
#include "gnnloc/model.hpp"
#include "gnnloc/scene.hpp"
#include "gnnloc/spectral.hpp"
#include "gnnloc/train.hpp"

namespace gnnloc {

enum class Scenario { NoiseTable, AnchorSweep, ThresholdSweep, SpectralReport, SingleRun };

inline std::string_view to_string(Scenario s) {
    switch (s) {
        case Scenario::NoiseTable: return "noise_table";
        case Scenario::AnchorSweep: return "anchor_sweep";
        case Scenario::ThresholdSweep: return "threshold_sweep";
        case Scenario::SpectralReport: return "spectral_report";
        case Scenario::SingleRun: return "single_run";
    }
    return "?";
}

inline Scenario parse_scenario(std::string_view s) {
    for (auto sc : {Scenario::NoiseTable, Scenario::AnchorSweep, Scenario::ThresholdSweep, Scenario::SpectralReport,
                    Scenario::SingleRun})
        if (to_string(sc) == s) return sc;
    throw ConfigError("unknown scenario '" + std::string(s) + "'");
}

struct ExperimentConfig {
    Scenario scenario = Scenario::SingleRun;
    std::size_t n = 500;
    std::size_t n_anchors = 50;
    std::vector<std::size_t> anchor_grid;  // anchor_sweep only
    double area_side = 5.0;
    double nlos_max = 10.0;
    std::vector<NoiseParams> noise;        // one or more (sigma_sq, p_nlos) conditions
    double t_h = 1.2;
    std::vector<double> t_h_grid;          // threshold_sweep only; +inf means fully connected
    std::vector<ModelKind> models;
    Propagation propagation = Propagation::Symmetric;
    std::vector<Eigen::Index> hidden{512};
    double dropout = 0.5;
    int epochs = 200;
    double learning_rate = 0.01;
    int trials = 5;
    std::uint64_t seed = 1;
    int filter_order = 2;
    int threads = 1;

    void validate() const {
        if (noise.empty()) throw ConfigError("noise list is empty");
        for (const auto& nz : noise) nz.validate();
        if (trials < 1) throw ConfigError("trials must be >= 1");
        if (models.empty()) throw ConfigError("model list is empty");
        if (threads < 1) throw ConfigError("threads must be >= 1");
        if (scenario == Scenario::AnchorSweep) {
            if (anchor_grid.empty()) throw ConfigError("anchor_grid is empty");
            for (auto a : anchor_grid)
                if (a < 1 || a >= n) throw ConfigError("anchor_grid entries must lie in [1, n-1]");
        } else if (n_anchors < 1 || n_anchors >= n) {
            throw ConfigError("need 1 <= n_anchors < n");
        }
        if (scenario == Scenario::ThresholdSweep) {
            if (t_h_grid.empty()) throw ConfigError("t_h_grid is empty");
            for (std::size_t i = 0; i < t_h_grid.size(); ++i) {
                if (!(t_h_grid[i] > 0.0)) throw ConfigError("t_h_grid entries must be positive");
                if (i > 0 && !(t_h_grid[i] > t_h_grid[i - 1])) throw ConfigError("t_h_grid must be ascending");
            }
        } else if (!(t_h > 0.0)) {
            throw ConfigError("t_h must be positive");
        }
    }
};

namespace detail {

inline std::vector<NoiseParams> noise_list(std::initializer_list<std::pair<double, double>> pairs, double nlos_max) {
    std::vector<NoiseParams> out;
    for (auto [s, p] : pairs) out.push_back({s, p, nlos_max});
    return out;
}

}  // namespace detail

/// Defaults per scenario: five reference noise conditions, the 20..160 anchor grid,
/// the 0.2..4.0 threshold grid plus a fully connecting threshold.
inline ExperimentConfig default_config(Scenario scenario) {
    ExperimentConfig c;
    c.scenario = scenario;
    c.models = {ModelKind::Gcn, ModelKind::Mlp};
    switch (scenario) {
        case Scenario::NoiseTable:
            c.noise = detail::noise_list({{0.04, 0.0}, {0.1, 0.1}, {0.25, 0.1}, {0.25, 0.3}, {0.5, 0.5}}, c.nlos_max);
            break;
        case Scenario::AnchorSweep:
            c.noise = detail::noise_list({{0.25, 0.1}, {0.25, 0.3}}, c.nlos_max);
            for (std::size_t a = 20; a <= 160; a += 20) c.anchor_grid.push_back(a);
            break;
        case Scenario::ThresholdSweep:
            c.noise = detail::noise_list({{0.1, 0.1}, {0.25, 0.1}, {0.25, 0.3}}, c.nlos_max);
            c.models = {ModelKind::Gcn};
            for (int i = 1; i <= 20; ++i) c.t_h_grid.push_back(0.2 * i);
            c.t_h_grid.push_back(std::numeric_limits<double>::infinity());
            break;
        case Scenario::SpectralReport:
            c.noise = detail::noise_list({{0.1, 0.0}}, c.nlos_max);
            c.trials = 1;
            break;
        case Scenario::SingleRun:
            c.noise = detail::noise_list({{0.25, 0.3}}, c.nlos_max);
            c.models = {ModelKind::Gcn};
            c.trials = 1;
            break;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Flat key = value config documents.

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto pos = s.find(sep, start);
        const auto piece = trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (!piece.empty()) out.push_back(piece);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a number: '" + v + "'");
    }
}

inline long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const long long i = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not an integer: '" + v + "'");
    }
}

/// "a,b,c" or "start:stop:step" pieces, comma separated.
inline std::vector<double> parse_grid(const std::string& key, const std::string& v) {
    std::vector<double> out;
    for (const auto& item : split(v, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() == 3) {
            const double lo = parse_double(key, parts[0]), hi = parse_double(key, parts[1]),
                         step = parse_double(key, parts[2]);
            if (!(step > 0.0)) throw ConfigError("config key '" + key + "': range step must be positive");
            for (long i = 0;; ++i) {
                const double x = std::round((lo + step * static_cast<double>(i)) * 1e9) / 1e9;
                if (x > hi + 1e-9) break;
                out.push_back(x);
            }
        } else if (parts.size() == 1) {
            out.push_back(parse_double(key, parts[0]));
        } else {
            throw ConfigError("config key '" + key + "': bad grid item '" + item + "'");
        }
    }
    return out;
}

inline std::size_t parse_count(const std::string& key, const std::string& v) {
    const auto i = parse_int(key, v);
    if (i < 0) throw ConfigError("config key '" + key + "' must be nonnegative");
    return static_cast<std::size_t>(i);
}

}  // namespace detail

/// Applies one key = value assignment on top of `cfg`.
inline void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    using namespace detail;
    if (key == "scenario") {
        cfg.scenario = parse_scenario(value);
    } else if (key == "n") {
        cfg.n = parse_count(key, value);
    } else if (key == "n_anchors") {
        cfg.n_anchors = parse_count(key, value);
    } else if (key == "anchor_grid") {
        cfg.anchor_grid.clear();
        for (double a : parse_grid(key, value)) cfg.anchor_grid.push_back(static_cast<std::size_t>(std::llround(a)));
    } else if (key == "area_side") {
        cfg.area_side = parse_double(key, value);
    } else if (key == "nlos_max") {
        cfg.nlos_max = parse_double(key, value);
        for (auto& nz : cfg.noise) nz.nlos_max = cfg.nlos_max;
    } else if (key == "sigma_sq" || key == "p_nlos") {
        if (cfg.noise.size() != 1) cfg.noise = {NoiseParams{0.25, 0.3, cfg.nlos_max}};
        (key == "sigma_sq" ? cfg.noise[0].sigma_sq : cfg.noise[0].p_nlos) = parse_double(key, value);
    } else if (key == "noise") {
        cfg.noise.clear();
        for (const auto& pair : split(value, ',')) {
            const auto parts = split(pair, ':');
            if (parts.size() != 2) throw ConfigError("noise entries are sigma_sq:p_nlos, got '" + pair + "'");
            cfg.noise.push_back({parse_double(key, parts[0]), parse_double(key, parts[1]), cfg.nlos_max});
        }
    } else if (key == "t_h") {
        cfg.t_h = parse_double(key, value);
    } else if (key == "t_h_grid") {
        cfg.t_h_grid = parse_grid(key, value);
    } else if (key == "models" || key == "model") {
        cfg.models.clear();
        for (const auto& m : split(value, ',')) cfg.models.push_back(parse_model_kind(m));
    } else if (key == "propagation") {
        cfg.propagation = parse_propagation(value);
    } else if (key == "hidden") {
        cfg.hidden.clear();
        for (const auto& h : split(value, ',')) {
            const auto w = parse_int(key, h);
            if (w < 1) throw ConfigError("hidden widths must be positive");
            cfg.hidden.push_back(static_cast<Eigen::Index>(w));
        }
    } else if (key == "dropout") {
        cfg.dropout = parse_double(key, value);
    } else if (key == "epochs") {
        cfg.epochs = static_cast<int>(parse_int(key, value));
    } else if (key == "learning_rate") {
        cfg.learning_rate = parse_double(key, value);
    } else if (key == "trials") {
        cfg.trials = static_cast<int>(parse_int(key, value));
    } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "filter_order") {
        cfg.filter_order = static_cast<int>(parse_int(key, value));
    } else if (key == "threads") {
        cfg.threads = static_cast<int>(parse_int(key, value));
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

/// Parses a flat `key = value` document ('#' starts a comment) on top of
/// the defaults for `fallback` (or for the document's own `scenario` key).
inline ExperimentConfig parse_config(std::istream& in, Scenario fallback) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto body = detail::trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        entries.emplace_back(detail::trim(body.substr(0, eq)), detail::trim(body.substr(eq + 1)));
    }
    Scenario scenario = fallback;
    for (const auto& [k, v] : entries)
        if (k == "scenario") scenario = parse_scenario(v);
    auto cfg = default_config(scenario);
    for (const auto& [k, v] : entries)
        if (k != "scenario") apply_setting(cfg, k, v);
    return cfg;
}

inline ExperimentConfig parse_config(std::string_view text, Scenario fallback) {
    std::istringstream in{std::string(text)};
    return parse_config(in, fallback);
}

// ---------------------------------------------------------------------------
// Cells and results.

/// One point of a sweep: fully determines a set of trials.
struct CellSpec {
    std::size_t n = 500;
    std::size_t n_anchors = 50;
    double area_side = 5.0;
    NoiseParams noise;
    double t_h = 1.2;
    Propagation propagation = Propagation::Symmetric;
    ModelKind model = ModelKind::Gcn;
    std::vector<Eigen::Index> hidden{512};
    double dropout = 0.5;
    int epochs = 200;
    double learning_rate = 0.01;
    int trials = 5;
    std::uint64_t seed = 1;

    /// Canonical text form; the config hash is taken over this.
    std::string canonical() const {
        std::ostringstream os;
        os << std::setprecision(17) << "n=" << n << ";n_anchors=" << n_anchors << ";area_side=" << area_side
           << ";sigma_sq=" << noise.sigma_sq << ";p_nlos=" << noise.p_nlos << ";nlos_max=" << noise.nlos_max
           << ";t_h=" << t_h << ";propagation=" << to_string(propagation) << ";model=" << to_string(model)
           << ";hidden=";
        for (std::size_t i = 0; i < hidden.size(); ++i) os << (i ? "," : "") << hidden[i];
        os << ";dropout=" << dropout << ";epochs=" << epochs << ";learning_rate=" << learning_rate
           << ";trials=" << trials << ";seed=" << seed;
        return os.str();
    }
};

/// FNV-1a, 64 bit.
inline std::uint64_t config_hash(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

struct TrialResult {
    double rmse = 0.0;
    double frobenius = 0.0;
    double spread_ratio = 0.0;  // std of predicted agent positions / std of true ones
    double seconds = 0.0;
    double final_loss = 0.0;
};

struct ResultRow {
    Scenario scenario = Scenario::SingleRun;
    CellSpec cell;
    std::vector<TrialResult> trials;

    double rmse_mean() const {
        double s = 0.0;
        for (const auto& t : trials) s += t.rmse;
        return trials.empty() ? 0.0 : s / static_cast<double>(trials.size());
    }
    double rmse_std() const {
        if (trials.size() < 2) return 0.0;
        const double m = rmse_mean();
        double s = 0.0;
        for (const auto& t : trials) s += (t.rmse - m) * (t.rmse - m);
        return std::sqrt(s / static_cast<double>(trials.size() - 1));
    }
    double mean_of(double TrialResult::*field) const {
        double s = 0.0;
        for (const auto& t : trials) s += t.*field;
        return trials.empty() ? 0.0 : s / static_cast<double>(trials.size());
    }
};

struct TimingRecord {
    std::string label;
    double seconds = 0.0;
};

struct ExperimentResult {
    Scenario scenario = Scenario::SingleRun;
    std::vector<ResultRow> rows;
    std::vector<TimingRecord> timings;

    static constexpr std::string_view csv_header =
        "scenario,n,n_anchors,sigma_sq,p_nlos,t_h,model,propagation,hidden,epochs,trials,rmse_mean,rmse_std,"
        "frobenius_mean,spread_ratio_mean,seconds_mean,seed,config_hash";

    void write_csv(std::ostream& os) const {
        os << csv_header << '\n';
        for (const auto& r : rows) {
            const auto& c = r.cell;
            std::ostringstream hidden;
            for (std::size_t i = 0; i < c.hidden.size(); ++i) hidden << (i ? "|" : "") << c.hidden[i];
            os << std::setprecision(12) << to_string(r.scenario) << ',' << c.n << ',' << c.n_anchors << ','
               << c.noise.sigma_sq << ',' << c.noise.p_nlos << ',' << c.t_h << ',' << to_string(c.model) << ','
               << to_string(c.propagation) << ',' << hidden.str() << ',' << c.epochs << ',' << c.trials << ','
               << std::setprecision(17) << r.rmse_mean() << ',' << r.rmse_std() << ',' << r.mean_of(&TrialResult::frobenius) << ','
               << r.mean_of(&TrialResult::spread_ratio) << ',' << r.mean_of(&TrialResult::seconds) << ','
               << c.seed << ",0x" << std::hex << std::setw(16) << std::setfill('0')
               << config_hash(c.canonical()) << std::dec << std::setfill(' ') << '\n';
        }
    }

    /// Rows matching every given coordinate (NaN / empty = wildcard).
    const ResultRow& find(ModelKind model, double sigma_sq, double p_nlos, double t_h = std::nan(""),
                          std::size_t n_anchors = 0) const {
        for (const auto& r : rows) {
            const auto& c = r.cell;
            if (c.model != model || c.noise.sigma_sq != sigma_sq || c.noise.p_nlos != p_nlos) continue;
            if (!std::isnan(t_h) && c.t_h != t_h) continue;
            if (n_anchors != 0 && c.n_anchors != n_anchors) continue;
            return r;
        }
        throw ContractError("no result row for the requested coordinates");
    }
};

/// Runs `fn` and returns its wall-clock duration on the steady clock,
/// optionally appending it to `log`.
template <class Fn>
double time_run(std::string_view label, Fn&& fn, std::vector<TimingRecord>* log = nullptr) {
    const auto start = std::chrono::steady_clock::now();
    std::forward<Fn>(fn)();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (log) log->push_back({std::string(label), secs});
    return secs;
}

/// Seeds for trial t of a sweep. Independent of model, threshold and anchor
/// count so that those axes are compared on common random numbers.
struct TrialSeeds {
    std::uint64_t scene;
    std::uint64_t measure;
    std::uint64_t train;

    static TrialSeeds derive(std::uint64_t master, int trial) {
        const auto base = mix_seed(master, static_cast<std::uint64_t>(trial));
        return {mix_seed(base, 0), mix_seed(base, 1), mix_seed(base, 2)};
    }
};

/// sqrt(var_x + var_y) over agent rows.
inline double agent_spread(const Matrix& positions, std::size_t n_anchors) {
    const auto agents = positions.bottomRows(positions.rows() - static_cast<Eigen::Index>(n_anchors));
    if (agents.rows() < 2) return 0.0;
    const Eigen::RowVector2d mean = agents.colwise().mean();
    return std::sqrt((agents.rowwise() - mean).squaredNorm() / static_cast<double>(agents.rows()));
}

/// Scene and measurements for one trial. Positions are drawn for the full
/// node set; the anchor count only changes which rows are labelled.
inline std::pair<Scene, DistanceMatrix> trial_scene(const CellSpec& cell, int trial) {
    const auto seeds = TrialSeeds::derive(cell.seed, trial);
    Rng scene_rng(seeds.scene);
    Scene scene = generate_scene(cell.n, cell.n_anchors, cell.area_side, scene_rng);
    Rng measure_rng(seeds.measure);
    DistanceMatrix x = measure_distances(scene, cell.noise, measure_rng);
    return {std::move(scene), std::move(x)};
}

inline TrialResult run_trial(const CellSpec& cell, int trial) {
    auto [scene, x] = trial_scene(cell, trial);
    const auto graph = build_graph(x, cell.t_h, cell.propagation);
    const auto mcfg = make_model_config(cell.model, static_cast<Eigen::Index>(cell.n), cell.hidden, cell.dropout);
    TrainConfig tcfg;
    tcfg.epochs = cell.epochs;
    tcfg.learning_rate = cell.learning_rate;
    tcfg.seed = TrialSeeds::derive(cell.seed, trial).train;

    TrialResult out;
    TrainResult trained;
    out.seconds = time_run("train", [&] { trained = train(mcfg, tcfg, graph, Matrix(scene.anchors())); });
    const auto est = predict(mcfg, graph, trained.weights);
    out.rmse = evaluate_rmse(est, scene);
    out.frobenius = agent_error_frobenius(est, scene);
    const double truth_spread = agent_spread(scene.positions, scene.n_anchors);
    out.spread_ratio = truth_spread > 0.0 ? agent_spread(est, scene.n_anchors) / truth_spread : 0.0;
    out.final_loss = trained.loss_history.back();
    return out;
}

inline ResultRow run_cell(Scenario scenario, const CellSpec& cell) {
    ResultRow row{scenario, cell, {}};
    for (int t = 0; t < cell.trials; ++t) row.trials.push_back(run_trial(cell, t));
    return row;
}

namespace detail {

inline CellSpec base_cell(const ExperimentConfig& cfg) {
    CellSpec c;
    c.n = cfg.n;
    c.n_anchors = cfg.n_anchors;
    c.area_side = cfg.area_side;
    c.t_h = cfg.t_h;
    c.propagation = cfg.propagation;
    c.hidden = cfg.hidden;
    c.dropout = cfg.dropout;
    c.epochs = cfg.epochs;
    c.learning_rate = cfg.learning_rate;
    c.trials = cfg.trials;
    c.seed = cfg.seed;
    return c;
}

/// Runs cells on `threads` workers; output order follows `cells`.
inline ExperimentResult run_cells(Scenario scenario, const std::vector<CellSpec>& cells, int threads) {
    ExperimentResult result;
    result.scenario = scenario;
    result.rows.resize(cells.size());
    const double total = time_run(to_string(scenario), [&] {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(cells.size());
        auto worker = [&] {
            for (std::size_t i = next++; i < cells.size(); i = next++) {
                try {
                    result.rows[i] = run_cell(scenario, cells[i]);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        const auto n_workers = std::min<std::size_t>(static_cast<std::size_t>(threads), cells.size());
        if (n_workers <= 1) {
            worker();
        } else {
            std::vector<std::jthread> pool;
            for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        }
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    });
    result.timings.push_back({"total", total});
    return result;
}

}  // namespace detail

inline ExperimentResult run_noise_table(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<CellSpec> cells;
    for (const auto& nz : cfg.noise)
        for (auto m : cfg.models) {
            auto c = detail::base_cell(cfg);
            c.noise = nz;
            c.model = m;
            cells.push_back(c);
        }
    return detail::run_cells(Scenario::NoiseTable, cells, cfg.threads);
}

inline ExperimentResult run_anchor_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<CellSpec> cells;
    for (const auto& nz : cfg.noise)
        for (auto a : cfg.anchor_grid)
            for (auto m : cfg.models) {
                auto c = detail::base_cell(cfg);
                c.noise = nz;
                c.n_anchors = a;
                c.model = m;
                cells.push_back(c);
            }
    return detail::run_cells(Scenario::AnchorSweep, cells, cfg.threads);
}

inline ExperimentResult run_threshold_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<CellSpec> cells;
    for (const auto& nz : cfg.noise)
        for (double t : cfg.t_h_grid)
            for (auto m : cfg.models) {
                auto c = detail::base_cell(cfg);
                c.noise = nz;
                c.t_h = t;
                c.model = m;
                cells.push_back(c);
            }
    return detail::run_cells(Scenario::ThresholdSweep, cells, cfg.threads);
}

inline ExperimentResult run_single(const ExperimentConfig& cfg) {
    cfg.validate();
    auto c = detail::base_cell(cfg);
    c.noise = cfg.noise.front();
    c.model = cfg.models.front();
    return detail::run_cells(Scenario::SingleRun, {c}, 1);
}

/// Spectral report on the first trial scene of the first noise condition.
inline SpectralReport run_spectral_report(const ExperimentConfig& cfg) {
    cfg.validate();
    auto c = detail::base_cell(cfg);
    c.noise = cfg.noise.front();
    auto [scene, x] = trial_scene(c, 0);
    const auto graph = build_graph(x, c.t_h);
    Rng rng(mix_seed(cfg.seed, 0x5bec));
    return spectral_energy_report(graph, scene, c.noise, rng, cfg.filter_order);
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    switch (cfg.scenario) {
        case Scenario::NoiseTable: return run_noise_table(cfg);
        case Scenario::AnchorSweep: return run_anchor_sweep(cfg);
        case Scenario::ThresholdSweep: return run_threshold_sweep(cfg);
        case Scenario::SingleRun: return run_single(cfg);
        case Scenario::SpectralReport: break;
    }
    throw ConfigError("spectral_report produces a SpectralReport; call run_spectral_report");
}

}  // namespace gnnloc
