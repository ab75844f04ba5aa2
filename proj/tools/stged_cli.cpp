// Command-line entry point: simulate -> train -> eval -> ablate -> analyze,
// plus gradcheck. Every artifact embeds the command line and seed.

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stged/core/errors.hpp"
#include "stged/model/diagnostics.hpp"
#include "stged/model/persist.hpp"
#include "stged/sim/simulator.hpp"
#include "stged/tcn/analysis.hpp"
#include "stged/tcn/labels.hpp"
#include "stged/tcn/stats.hpp"
#include "stged/tcn/stream.hpp"
#include "stged/train/ablation.hpp"
#include "stged/train/report.hpp"
#include "stged/train/trainer.hpp"

namespace fs = std::filesystem;
using namespace stged;

namespace {

constexpr const char* kOutputDirEnv = "STGED_OUTPUT_DIR";

std::string command_line(int argc, char** argv) {
  std::string out;
  for (int k = 0; k < argc; ++k) {
    std::string arg = argv[k];
    if (k == 0) arg = fs::path(arg).filename().string();
    if (!out.empty()) out += ' ';
    out += arg.find_first_of(" \t\"'") == std::string::npos ? arg : "'" + arg + "'";
  }
  return out;
}

/// Output locations: relative paths land in the output directory, which
/// the environment variable overrides.
struct Output {
  std::string dir = ".";

  fs::path resolve(const std::string& file) const {
    fs::path p(file);
    return p.is_absolute() ? p : fs::path(dir) / p;
  }
  void apply_env() {
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) dir = env;
  }
};

void log_config(const CLI::App& sub, const Output& out) {
  std::cerr << "[" << sub.get_name() << "] resolved config:\n" << sub.config_to_str(true, false);
  std::cerr << "[" << sub.get_name() << "] output directory: " << out.dir << '\n';
}

void write_file(const fs::path& path, const std::string& content) {
  train::write_text_file(path, content);
  std::cerr << "wrote " << path.string() << '\n';
}

struct TrainFlags {
  std::string model = "gtc-lstm";
  std::size_t window = 5;
  std::string preset = "desk";
  std::size_t epochs = 20;
  double lr = -1;  // negative: preset value
  std::size_t batch = 8;
  std::string optimizer = "adam";
  std::size_t patience = 5;
  std::uint64_t seed = 1;
  std::uint64_t split_seed = 1;
  double threshold_db = tcn::kDefaultThresholdDb;
  double dropout = 0.2;
  double threshold = 0.5;

  void attach(CLI::App* app) {
    app->add_option("--model", model, "mlp, lstm, gru, stged, or <spatial>[-<temporal>] e.g. gtc-lstm, gat");
    app->add_option("--windows", window, "Window size w (snapshots per input)")->check(CLI::PositiveNumber);
    app->add_option("--preset", preset, "Width preset")->check(CLI::IsMember({"desk", "paper"}));
    app->add_option("--epochs", epochs, "Maximum epochs")->check(CLI::PositiveNumber);
    app->add_option("--lr", lr, "Learning rate (default: preset value)");
    app->add_option("--batch", batch, "Windows per optimizer step")->check(CLI::PositiveNumber);
    app->add_option("--optimizer", optimizer)->check(CLI::IsMember({"adam", "sgd"}));
    app->add_option("--patience", patience, "Early-stopping patience in epochs (0 disables)");
    app->add_option("--seed", seed, "Seed for weights, balancing, shuffling and dropout");
    app->add_option("--split-seed", split_seed, "Seed of the 90:5:5 window split");
    app->add_option("--threshold-db", threshold_db, "Path-loss label threshold (dB)");
    app->add_option("--dropout", dropout);
    app->add_option("--threshold", threshold, "Decision threshold on scores");
  }

  model::ModelConfig model_config() const {
    auto base = preset == "paper" ? model::ModelConfig::paper() : model::ModelConfig::desk();
    base.window = window;
    base.dropout = dropout;
    base.threshold = threshold;
    return model::with_model_name(base, model);
  }

  train::TrainConfig train_config() const {
    auto c = preset == "paper" ? train::TrainConfig::paper() : train::TrainConfig::desk();
    c.epochs = epochs;
    if (lr >= 0) c.learning_rate = lr;
    c.batch_windows = batch;
    c.optimizer = train::parse_optimizer(optimizer);
    c.patience = patience;
    c.seed = seed;
    c.validate();
    return c;
  }

  train::SplitConfig split() const {
    train::SplitConfig s;
    s.seed = split_seed;
    return s;
  }
};

tcn::Dataset load_dataset(const std::string& path) {
  if (!fs::exists(path)) throw std::runtime_error("input file not found: " + path);
  auto d = tcn::read_stream(fs::path(path));
  tcn::validate(d);
  return d;
}

std::string csv_matrix(const std::vector<std::vector<double>>& m, const Provenance& p, const std::string& corner,
                       bool integers) {
  std::ostringstream s;
  train::write_provenance_header(s, p);
  s << corner;
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  for (std::size_t c = 0; c < cols; ++c) s << ',' << c;
  s << '\n';
  for (std::size_t r = 0; r < m.size(); ++r) {
    s << r;
    for (double v : m[r]) {
      s << ',';
      if (integers)
        s << static_cast<long long>(v);
      else
        s << v;
    }
    s << '\n';
  }
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatio-temporal link prediction for tactical communication networks"};
  app.set_config("--config", "", "Read options from a TOML/INI file (same names as the flags)");
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  Output out;
  app.add_option("--out-dir", out.dir, "Directory for outputs (overridden by $STGED_OUTPUT_DIR)");
  const Provenance base{command_line(argc, argv), 0};

  // simulate ---------------------------------------------------------------
  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic snapshot stream");
  sim::SimConfig sc;
  std::string mobility = "rwp";
  std::string sim_out = "snapshots.ndjson";
  bool print_stats = false;
  simulate->add_option("--mobility", mobility)->check(
      CLI::IsMember({"rwp", "grouped", "random_waypoint", "grouped_waypoint"}));
  simulate->add_option("--nodes", sc.n_nodes);
  simulate->add_option("--steps", sc.n_steps);
  simulate->add_option("--vmax", sc.v_max, "Maximum speed (m/s)");
  simulate->add_option("--seed", sc.seed);
  simulate->add_option("--rate", sc.messages_per_pair_rate, "Message records per in-range pair per second");
  simulate->add_option("--arena", sc.arena_m, "Arena side (m)");
  simulate->add_option("--pause", sc.pause_s, "Random-waypoint pause (s)");
  simulate->add_option("--groups", sc.n_groups);
  simulate->add_option("--group-radius", sc.group_radius_m);
  simulate->add_option("--frequency", sc.frequency_hz);
  simulate->add_option("--tx-height", sc.tx_height_m);
  simulate->add_option("--rx-height", sc.rx_height_m);
  simulate->add_option("--threshold-db", sc.label_threshold_db);
  simulate->add_option("--margin-db", sc.emit_margin_db, "Emit records up to threshold + margin");
  simulate->add_option("--out", sim_out, "Snapshot stream file");
  simulate->add_flag("--stats", print_stats, "Print dataset statistics");

  // train ------------------------------------------------------------------
  auto* train_cmd = app.add_subcommand("train", "Train a model on a snapshot stream");
  TrainFlags tf;
  std::string train_data, checkpoint = "model.ckpt", loss_csv = "loss.csv";
  train_cmd->add_option("--data", train_data, "Snapshot stream file")->required();
  tf.attach(train_cmd);
  train_cmd->add_option("--checkpoint", checkpoint, "Checkpoint file (sidecar: <file>.json)");
  train_cmd->add_option("--loss-csv", loss_csv);

  // eval -------------------------------------------------------------------
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a trained model");
  std::string eval_data, eval_ckpt = "model.ckpt", eval_out = "metrics.csv", subset = "test";
  double eval_threshold = -1;
  eval_cmd->add_option("--data", eval_data)->required();
  eval_cmd->add_option("--checkpoint", eval_ckpt);
  eval_cmd->add_option("--subset", subset)->check(CLI::IsMember({"test", "val", "train", "all"}));
  eval_cmd->add_option("--threshold", eval_threshold, "Decision threshold (default: the model's)");
  eval_cmd->add_option("--out", eval_out, "Metrics CSV");

  // ablate -----------------------------------------------------------------
  auto* ablate = app.add_subcommand("ablate", "Train and test the spatial x temporal grid");
  TrainFlags af;
  std::string ablate_data, ablate_out = "ablation.csv";
  ablate->add_option("--data", ablate_data)->required();
  af.attach(ablate);
  ablate->add_option("--out", ablate_out, "Grid CSV");

  // analyze ----------------------------------------------------------------
  auto* analyze = app.add_subcommand("analyze", "Connectivity and hop-count analysis");
  std::string analyze_data;
  double analyze_threshold = tcn::kDefaultThresholdDb;
  bool hops = false, svg = false;
  std::size_t at = 0, node = 0;
  analyze->add_option("--data", analyze_data)->required();
  analyze->add_option("--threshold-db", analyze_threshold);
  analyze->add_flag("--hops", hops, "Write hop-count matrices");
  analyze->add_flag("--svg", svg, "Also write SVG heatmaps");
  analyze->add_option("--at", at, "Snapshot position for the hop matrix");
  analyze->add_option("--node", node, "Source node for the hop-count series");

  // gradcheck --------------------------------------------------------------
  auto* gradcheck = app.add_subcommand("gradcheck", "Finite-difference gradient checks");
  double eps = 1e-5, tolerance = 1e-4;
  std::uint64_t gc_seed = 1;
  std::size_t max_entries = 512;
  gradcheck->add_option("--eps", eps);
  gradcheck->add_option("--tolerance", tolerance);
  gradcheck->add_option("--seed", gc_seed);
  gradcheck->add_option("--max-entries", max_entries, "Entries checked per parameter tensor (0 = all)");

  CLI11_PARSE(app, argc, argv);
  out.apply_env();

  try {
    if (simulate->parsed()) {
      sc.mobility = sim::parse_mobility(mobility);
      log_config(*simulate, out);
      auto dataset = sim::simulate(sc);
      dataset.provenance = {base.command, sc.seed};
      const auto path = out.resolve(sim_out);
      if (path.has_parent_path()) fs::create_directories(path.parent_path());
      tcn::write_stream(path, dataset);
      // The file must read back to the same dataset.
      if (!(tcn::read_stream(path) == dataset)) throw std::runtime_error("snapshot stream failed to round-trip");
      std::cerr << "wrote " << path.string() << " (" << dataset.size() << " snapshots)\n";
      if (print_stats) {
        const auto st = tcn::compute_stats(dataset);
        std::cout << "states " << st.states << "\navg_nodes " << st.avg_nodes << "\navg_edges " << st.avg_edges << '\n';
        for (std::size_t k = 0; k < st.node.size(); ++k)
          std::cout << tcn::DatasetStats::kNodeFeatures[k] << " mean " << st.node[k].mean << " std " << st.node[k].stddev
                    << '\n';
        for (std::size_t k = 0; k < st.edge.size(); ++k)
          std::cout << tcn::DatasetStats::kEdgeFeatures[k] << " mean " << st.edge[k].mean << " std " << st.edge[k].stddev
                    << '\n';
      }
      return 0;
    }

    if (train_cmd->parsed()) {
      log_config(*train_cmd, out);
      const auto dataset = load_dataset(train_data);
      const auto mc = tf.model_config();
      const auto tc = tf.train_config();
      const auto experiment = train::prepare_experiment(dataset, mc.window, tf.split(), tf.threshold_db);
      std::cerr << "windows: " << experiment.split.train.size() << " train / " << experiment.split.val.size()
                << " val / " << experiment.split.test.size() << " test\n";
      auto m = model::make_model(mc, tf.seed);
      const auto result = train::train_model(*m, experiment, tc, [](const train::EpochRecord& r) {
        std::cerr << "epoch " << r.epoch << " train_loss " << r.train_loss << " val_loss " << r.val_loss << '\n';
      });
      std::cerr << "best epoch " << result.best_epoch << (result.stopped_early ? " (stopped early)" : "") << '\n';
      const Provenance prov{base.command, tf.seed};
      const nlohmann::json extra{{"window", mc.window},
                                 {"split_seed", tf.split_seed},
                                 {"threshold_db", tf.threshold_db},
                                 {"best_epoch", result.best_epoch}};
      const auto ckpt = out.resolve(checkpoint);
      if (ckpt.has_parent_path()) fs::create_directories(ckpt.parent_path());
      model::save_model(ckpt, *m, experiment.data->scaler(), prov, extra);
      std::cerr << "wrote " << ckpt.string() << " and " << model::sidecar_path(ckpt).string() << '\n';
      std::ostringstream loss;
      train::write_loss_csv(loss, result, prov);
      write_file(out.resolve(loss_csv), loss.str());
      return 0;
    }

    if (eval_cmd->parsed()) {
      log_config(*eval_cmd, out);
      const auto dataset = load_dataset(eval_data);
      if (!fs::exists(eval_ckpt)) throw std::runtime_error("checkpoint not found: " + eval_ckpt);
      const auto saved = model::load_model(eval_ckpt);
      const auto& cfg = saved.model->config();
      train::SplitConfig split;
      split.seed = saved.extra.value("split_seed", std::uint64_t{1});
      const double threshold_db = saved.extra.value("threshold_db", tcn::kDefaultThresholdDb);
      const auto experiment = train::prepare_experiment(dataset, cfg.window, split, threshold_db, &saved.scaler);
      std::vector<std::size_t> windows;
      if (subset == "test") windows = experiment.split.test;
      if (subset == "val") windows = experiment.split.val;
      if (subset == "train") windows = experiment.split.train;
      if (subset == "all")
        for (std::size_t k = 0; k < experiment.windows.size(); ++k) windows.push_back(k);
      const double threshold = eval_threshold > 0 ? eval_threshold : cfg.threshold;
      const auto metrics = train::evaluate(*saved.model, experiment, windows, threshold);
      const std::vector<train::ResultRow> rows{{cfg.name(), cfg.window, metrics}};
      std::cout << train::metrics_table(rows);
      std::ostringstream csv;
      train::write_metrics_csv(csv, rows, {base.command, saved.provenance.seed});
      write_file(out.resolve(eval_out), csv.str());
      return 0;
    }

    if (ablate->parsed()) {
      log_config(*ablate, out);
      const auto dataset = load_dataset(ablate_data);
      auto mc = af.model_config();
      const auto experiment = train::prepare_experiment(dataset, mc.window, af.split(), af.threshold_db);
      const auto cells = train::run_ablation(experiment, mc, af.train_config(), af.seed, [](const train::AblationCell& c) {
        std::cerr << model::to_string(c.spatial) << "-" << model::to_string(c.temporal) << ": "
                  << (c.ok ? "accuracy " + std::to_string(c.metrics.accuracy) : "failed: " + c.error) << '\n';
      });
      std::cout << train::ablation_table(cells);
      std::ostringstream csv;
      train::write_ablation_csv(csv, cells, mc.window, {base.command, af.seed});
      write_file(out.resolve(ablate_out), csv.str());
      return 0;
    }

    if (analyze->parsed()) {
      log_config(*analyze, out);
      const auto dataset = load_dataset(analyze_data);
      const Provenance prov{base.command, dataset.provenance.seed};
      std::ostringstream series;
      train::write_provenance_header(series, prov);
      series << "t,links,density,reachable_pairs,max_hops,mean_hops\n";
      for (const auto& p : tcn::connectivity_over_time(dataset, analyze_threshold))
        series << p.t << ',' << p.links << ',' << p.density << ',' << p.reachable_pairs << ',' << p.max_hops << ','
               << p.mean_hops << '\n';
      write_file(out.resolve("connectivity.csv"), series.str());
      const auto mean = tcn::mean_connectivity(dataset, analyze_threshold);
      write_file(out.resolve("connectivity_mean.csv"), csv_matrix(mean, prov, "src\\dst", false));
      if (svg)
        write_file(out.resolve("connectivity_mean.svg"),
                   tcn::svg_heatmap(mean, "Fraction of steps each link is present", "sender", "receiver", prov));
      if (hops) {
        if (at >= dataset.size())
          throw std::runtime_error("--at " + std::to_string(at) + " outside the " + std::to_string(dataset.size()) +
                                   " snapshots");
        const auto h = tcn::hop_counts(*dataset.snapshots[at], analyze_threshold);
        std::vector<std::vector<double>> matrix(h.size(), std::vector<double>(h.size()));
        std::uint32_t max_hops = 0;
        for (std::size_t i = 0; i < h.size(); ++i)
          for (std::size_t j = 0; j < h.size(); ++j) {
            matrix[i][j] = h(i, j);
            max_hops = std::max(max_hops, h(i, j));
          }
        const std::string tag = "t" + std::to_string(dataset.snapshots[at]->t);
        write_file(out.resolve("hops_" + tag + ".csv"), csv_matrix(matrix, prov, "src\\dst", true));
        std::cout << "max hops at " << tag << ": " << max_hops << '\n';
        const auto raw = tcn::hop_series(dataset, node, analyze_threshold);
        std::vector<std::vector<double>> over_time;
        for (const auto& row : raw) over_time.emplace_back(row.begin(), row.end());
        const std::string node_tag = "node" + std::to_string(node);
        write_file(out.resolve("hops_" + node_tag + ".csv"), csv_matrix(over_time, prov, "step\\dst", true));
        if (svg) {
          write_file(out.resolve("hops_" + tag + ".svg"),
                     tcn::svg_heatmap(matrix, "Hop counts at " + tag + " (0 = unreachable)", "source", "destination", prov));
          write_file(out.resolve("hops_" + node_tag + ".svg"),
                     tcn::svg_heatmap(over_time, "Hop count from " + node_tag + " over time (0 = unreachable)", "step",
                                      "destination", prov));
        }
      }
      return 0;
    }

    if (gradcheck->parsed()) {
      log_config(*gradcheck, out);
      bool ok = true;
      for (const auto& c : model::gradient_suite(eps, gc_seed, max_entries)) {
        const bool pass = c.result.max_error < tolerance;
        ok = ok && pass;
        std::cout << (pass ? "PASS " : "FAIL ") << c.name << " max_rel_error " << c.result.max_error << " ("
                  << c.result.entries_checked << " of " << c.parameters << " entries, worst "
                  << c.result.worst_parameter << "[" << c.result.worst_index << "])\n";
      }
      std::cout << (ok ? "gradcheck passed\n" : "gradcheck failed\n");
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
