// Acceptance suite: one PASS/FAIL line per criterion on stdout, progress on
// stderr. Usage: acceptance <path-to-stged-cli>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "stged/core/errors.hpp"
#include "stged/model/diagnostics.hpp"
#include "stged/model/predictor.hpp"
#include "stged/model/spatial.hpp"
#include "stged/sim/propagation.hpp"
#include "stged/sim/simulator.hpp"
#include "stged/tcn/labels.hpp"
#include "stged/tcn/stats.hpp"
#include "stged/train/ablation.hpp"
#include "stged/train/balance.hpp"
#include "stged/train/trainer.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace stged;

namespace {

// Message rate of the learning datasets (criteria 7-9); see README.
constexpr double kLearningRate = 3.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double cpu_seconds() {
  timespec ts{};
  clock_gettime(CLOCK_PROCESS_CPUTIME_ID, &ts);
  return static_cast<double>(ts.tv_sec) + 1e-9 * static_cast<double>(ts.tv_nsec);
}

std::string num(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

void log(const std::string& s) { std::cerr << "[acceptance] " << s << std::endl; }

std::vector<std::uint32_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0u);
  rng.shuffle(std::span<std::uint32_t>(p));
  return p;
}

// --- criterion 1 -----------------------------------------------------------

Outcome gradient_fidelity() {
  const double start = cpu_seconds();
  const auto cases = model::gradient_suite(1e-5, 1, 512);
  const double elapsed = cpu_seconds() - start;
  bool ok = elapsed < 60.0;
  double worst = 0;
  std::string composed;
  for (const auto& c : cases) {
    ok = ok && c.result.max_error < 1e-4;
    worst = std::max(worst, c.result.max_error);
    log("gradient " + c.name + ": " + sci(c.result.max_error) + " over " + std::to_string(c.result.entries_checked) +
        "/" + std::to_string(c.parameters) + " entries");
    if (c.name == "stged-micro")
      composed = std::to_string(c.result.entries_checked) + "/" + std::to_string(c.parameters);
  }
  return {ok, std::to_string(cases.size()) + " cases, max rel error " + sci(worst) + ", composed net entries " +
                  composed + ", " + num(elapsed, 1) + " s"};
}

// --- criterion 2 -----------------------------------------------------------

Outcome attention_normalization() {
  Rng rng(2);
  double worst = 0;
  std::size_t checked = 0;
  model::FeatureScaler scaler;
  scaler.edge_mean = {2000.0, 120.0, 6.7e-6, 0.5};
  scaler.edge_std = {1000.0, 10.0, 3.3e-6, 0.29};
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.index(8);
    const std::size_t heads = std::size_t{1} << rng.index(3);
    diff::ParameterStore store;
    const auto gtc = model::GtcWeights::create(store, "gtc", model::kNodeFeatures, 8, heads, rng);
    const auto gat = model::GatWeights::create(store, "gat", model::kNodeFeatures, 8, heads, true, rng);
    const auto gatv2 = model::Gatv2Weights::create(store, "gatv2", model::kNodeFeatures, 8, heads, true, rng);
    const auto snap = model::random_snapshot(n, n > 1 ? 1 + rng.index(4 * n) : 0, 0, rng);
    const auto g = model::prepare_graph(snap, scaler);
    if (g.edge_count() == 0) continue;
    diff::Tape tape;
    auto x = tape.constant(stged::testing::random_matrix(n, model::kNodeFeatures, rng, -3, 3));
    for (const auto& out : {model::gtc_layer(x, g, gtc), model::gat_layer(x, g, gat), model::gatv2_layer(x, g, gatv2)}) {
      std::vector<double> total(n * heads, 0.0);
      std::vector<char> has(n, 0);
      for (std::size_t e = 0; e < g.edge_count(); ++e) {
        has[g.dst[e]] = 1;
        for (std::size_t h = 0; h < heads; ++h) total[g.dst[e] * heads + h] += out.alpha.value().at(e, h);
      }
      for (std::size_t i = 0; i < n; ++i)
        if (has[i])
          for (std::size_t h = 0; h < heads; ++h) {
            worst = std::max(worst, std::abs(total[i * heads + h] - 1.0));
            ++checked;
          }
    }
  }
  return {worst <= 1e-9 && checked > 0,
          std::to_string(checked) + " node-head sums (gtc, gat, gatv2), max |sum - 1| = " + sci(worst)};
}

// --- criterion 3 -----------------------------------------------------------

Outcome permutation_equivariance() {
  Rng rng(3);
  const model::FeatureScaler scaler = [] {
    model::FeatureScaler f;
    f.edge_mean = {2000.0, 120.0, 6.7e-6, 0.5};
    f.edge_std = {1000.0, 10.0, 3.3e-6, 0.29};
    f.node_std = {5.0, 5.0};
    return f;
  }();
  double worst = 0;
  std::size_t windows = 0;
  for (auto kind : {model::SpatialKind::gcn, model::SpatialKind::gat, model::SpatialKind::gatv2,
                    model::SpatialKind::gtc}) {
    auto cfg = model::ModelConfig::desk();
    cfg.spatial = kind;
    cfg.window = 2;
    model::StgedModel m(cfg, 7);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 2 + rng.index(7);
      tcn::TemporalWindow win, moved;
      const auto perm = random_permutation(n, rng);
      for (std::size_t t = 0; t < cfg.window; ++t) {
        auto s = model::random_snapshot(n, rng.index(4 * n + 1), static_cast<std::int64_t>(t), rng);
        auto p = s;
        for (std::size_t i = 0; i < n; ++i) {
          p.nodes[perm[i]] = s.nodes[i];
          p.nodes[perm[i]].id = perm[i];
        }
        for (auto& e : p.edges) {
          e.src = perm[e.src];
          e.dst = perm[e.dst];
        }
        win.snapshots.push_back(std::make_shared<const tcn::Snapshot>(std::move(s)));
        moved.snapshots.push_back(std::make_shared<const tcn::Snapshot>(std::move(p)));
      }
      const auto z = m.encode_window(win, scaler);
      const auto zp = m.encode_window(moved, scaler);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < z.cols(); ++c) worst = std::max(worst, std::abs(zp.at(perm[i], c) - z.at(i, c)));
      ++windows;
    }
  }
  return {worst <= 1e-10, std::to_string(windows) + " windows over 4 spatial kinds, max deviation " + sci(worst)};
}

// --- criterion 4 -----------------------------------------------------------

Outcome oracle_equivalence() {
  Rng rng(4);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.index(10);
    const auto s = stged::testing::random_graph(n, rng.uniform(0.05, 0.6), rng);
    const auto h = tcn::hop_counts(s);
    const auto oracle = stged::testing::floyd_warshall_hops(s, tcn::kDefaultThresholdDb);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mismatches += h(i, j) != oracle[i][j];
  }

  // evaluate() against a confusion matrix rebuilt from per-window predictions.
  sim::SimConfig sc;
  sc.n_nodes = 8;
  sc.n_steps = 60;
  sc.seed = 4;
  const auto data = sim::simulate(sc);
  const auto exp = train::prepare_experiment(data, 2, {});
  auto cfg = model::ModelConfig::desk();
  cfg.window = 2;
  auto m = model::make_model(cfg, 4);
  std::vector<std::size_t> all(exp.windows.size());
  std::iota(all.begin(), all.end(), 0);
  // Each pair scored on its own, independent of the batched evaluation path.
  std::vector<std::pair<double, bool>> raw;
  for (std::size_t w : all)
    for (std::uint32_t i = 0; i < sc.n_nodes; ++i)
      for (std::uint32_t j = 0; j < sc.n_nodes; ++j) {
        if (i == j) continue;
        const model::NodePair pair{i, j};
        raw.emplace_back(m->predict(*exp.data, exp.windows[w].start, std::span(&pair, 1)).front(),
                         exp.windows[w].labels(i, j) == 1);
      }
  std::size_t metric_mismatches = 0;
  for (double tau : {0.3, 0.5, 0.7}) {
    const auto report = train::evaluate(*m, exp, all, tau);
    train::ConfusionCounts brute;
    for (const auto& [s, a] : raw) {
      const bool p = s > tau;
      brute.tp += p && a;
      brute.fp += p && !a;
      brute.fn += !p && a;
      brute.tn += !p && !a;
    }
    const double total = static_cast<double>(brute.total());
    const double acc = static_cast<double>(brute.tp + brute.tn) / total;
    const double pre = brute.tp + brute.fp ? static_cast<double>(brute.tp) / static_cast<double>(brute.tp + brute.fp) : 0;
    const double rec = brute.tp + brute.fn ? static_cast<double>(brute.tp) / static_cast<double>(brute.tp + brute.fn) : 0;
    const double f1 = 2 * brute.tp + brute.fp + brute.fn
                          ? 2.0 * static_cast<double>(brute.tp) / static_cast<double>(2 * brute.tp + brute.fp + brute.fn)
                          : 0;
    metric_mismatches += !(report.counts == brute) + (report.accuracy != acc) + (report.precision != pre) +
                         (report.recall != rec) + (report.f1 != f1);
  }
  return {mismatches == 0 && metric_mismatches == 0,
          "hop mismatches " + std::to_string(mismatches) + " over 200 graphs; metric mismatches " +
              std::to_string(metric_mismatches) + " over 3 thresholds"};
}

// --- criterion 5 -----------------------------------------------------------

Outcome propagation_model() {
  Rng rng(5);
  double worst_gap = 0;
  std::size_t violations = 0;
  const std::vector<sim::TwoRayParams> params{{3.0e8, 1.5, 1.5}, {3.0e7, 2.0, 10.0}, {2.4e9, 1.0, 30.0}};
  for (const auto& p : params) {
    const double dc = sim::crossover_distance(p);
    const double below = sim::free_space_loss_db(dc, p.frequency_hz);
    const double above = sim::two_ray_far_loss_db(dc, p.tx_height_m, p.rx_height_m);
    worst_gap = std::max(worst_gap, std::abs(below - above));
    worst_gap = std::max(worst_gap, std::abs(sim::path_loss_db(dc, p) - below));
    worst_gap = std::max(worst_gap, std::abs(sim::path_loss_db(std::nextafter(dc, 0.0), p) - below));
    std::vector<double> near, far;
    for (int k = 0; k < 10000; ++k) {
      const double d = std::exp(rng.uniform(std::log(1e-3), std::log(1e5)));
      (d < dc ? near : far).push_back(d);
    }
    for (auto* branch : {&near, &far}) {
      std::sort(branch->begin(), branch->end());
      for (std::size_t k = 1; k < branch->size(); ++k)
        violations += sim::path_loss_db((*branch)[k], p) < sim::path_loss_db((*branch)[k - 1], p);
    }
  }
  return {worst_gap < 1e-9 && violations == 0,
          "max branch gap at d_c " + sci(worst_gap) + " dB, monotonicity violations " + std::to_string(violations) +
              " over 3x10^4 distances"};
}

// --- criterion 6 -----------------------------------------------------------

Outcome protocol_invariants() {
  std::vector<std::string> problems;
  // Balanced batches, built as the trainer builds them (8 windows per batch).
  sim::SimConfig sc;
  sc.n_steps = 120;
  sc.seed = 6;
  const auto data = sim::simulate(sc);
  const auto exp = train::prepare_experiment(data, 5, {});
  Rng rng(6);
  std::size_t batches = 0;
  for (std::size_t b = 0; b < exp.split.train.size(); b += 8) {
    std::vector<train::LabeledPair> pool;
    for (std::size_t k = b; k < std::min(b + 8, exp.split.train.size()); ++k) {
      const auto w = exp.split.train[k];
      auto pairs = train::labeled_pairs(exp.windows[w].labels, w);
      pool.insert(pool.end(), pairs.begin(), pairs.end());
    }
    const auto chosen = train::balance(pool, rng);
    const auto pos = std::count_if(chosen.begin(), chosen.end(), [](const auto& p) { return p.label == 1; });
    if (2 * static_cast<std::size_t>(pos) != chosen.size()) problems.push_back("unbalanced batch");
    ++batches;
  }
  // Split: 90:5:5, disjoint, exhaustive, deterministic.
  for (std::size_t count : {20u, 21u, 100u, 595u, 4000u}) {
    train::SplitConfig cfg;
    cfg.seed = 17;
    const auto a = train::split_windows(count, cfg), b = train::split_windows(count, cfg);
    if (a.train != b.train || a.val != b.val || a.test != b.test) problems.push_back("split not deterministic");
    std::vector<std::size_t> all = a.train;
    all.insert(all.end(), a.val.begin(), a.val.end());
    all.insert(all.end(), a.test.begin(), a.test.end());
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> expect(count);
    std::iota(expect.begin(), expect.end(), 0);
    if (all != expect) problems.push_back("split not a partition of " + std::to_string(count));
    if (a.val.size() != count * 5 / 100 || a.test.size() != count * 5 / 100)
      problems.push_back("split sizes for " + std::to_string(count));
  }
  // Boundary labelling.
  const auto at = tcn::label_connectivity(stged::testing::snapshot(2, {stged::testing::record(0, 1, 128.0)}), 128.0);
  const auto above =
      tcn::label_connectivity(stged::testing::snapshot(2, {stged::testing::record(0, 1, 128.0 + 1e-9)}), 128.0);
  if (at(0, 1) != 1) problems.push_back("128.0 dB not connected");
  if (above(0, 1) != 0) problems.push_back("128.0+1e-9 dB connected");
  std::string detail = std::to_string(batches) + " balanced batches, 5 split sizes, boundary labels";
  for (const auto& p : problems) detail += "; " + p;
  return {problems.empty(), detail};
}

// --- criteria 7 - 9 --------------------------------------------------------

struct Run {
  double accuracy = 0;
  double f1 = 0;
  double cpu_s = 0;
  std::size_t epochs = 0;
};

Run train_and_test(const train::Experiment& exp, const std::string& model_name, const train::TrainConfig& cfg,
                   std::uint64_t seed) {
  auto mc = model::with_model_name(model::ModelConfig::desk(), model_name);
  mc.window = exp.window;
  auto m = model::make_model(mc, seed);
  const double start = cpu_seconds();
  const auto result = train::train_model(*m, exp, cfg, [&](const train::EpochRecord& r) {
    log(model_name + " w=" + std::to_string(exp.window) + " epoch " + std::to_string(r.epoch) + " train " +
        num(r.train_loss) + " val " + num(r.val_loss) + " (" + num(cpu_seconds() - start, 0) + " s)");
  });
  const auto metrics = train::evaluate(*m, exp, exp.split.test, mc.threshold);
  Run run{metrics.accuracy, metrics.f1, cpu_seconds() - start, result.curve.size()};
  log(model_name + " w=" + std::to_string(exp.window) + ": test accuracy " + num(run.accuracy) + ", f1 " + num(run.f1) +
      ", " + num(run.cpu_s, 0) + " CPU s");
  return run;
}

tcn::Dataset learning_dataset(sim::MobilityKind mobility) {
  sim::SimConfig sc;
  sc.mobility = mobility;
  sc.n_nodes = 24;
  sc.n_steps = 600;
  sc.messages_per_pair_rate = kLearningRate;
  sc.seed = 1;
  auto d = sim::simulate(sc);
  log(sim::to_string(mobility) + " dataset: average edges per snapshot " + num(tcn::compute_stats(d).avg_edges, 1));
  return d;
}

// Epoch budget sized so that the full model fits in 10 CPU-minutes.
train::TrainConfig desk_budget() {
  train::TrainConfig c = train::TrainConfig::desk();
  c.epochs = 8;
  c.seed = 1;
  return c;
}

struct LearningResults {
  Run stged5, mlp5, stged1;
};

Outcome desk_learning(const LearningResults& r) {
  const bool ok = r.stged5.accuracy >= 0.90 && r.stged5.cpu_s <= 600.0 && r.stged5.accuracy > r.mlp5.accuracy;
  return {ok, "gtc-lstm acc " + num(r.stged5.accuracy) + " in " + num(r.stged5.cpu_s, 0) + " CPU s (" +
                  std::to_string(r.stged5.epochs) + " epochs); mlp acc " + num(r.mlp5.accuracy) +
                  " (need >= 0.90, <= 600 s, and gtc-lstm > mlp)"};
}

Outcome window_trend(const LearningResults& r) {
  return {r.stged5.accuracy >= r.stged1.accuracy - 0.01,
          "w=5 acc " + num(r.stged5.accuracy) + " vs w=1 acc " + num(r.stged1.accuracy) + " (need w5 >= w1 - 0.01)"};
}

bool same_grid(const std::vector<train::AblationCell>& a, const std::vector<train::AblationCell>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k].ok != b[k].ok || a[k].error != b[k].error || !(a[k].metrics == b[k].metrics) ||
        a[k].epochs_run != b[k].epochs_run)
      return false;
  return true;
}

Outcome ablation_harness() {
  // Determinism: the full grid twice on a small configuration.
  sim::SimConfig small;
  small.n_nodes = 6;
  small.n_steps = 40;
  small.messages_per_pair_rate = kLearningRate;
  small.seed = 9;
  const auto small_exp = train::prepare_experiment(sim::simulate(small), 5, {});
  auto small_model = model::ModelConfig::desk();
  small_model.window = 5;
  train::TrainConfig small_train;
  small_train.epochs = 2;
  const auto g1 = train::run_ablation(small_exp, small_model, small_train, 3);
  const auto g2 = train::run_ablation(small_exp, small_model, small_train, 3);
  const bool deterministic = same_grid(g1, g2);
  log(std::string("ablation determinism on the small grid: ") + (deterministic ? "identical" : "DIFFERENT"));

  // Trend: the grid on a random-waypoint dataset.
  const auto data = learning_dataset(sim::MobilityKind::random_waypoint);
  const auto exp = train::prepare_experiment(data, 5, {});
  auto base = model::ModelConfig::desk();
  base.window = 5;
  train::TrainConfig cfg = train::TrainConfig::desk();
  cfg.epochs = 3;
  const double start = cpu_seconds();
  const auto cells = train::run_ablation(exp, base, cfg, 1, [&](const train::AblationCell& c) {
    log("ablation " + model::to_string(c.spatial) + "-" + model::to_string(c.temporal) + ": " +
        (c.ok ? "acc " + num(c.metrics.accuracy) : "failed: " + c.error) + " (" + num(cpu_seconds() - start, 0) +
        " s)");
  });
  double spatial = 0, combined = 0;
  std::size_t ns = 0, nc = 0, failed = 0;
  for (const auto& c : cells) {
    if (!c.ok) {
      ++failed;
      continue;
    }
    if (c.temporal == model::TemporalKind::none) {
      spatial += c.metrics.accuracy;
      ++ns;
    } else {
      combined += c.metrics.accuracy;
      ++nc;
    }
  }
  spatial = ns ? spatial / static_cast<double>(ns) : 0;
  combined = nc ? combined / static_cast<double>(nc) : 0;
  const bool ok = deterministic && failed == 0 && cells.size() == 12 && combined - spatial > 0.05;
  return {ok, std::to_string(cells.size()) + " cells, " + std::to_string(failed) + " failed, deterministic " +
                  (deterministic ? "yes" : "no") + "; spatial-only mean acc " + num(spatial) + ", combined mean acc " +
                  num(combined) + ", gap " + num(combined - spatial) + " (need > 0.05)"};
}

// --- criterion 10 ----------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome reproducibility(const std::string& cli) {
  const std::vector<std::string> commands{
      "simulate --mobility grouped --nodes 8 --steps 60 --seed 7 --rate 3 --out data.ndjson",
      "train --data data.ndjson --windows 2 --model gtc-lstm --epochs 2 --seed 7",
      "eval --data data.ndjson --out metrics.csv",
      "ablate --data data.ndjson --windows 2 --epochs 1 --seed 7 --out ablation.csv",
      "analyze --data data.ndjson --hops --svg --at 5 --node 2"};
  const fs::path root = fs::temp_directory_path() / "stged_acceptance_repro";
  fs::remove_all(root);
  std::vector<fs::path> dirs{root / "a", root / "b"};
  for (const auto& dir : dirs) {
    fs::create_directories(dir);
    for (const auto& c : commands) {
      const std::string cmd = "cd '" + dir.string() + "' && '" + cli + "' " + c + " >>stdout.log 2>>stderr.log";
      if (std::system(cmd.c_str()) != 0) return {false, "command failed: " + c};
    }
  }
  std::size_t files = 0, differing = 0;
  std::string names;
  for (const auto& entry : fs::directory_iterator(dirs[0])) {
    const auto name = entry.path().filename();
    if (name == "stdout.log" || name == "stderr.log") continue;
    ++files;
    if (!fs::exists(dirs[1] / name) || slurp(entry.path()) != slurp(dirs[1] / name)) {
      ++differing;
      names += " " + name.string();
    }
  }
  fs::remove_all(root);
  return {files >= 10 && differing == 0,
          std::to_string(files) + " artifacts (dataset, checkpoint, sidecar, CSVs, SVGs) compared, " +
              std::to_string(differing) + " differ" + names};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-stged-cli>\n";
    return 2;
  }
  const std::string cli = fs::absolute(argv[1]).string();

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;
  LearningResults learning;
  bool learning_done = false;
  auto run_learning = [&] {
    if (learning_done) return;
    learning_done = true;
    const auto data = learning_dataset(sim::MobilityKind::grouped_waypoint);
    const auto exp5 = train::prepare_experiment(data, 5, {});
    const auto exp1 = train::prepare_experiment(data, 1, {});
    learning.stged5 = train_and_test(exp5, "gtc-lstm", desk_budget(), 1);
    learning.mlp5 = train_and_test(exp5, "mlp", desk_budget(), 1);
    learning.stged1 = train_and_test(exp1, "gtc-lstm", desk_budget(), 1);
  };

  criteria.emplace_back("gradient fidelity", gradient_fidelity);
  criteria.emplace_back("attention normalization", attention_normalization);
  criteria.emplace_back("permutation equivariance", permutation_equivariance);
  criteria.emplace_back("oracle equivalence", oracle_equivalence);
  criteria.emplace_back("propagation model", propagation_model);
  criteria.emplace_back("protocol invariants", protocol_invariants);
  criteria.emplace_back("desk-scale learning", [&] {
    run_learning();
    return desk_learning(learning);
  });
  criteria.emplace_back("window-size trend", [&] {
    run_learning();
    return window_trend(learning);
  });
  criteria.emplace_back("ablation harness", ablation_harness);
  criteria.emplace_back("reproducibility", [&] { return reproducibility(cli); });

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto& [name, check] = criteria[k];
    log("criterion " + std::to_string(k + 1) + ": " + name);
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (k + 1) << " (" << name << "): " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
