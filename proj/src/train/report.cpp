#include "stged/train/report.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stged::train {
namespace {

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string metric_columns(const MetricsReport& m) {
  const auto& c = m.counts;
  std::ostringstream s;
  s << c.tp << ',' << c.fp << ',' << c.fn << ',' << c.tn << ',' << fixed(m.accuracy) << ',' << fixed(m.precision)
    << ',' << fixed(m.recall) << ',' << fixed(m.f1) << ',';
  std::string flags;
  auto flag = [&](bool on, const char* name) {
    if (!on) return;
    if (!flags.empty()) flags += ';';
    flags += name;
  };
  flag(m.accuracy_undefined, "accuracy");
  flag(m.precision_undefined, "precision");
  flag(m.recall_undefined, "recall");
  flag(m.f1_undefined, "f1");
  s << flags;
  return s.str();
}

constexpr const char* kMetricHeader = "tp,fp,fn,tn,accuracy,precision,recall,f1,undefined";

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

void write_provenance_header(std::ostream& out, const Provenance& p) {
  out << "# command: " << p.command << "\n# seed: " << p.seed << '\n';
}

void write_metrics_csv(std::ostream& out, const std::vector<ResultRow>& rows, const Provenance& provenance) {
  write_provenance_header(out, provenance);
  out << "model,window," << kMetricHeader << '\n';
  for (const auto& r : rows) out << r.model << ',' << r.window << ',' << metric_columns(r.metrics) << '\n';
}

void write_loss_csv(std::ostream& out, const TrainResult& result, const Provenance& provenance) {
  write_provenance_header(out, provenance);
  out << "epoch,train_loss,val_loss\n";
  for (const auto& e : result.curve) out << e.epoch << ',' << exact(e.train_loss) << ',' << exact(e.val_loss) << '\n';
}

void write_ablation_csv(std::ostream& out, const std::vector<AblationCell>& cells, std::size_t window,
                        const Provenance& provenance) {
  write_provenance_header(out, provenance);
  out << "spatial,temporal,window,status,epochs," << kMetricHeader << ",error\n";
  for (const auto& c : cells) {
    out << model::to_string(c.spatial) << ',' << model::to_string(c.temporal) << ',' << window << ','
        << (c.ok ? "ok" : "failed") << ',' << c.epochs_run << ',' << metric_columns(c.metrics) << ',';
    std::string err = c.error;
    for (auto& ch : err)
      if (ch == ',' || ch == '\n' || ch == '"') ch = ' ';
    out << err << '\n';
  }
}

std::string metrics_table(const std::vector<ResultRow>& rows) {
  std::ostringstream s;
  s << pad("Model", 14) << pad("Steps", 7) << pad("Acc", 8) << pad("Pre", 8) << pad("Rec", 8) << "F1\n";
  for (const auto& r : rows)
    s << pad(r.model, 14) << pad(std::to_string(r.window), 7) << pad(fixed(r.metrics.accuracy, 3), 8)
      << pad(fixed(r.metrics.precision, 3), 8) << pad(fixed(r.metrics.recall, 3), 8) << fixed(r.metrics.f1, 3)
      << '\n';
  return s.str();
}

std::string ablation_table(const std::vector<AblationCell>& cells) {
  std::ostringstream s;
  s << pad("Model", 14) << pad("Acc", 8) << pad("Pre", 8) << pad("Rec", 8) << "F1\n";
  for (const auto& c : cells) {
    std::string name = model::to_string(c.spatial);
    if (c.temporal != model::TemporalKind::none) name += "-" + model::to_string(c.temporal);
    for (auto& ch : name) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    s << pad(name, 14);
    if (!c.ok) {
      s << "failed: " << c.error << '\n';
      continue;
    }
    s << pad(fixed(c.metrics.accuracy, 3), 8) << pad(fixed(c.metrics.precision, 3), 8)
      << pad(fixed(c.metrics.recall, 3), 8) << fixed(c.metrics.f1, 3) << '\n';
  }
  return s.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace stged::train
