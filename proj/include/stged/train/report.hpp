#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "stged/core/provenance.hpp"
#include "stged/train/ablation.hpp"
#include "stged/train/metrics.hpp"
#include "stged/train/trainer.hpp"

namespace stged::train {

struct ResultRow {
  std::string model;
  std::size_t window = 0;
  MetricsReport metrics;
};

// CSV artifacts start with '#' comment lines carrying the producing command
// line and seed.
void write_provenance_header(std::ostream& out, const Provenance& provenance);

void write_metrics_csv(std::ostream& out, const std::vector<ResultRow>& rows, const Provenance& provenance);
void write_loss_csv(std::ostream& out, const TrainResult& result, const Provenance& provenance);
void write_ablation_csv(std::ostream& out, const std::vector<AblationCell>& cells, std::size_t window,
                        const Provenance& provenance);

/// Fixed-width tables for the terminal.
std::string metrics_table(const std::vector<ResultRow>& rows);
std::string ablation_table(const std::vector<AblationCell>& cells);

/// Writes `content` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace stged::train
