#pragma once

#include <filesystem>
#include <iosfwd>

#include "stged/tcn/types.hpp"

namespace stged::tcn {

inline constexpr int kStreamFormatVersion = 1;

// Snapshot stream: newline-delimited JSON. Line 1 is a header
//   {"format_version":1,"step_seconds":1.0,"n_nodes":N,"producer":{"command":..,"seed":..}}
// followed by one snapshot per line
//   {"t":..,"nodes":[{"id","x","y","vx","vy"}..],
//    "edges":[{"src","dst","distance_m","path_loss_db","prop_delay_s","timestamp_s"}..]}
// Reals are written in shortest round-trip form.

void write_stream(std::ostream& out, const Dataset& dataset);
void write_stream(const std::filesystem::path& path, const Dataset& dataset);

/// Throws FormatError with the 1-based line number and field name on any
/// malformed record, including edges referencing unknown nodes.
Dataset read_stream(std::istream& in);
Dataset read_stream(const std::filesystem::path& path);

/// Loader for the published CNTM/CNCM release. That format is not
/// documented, so this always throws std::runtime_error.
Dataset read_published_dataset(const std::filesystem::path& path);

}  // namespace stged::tcn
