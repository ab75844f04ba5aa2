#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "stged/diff/parameter.hpp"

namespace stged::diff {

// Binary layout, all integers little-endian:
//   magic "STGEDCKP" | u32 version | u32 len + metadata bytes | u64 count |
//   count x (u32 len + name bytes | u32 rank | u64 dims[rank] | f64 values[])
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct CheckpointRecord {
  std::string name;
  Tensor value;
  friend bool operator==(const CheckpointRecord&, const CheckpointRecord&) = default;
};

struct Checkpoint {
  std::uint32_t version = kCheckpointVersion;
  std::string metadata;  // free text, e.g. producing command line and seed
  std::vector<CheckpointRecord> records;
  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

std::string encode_checkpoint(const Checkpoint& ckpt);
/// Throws FormatError on truncated or malformed input (line is reported as 0).
Checkpoint decode_checkpoint(std::string_view bytes);

Checkpoint make_checkpoint(const ParameterStore& params, std::string metadata);
/// Copies values by name; every parameter must be present with matching shape.
void restore_parameters(const Checkpoint& ckpt, ParameterStore& params);

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace stged::diff
