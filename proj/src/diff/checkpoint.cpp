#include "stged/diff/checkpoint.hpp"

#include <bit>
#include <fstream>
#include <iterator>
#include <sstream>

#include "stged/core/errors.hpp"

namespace stged::diff {
namespace {

constexpr std::string_view kMagic = "STGEDCKP";

template <typename U>
void put(std::string& out, U value) {
  for (std::size_t i = 0; i < sizeof(U); ++i) out.push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
}

class Reader {
public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename U>
  U get(const char* field) {
    need(sizeof(U), field);
    U value = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i)
      value |= static_cast<U>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += sizeof(U);
    return value;
  }

  std::string_view take(std::size_t n, const char* field) {
    need(n, field);
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  bool done() const { return pos_ == bytes_.size(); }

private:
  void need(std::size_t n, const char* field) {
    if (bytes_.size() - pos_ < n) throw FormatError(0, field, "checkpoint truncated");
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_checkpoint(const Checkpoint& ckpt) {
  std::string out(kMagic);
  put<std::uint32_t>(out, ckpt.version);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(ckpt.metadata.size()));
  out += ckpt.metadata;
  put<std::uint64_t>(out, ckpt.records.size());
  for (const auto& rec : ckpt.records) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(rec.name.size()));
    out += rec.name;
    put<std::uint32_t>(out, static_cast<std::uint32_t>(rec.value.rank()));
    for (auto d : rec.value.shape()) put<std::uint64_t>(out, d);
    for (double v : rec.value.data()) put<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
  }
  return out;
}

Checkpoint decode_checkpoint(std::string_view bytes) {
  Reader in(bytes);
  if (in.take(kMagic.size(), "magic") != kMagic) throw FormatError(0, "magic", "not a checkpoint file");
  Checkpoint ckpt;
  ckpt.version = in.get<std::uint32_t>("version");
  if (ckpt.version != kCheckpointVersion)
    throw FormatError(0, "version", "unsupported checkpoint version " + std::to_string(ckpt.version));
  ckpt.metadata = std::string(in.take(in.get<std::uint32_t>("metadata"), "metadata"));
  const auto count = in.get<std::uint64_t>("count");
  for (std::uint64_t r = 0; r < count; ++r) {
    CheckpointRecord rec;
    rec.name = std::string(in.take(in.get<std::uint32_t>("name"), "name"));
    const auto rank = in.get<std::uint32_t>("rank");
    if (rank == 0) throw FormatError(0, "rank", "zero rank for '" + rec.name + "'");
    Shape shape;
    for (std::uint32_t k = 0; k < rank; ++k) {
      shape.push_back(static_cast<std::size_t>(in.get<std::uint64_t>("shape")));
      if (shape.back() == 0) throw FormatError(0, "shape", "zero dimension for '" + rec.name + "'");
    }
    std::vector<double> values(shape_size(shape));
    for (auto& v : values) v = std::bit_cast<double>(in.get<std::uint64_t>("values"));
    rec.value = Tensor(std::move(shape), std::move(values));
    ckpt.records.push_back(std::move(rec));
  }
  if (!in.done()) throw FormatError(0, "trailer", "unexpected bytes after last record");
  return ckpt;
}

Checkpoint make_checkpoint(const ParameterStore& params, std::string metadata) {
  Checkpoint ckpt;
  ckpt.metadata = std::move(metadata);
  for (const auto& p : params) ckpt.records.push_back({p->name, p->value});
  return ckpt;
}

void restore_parameters(const Checkpoint& ckpt, ParameterStore& params) {
  for (auto& p : params) {
    const CheckpointRecord* found = nullptr;
    for (const auto& rec : ckpt.records)
      if (rec.name == p->name) found = &rec;
    if (!found) throw ContractError("checkpoint: missing parameter '" + p->name + "'");
    if (found->value.shape() != p->value.shape())
      throw ContractError("checkpoint: shape " + shape_string(found->value.shape()) + " for '" + p->name +
                          "', model expects " + shape_string(p->value.shape()));
    p->value = found->value;
  }
  if (ckpt.records.size() != params.size())
    throw ContractError("checkpoint: " + std::to_string(ckpt.records.size()) + " records, model has " +
                        std::to_string(params.size()) + " parameters");
}

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  const std::string bytes = encode_checkpoint(ckpt);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes);
}

}  // namespace stged::diff
