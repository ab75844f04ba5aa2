#pragma once

#include <cstdint>
#include <string>

namespace stged {

/// Producing command line and seed, embedded in every artifact file.
struct Provenance {
  std::string command;
  std::uint64_t seed = 0;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

}  // namespace stged
