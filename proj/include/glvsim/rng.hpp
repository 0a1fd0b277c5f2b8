#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace glvsim {

/// Seeds derived from one master seed by hashing a stream name.
///
/// Each consumer ("wind", "bits", "loss:HOL", ...) draws from its own
/// engine, so adding or removing a consumer never shifts another stream.
class SeedTree {
public:
  explicit SeedTree(std::uint64_t master_seed) : master_(master_seed) {}

  std::uint64_t master() const { return master_; }
  std::uint64_t derive(std::string_view stream_name) const;
  std::mt19937_64 engine(std::string_view stream_name) const;

private:
  std::uint64_t master_;
};

std::uint64_t fnv1a64(std::string_view text);
std::uint64_t splitmix64(std::uint64_t x);

} // namespace glvsim
