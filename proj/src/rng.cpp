#include "glvsim/rng.hpp"

namespace glvsim {

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t SeedTree::derive(std::string_view stream_name) const {
  return splitmix64(splitmix64(master_) ^ fnv1a64(stream_name));
}

std::mt19937_64 SeedTree::engine(std::string_view stream_name) const {
  const std::uint64_t s = derive(stream_name);
  std::seed_seq seq{static_cast<std::uint32_t>(s),
                    static_cast<std::uint32_t>(s >> 32)};
  return std::mt19937_64(seq);
}

} // namespace glvsim
