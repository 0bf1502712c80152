#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace stcomp {

using Rng = std::mt19937_64;

// SplitMix64 finaliser. Used to derive independent child seeds so that every
// random entity (a channel, a task, an algorithm run) owns its own stream.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = mix64(base);
  for (auto p : parts) h = mix64(h ^ mix64(p));
  return h;
}

// Short ASCII tags (up to 8 chars) packed into a 64-bit stream label.
constexpr std::uint64_t tag(const char* s) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8 && s[i] != '\0'; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[i])) << (8 * i);
  return v;
}

inline Rng make_rng(std::uint64_t base, std::initializer_list<std::uint64_t> parts) {
  return Rng(derive_seed(base, parts));
}

}  // namespace stcomp
