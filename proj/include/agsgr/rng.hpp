#pragma once

#include <cstdint>
#include <string_view>

namespace agsgr {

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Derives a per-module seed from the root seed, so every source of
// randomness in the pipeline flows from one configured value.
constexpr std::uint64_t seed_for(std::uint64_t root, std::string_view ns, std::uint64_t salt = 0) {
  return mix64(root ^ fnv1a(ns) ^ mix64(salt));
}

}  // namespace agsgr
