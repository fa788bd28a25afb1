#pragma once

#include <cstdint>

namespace fel::detail {

constexpr std::uint64_t mix(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t combine(std::uint64_t seed, std::uint64_t v) noexcept {
  return mix(seed ^ (v + 0x517cc1b727220a95ULL + (seed << 6) + (seed >> 2)));
}

}  // namespace fel::detail
