#pragma once

#include <bit>
#include <cstdint>
#include <type_traits>

namespace garchlab {

/// SplitMix64 finalizer. This is the single fixed mixing step behind every
/// derived RNG stream in the library.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

namespace detail {

constexpr std::uint64_t seed_component(double v) noexcept {
  return std::bit_cast<std::uint64_t>(v);
}

template <class T>
  requires std::is_integral_v<T>
constexpr std::uint64_t seed_component(T v) noexcept {
  return static_cast<std::uint64_t>(v);
}

}  // namespace detail

/// Derives a child seed from a base seed and the values identifying a stream
/// (experiment coordinates, replicate index, sub-stream tag). The same inputs
/// always produce the same seed; streams for distinct inputs are independent
/// for any practical purpose. Values enter by bit pattern, so derived seeds
/// depend on coordinates themselves and not on their position in any list.
template <class... Parts>
constexpr std::uint64_t derive_seed(std::uint64_t base, Parts... parts) noexcept {
  std::uint64_t h = splitmix64(base ^ 0x243f6a8885a308d3ull);
  ((h = splitmix64(h ^ detail::seed_component(parts))), ...);
  return h;
}

}  // namespace garchlab
