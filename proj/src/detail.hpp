#pragma once

#include <cstdint>
#include <unordered_set>

#include "gendef/transformation.hpp"

namespace gendef::detail {

// FNV-1a over the image vector; degree is mixed in so that different
// degrees rarely collide.
struct TransformationHash {
  std::size_t operator()(const Transformation& f) const noexcept {
    std::uint64_t h = 1469598103934665603ULL ^
                      static_cast<std::uint64_t>(f.degree());
    for (State v : f.images()) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

using TransformationSet =
    std::unordered_set<Transformation, TransformationHash>;

}  // namespace gendef::detail
