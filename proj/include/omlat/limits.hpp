#pragma once

#include <cstddef>

namespace omlat {

/// Resource caps applied by constructors and enumerations.
struct Limits {
  std::size_t max_elements = 4096;
  std::size_t max_group = 100000;
  std::size_t max_dimension = 20;
};

inline constexpr Limits kDefaultLimits{};

}  // namespace omlat
