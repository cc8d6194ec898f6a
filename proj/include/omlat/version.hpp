#pragma once

namespace omlat {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace omlat
