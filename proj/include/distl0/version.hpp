#pragma once

namespace distl0 {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace distl0
