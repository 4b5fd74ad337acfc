#pragma once

namespace adelic {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace adelic
