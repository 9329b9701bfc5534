#pragma once

#include <string_view>

namespace skewbm {

inline constexpr std::string_view kVersion = "skewbm 0.1.0";

}  // namespace skewbm
