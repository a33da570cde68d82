#pragma once

#include <string_view>

namespace balfactor {

inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace balfactor
