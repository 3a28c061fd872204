#pragma once

namespace wlanopt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace wlanopt
