#pragma once

namespace opnet {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace opnet
