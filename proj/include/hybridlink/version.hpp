#pragma once

namespace hybridlink {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hybridlink
