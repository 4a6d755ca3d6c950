#pragma once

namespace ixp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ixp
