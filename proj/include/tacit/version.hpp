#pragma once

namespace tacit {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace tacit
