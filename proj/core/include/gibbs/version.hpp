#pragma once

namespace gibbs {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gibbs
