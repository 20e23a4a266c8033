#pragma once

namespace hfa {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hfa
