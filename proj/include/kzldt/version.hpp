#pragma once

namespace kzldt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace kzldt
