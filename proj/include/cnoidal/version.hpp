#pragma once

namespace cnoidal {

inline constexpr const char* kVersion = "0.1.0";

} // namespace cnoidal
