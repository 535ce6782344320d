#pragma once

namespace lowpass {

inline constexpr const char* version = "0.1.0";

} // namespace lowpass
