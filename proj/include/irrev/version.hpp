#pragma once

namespace irrev {
inline constexpr const char* version = "0.1.0";
}
