#pragma once

namespace qrho {
inline constexpr const char* kVersion = "0.1.0";
}
