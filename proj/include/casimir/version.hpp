#pragma once

namespace casimir {
inline constexpr const char* kVersion = "1.0.0";
}
