#pragma once

namespace periodkit {
inline constexpr const char* version = "1.0.0";
}
