#pragma once

namespace vcorr {
inline constexpr const char* version = "0.4.0";
}
