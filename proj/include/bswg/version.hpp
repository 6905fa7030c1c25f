#pragma once

namespace bswg {

inline constexpr const char* version = "0.1.0";

}  // namespace bswg
