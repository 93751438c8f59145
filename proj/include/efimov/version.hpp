#pragma once

namespace efimov {

inline constexpr const char* version = "0.1.0";

}  // namespace efimov
