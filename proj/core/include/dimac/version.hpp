#pragma once

namespace dimac {

inline constexpr const char* kVersion = "0.3.0";

}  // namespace dimac
