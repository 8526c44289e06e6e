#pragma once

namespace morsecs {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace morsecs
