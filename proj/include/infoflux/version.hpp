#pragma once

namespace infoflux {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace infoflux
