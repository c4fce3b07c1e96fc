#pragma once

namespace affres {

inline constexpr const char* kLibraryVersion = "0.1.0";

}  // namespace affres
