#pragma once

#include <string_view>

namespace visteer {

inline constexpr std::string_view kLibraryVersion = "0.1.0";

// Embedded in every report / artifact file this library writes. Bump when a
// field is added, removed, or changes meaning.
inline constexpr std::string_view kSchemaVersion = "1";

}  // namespace visteer
