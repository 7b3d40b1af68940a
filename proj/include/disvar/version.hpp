#pragma once

namespace disvar {

inline constexpr const char* kArtifactName = "disvar";
inline constexpr const char* kVersion = "0.1.0";

} // namespace disvar
