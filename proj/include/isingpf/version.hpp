#pragma once

namespace isingpf {

inline constexpr const char kVersion[] = "0.1.0";
inline constexpr const char kToolName[] = "isingpf";

}  // namespace isingpf
