#pragma once

namespace systolica {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "systolica/1";

} // namespace systolica
