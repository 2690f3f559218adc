#pragma once

namespace covrep {

inline constexpr const char* kToolName = "covrep";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "covrep-report/1";

} // namespace covrep
