#pragma once

namespace pbna {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "pbna-report/1";

}  // namespace pbna
