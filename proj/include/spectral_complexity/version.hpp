#ifndef SPECTRAL_COMPLEXITY_VERSION_HPP
#define SPECTRAL_COMPLEXITY_VERSION_HPP

namespace spectral_complexity {

inline constexpr const char* tool_version = "0.1.0";
inline constexpr int report_schema = 1;

} // namespace spectral_complexity

#endif // SPECTRAL_COMPLEXITY_VERSION_HPP
