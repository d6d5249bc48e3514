#pragma once

namespace szego::detail {

inline constexpr double kPi = 3.141592653589793238462643383279503;
inline constexpr double kLogPi = 1.1447298858494001741434273513530587;
inline constexpr double kHalfLog2Pi = 0.9189385332046727417803297364056176;
inline constexpr double kSqrtPi = 1.7724538509055160272981674833411452;
inline constexpr double kTwoOverSqrtPi = 1.1283791670955125738961589031215452;
inline constexpr double kLog2 = 0.6931471805599453094172321214581766;

}  // namespace szego::detail
