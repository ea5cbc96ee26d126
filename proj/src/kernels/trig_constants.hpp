#pragma once

// Minimax sin/cos on [-pi/4, pi/4] (Cephes coefficients) and a three-part
// Cody-Waite split of pi/2 for argument reduction. Shared by the vector
// kernels; the scalar reference uses libm.

namespace qbm::kernels::detail {

inline constexpr double kTwoOverPi = 0.63661977236758134308;
inline constexpr double kPiOver2Hi = 1.57079625129699707031;
inline constexpr double kPiOver2Mid = 7.54978941586159635336e-8;
inline constexpr double kPiOver2Lo = 5.39030285815811905290e-15;

// Beyond this the three-part reduction loses bits; lanes fall back to libm.
inline constexpr double kMaxReducedArgument = 1.0e7;

inline constexpr double kSin0 = 1.58962301576546568060e-10;
inline constexpr double kSin1 = -2.50507477628578072866e-8;
inline constexpr double kSin2 = 2.75573136213857245213e-6;
inline constexpr double kSin3 = -1.98412698295895385996e-4;
inline constexpr double kSin4 = 8.33333333332211858878e-3;
inline constexpr double kSin5 = -1.66666666666666307295e-1;

inline constexpr double kCos0 = -1.13585365213876817300e-11;
inline constexpr double kCos1 = 2.08757008419747316778e-9;
inline constexpr double kCos2 = -2.75573141792967388112e-7;
inline constexpr double kCos3 = 2.48015872888517045348e-5;
inline constexpr double kCos4 = -1.38888888888730564116e-3;
inline constexpr double kCos5 = 4.16666666666665929218e-2;

}  // namespace qbm::kernels::detail
