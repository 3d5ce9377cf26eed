#pragma once

// Generated by terndio_calibrate. Do not edit by hand.

namespace terndio::fixtures {

/// alpha2 mean square over (P^2 + P^4/t) P^0.2, P = 16, times 1.25.
inline constexpr double kAlpha2MeanSquareC = 0.045732174988670438;

/// I4(U) / P^4 over the small-U values, max over P in {16, 24, 32}, times 1.25.
inline constexpr double kI4SmallUC = 0.18176585558164837;

/// I4(U) / (U (delta P^3 + P^2.2)) at U = P^1.5, max over P in {16, 24, 32}, times 1.25.
inline constexpr double kI4LargeUC = 0.001161696191444407;

/// R(U) / (P^2.2 (1 + U/P^4)), max over P in {16, 24, 32}, times 1.25.
inline constexpr double kRLevelC = 1.5085046490719811;

/// |F1(t)| / (P t^{1/3} log(3 + t)) sup over [P^2, P^2.5], P = 32, times 1.25.
inline constexpr double kF1SupC = 0.018666777969149711;

/// count_near_curve ratio at P = 128, delta = 0.3, divided by 1.25.
inline constexpr double kCurveRatioFloor = 0.99348958333333337;

/// |F2(t)| / f2_envelope(t) max over the envelope grid at P = 100, times 1.25.
inline constexpr double kF2EnvelopeC = 10.472642770958242;

/// I3 / ((P^4 + P^5/theta) P^0.2) at theta = P, P = 16, times 1.25.
inline constexpr double kI3ShapeC = 6.0481580402300459;

/// |closed - numeric| / (lambda^3 t^2 P^-7) over the Hessian samples, P = 32, times 1.25.
inline constexpr double kHessGDifferenceC = 72.688764078014714;

/// |S| / (P t^{1/3}) sup over [P^2, P^2.5], P = 32, times 1.25.
inline constexpr double kPartialSumC = 0.30354660862220095;

/// lemma1_calibrate at P = 32 (already scaled by 0.8).
inline constexpr double kLemma1C2 = 0.0018907181610856899;

}  // namespace terndio::fixtures
