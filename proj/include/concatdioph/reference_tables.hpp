#pragma once

#include <array>

namespace concatdioph::reference {

// Published values the workbench recomputes and checks itself against.
// Index 0 of every per-base array corresponds to b = 2.

// Largest partial quotient among a_0..a_N, q_N > 1.3e29, per base.
inline constexpr std::array<long, 9> kAmaxRow = {134, 161, 66, 59, 347, 35, 44, 80, 106};
inline constexpr long kLegendreGlobalAmax = 347;
inline constexpr long kLegendreNkBound = 161; // n-k < 161

struct Step1Row {
    int b;
    double eps_gt; // published lower bound on epsilon
    long nk_lt;    // published n-k < value
};

inline constexpr std::array<Step1Row, 9> kThm2Step1Rows = {{
    {2, 0.36, 173},
    {3, 0.33, 171},
    {4, 0.45, 169},
    {5, 0.42, 171},
    {6, 0.23, 175},
    {7, 0.34, 171},
    {8, 0.45, 171},
    {9, 0.47, 171},
    {10, 0.01, 177},
}};
inline constexpr long kThm2Step1GlobalNk = 177; // n-k < 177

struct Step2Row {
    int b;
    long m;
    long nk;
    double eps_gt;
    long n_lt; // published n < value
};

inline constexpr std::array<Step2Row, 9> kThm1Step2Rows = {{
    {2, 87, 95, 1e-4, 223},
    {3, 3, 38, 2e-5, 221},
    {4, 87, 95, 1e-4, 223},
    {5, 10, 111, 1e-5, 223},
    {6, 52, 155, 2e-7, 229},
    {7, 69, 66, 2e-5, 219},
    {8, 39, 140, 1e-5, 221},
    {9, 107, 126, 3e-5, 219},
    {10, 2, 66, 4e-4, 220},
}};
inline constexpr long kThm1GlobalN = 229; // n <= 229

inline constexpr std::array<Step2Row, 9> kThm2Step2Rows = {{
    {2, 1, 200, 9e-6, 210},
    {3, 1, 201, 1e-5, 211},
    {4, 1, 201, 7e-6, 210},
    {5, 1, 201, 1e-5, 214},
    {6, 1, 200, 5e-6, 208},
    {7, 1, 201, 1e-5, 209},
    {8, 1, 201, 2e-5, 211},
    {9, 1, 201, 1.8e-6, 208},
    {10, 1, 201, 9.5e-6, 209},
}};
inline constexpr long kThm2GlobalN = 214; // n < 214

// Published rounded coefficients (see bounds::coefficient_checks) and the
// closed-form n-bounds they feed.
inline constexpr double kTwoLogCoefficient = 1.1e10;
inline constexpr double kThreeLogComposedCoefficient = 8.1e22;
inline constexpr double kThreeLogSqrt5Coefficient = 1.51e12;
inline constexpr double kFirstNBoundConstant = 1.7e23;
inline constexpr double kSecondNBoundConstant = 1.9e26;

// Solution-table sizes.
inline constexpr long kEq1SolutionCount = 49;
inline constexpr long kEq2SolutionCount = 40;

} // namespace concatdioph::reference
