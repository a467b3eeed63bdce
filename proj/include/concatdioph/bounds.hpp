#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

#include "concatdioph/hpreal.hpp"

namespace concatdioph::bounds {

// Default precision for bound-formula evaluation; far more than the
// order-of-magnitude assertions need.
inline constexpr int kBoundPrecision = 64;

// Inputs to the explicit lower bound for a nonzero linear form in
// logarithms: t logarithms over a degree-D field, coefficients bounded by
// B, with A_i >= max{D*h(gamma_i), |ln gamma_i|, 0.16}.
struct LinearFormParams {
    int t = 1;
    int D = 1;
    mpz_class B = 1;
    std::vector<HPReal> A;
};

// Enclosure of -1.4 * 30^(t+3) * t^4.5 * D^2 (1+ln D)(1+ln B) A_1...A_t,
// the lower bound for ln|Gamma|. Always negative.
HPReal matveev_log_lower(const LinearFormParams& p,
                         Precision prec = Precision(kBoundPrecision));

// The parameter-independent prefix 1.4 * 30^(t+3) * t^4.5 * D^2 (1+ln D);
// useful for reproducing the published rounded coefficients.
HPReal matveev_base(int t, int D, Precision prec = Precision(kBoundPrecision));

// Resolution step: if s >= 1, T > (4 s^2)^s and T > Z/(ln Z)^s, then
// Z < 2^s * T * (ln T)^s. Returns the right-hand side; throws
// HypothesisError when T fails the hypothesis.
HPReal guzman_luca(int s, const HPReal& T, Precision prec = Precision(kBoundPrecision));

// The four explicit bound expressions established before reduction.
// L3_1 and L3_3 need aux = (n, m).
enum class Lemma { L3_1, L3_2, L3_3, L3_4 };

HPReal lemma_bound(Lemma which, int b, std::optional<std::pair<long, long>> aux = std::nullopt,
                   Precision prec = Precision(kBoundPrecision));

// Concrete iteration ranges for the exhaustive search: k, m in
// [0, n_max + 5] with k + m < n_max + 5; equation 2 excludes m = 0 (the
// trivial family n = k). The digit and index inequalities behind the
// window are listed for reference; the search recomputes d exactly.
struct SearchWindow {
    int eq = 1;
    int b = 2;
    long n_max = 0;
    long m_min = 0;
    long m_max = 0;
    long k_min = 0;
    long k_max = 0;
    long km_sum_below = 0; // iterate pairs with k + m < km_sum_below
    double n_window_above_km = 0.0; // 7*ln(b): width of the n window over k+m-5
};

SearchWindow search_window(int eq, int b, long n_max);

// One published-vs-recomputed coefficient comparison (the workbench's
// transcription-drift guard): the recomputed enclosure must sit below the
// published rounded constant.
struct CoefficientCheck {
    const char* name;
    HPReal computed;
    HPReal published;
    bool dominated;    // computed <= published (entire enclosures)
    bool within_2pct;  // |computed - published| <= 2% of published
};

// Recomputes the linear-form coefficients and intermediate bound constants
// that the proofs round to 1.1e10, 8.1e22, 1.51e12, 1.7e23 and 1.9e26.
std::vector<CoefficientCheck> coefficient_checks(Precision prec = Precision(kBoundPrecision));

} // namespace concatdioph::bounds
