#pragma once

#include <gmpxx.h>

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "concatdioph/contfrac.hpp"
#include "concatdioph/hpreal.hpp"

namespace concatdioph::reduction {

// Reductions run at 1200 digits by default (generous margin over what the
// epsilon signs need); escalation doubles up to the global cap.
inline constexpr int kReductionPrecision = 1200;
// Convergents tried past the first q > 6M before giving up on epsilon > 0.
inline constexpr int kRetryBudget = 25;

struct DPParams {
    Refinable tau;
    Refinable mu;
    Refinable A; // A > 0
    Refinable B; // B > 1
    mpz_class M; // M > 1
    Precision prec{kReductionPrecision};
    int retry_budget = kRetryBudget;
};

enum class DPStatus { success, eps_nonpositive, exhausted };

const char* to_string(DPStatus s);

struct ReductionOutcome {
    DPStatus status = DPStatus::exhausted;
    long conv_index = -1; // 0-based index of the convergent used
    mpz_class q;          // its denominator
    HPReal eps;           // enclosure of ||mu*q|| - M*||tau*q||, entirely > 0 on success
    long w_bound = -1;    // floor(ln(A*q/eps_lo)/ln B); any solution has w <= w_bound
    long strict_bound = -1; // w < strict_bound, comparable to published "w <" rows
    int precision_used = 0;
};

// Baker-Davenport style reduction: picks the first convergent of tau with
// q > 6M, requires the eps enclosure to be entirely positive (escalating
// precision when it straddles zero), and advances through at most
// retry_budget further convergents when eps is certainly nonpositive.
ReductionOutcome dp_reduce(const DPParams& p);

struct LegendreResult {
    mpz_class a_max; // max partial quotient among a_0..a_N with q_N > M
    size_t upto;     // N
    int precision_used;
};

LegendreResult legendre_amax(const Refinable& tau, const mpz_class& M,
                             Precision prec = Precision(kReductionPrecision));

// Smallest integer X certified to satisfy n-k < X, from the approximation
// chain 1/((a_max+2) d^2) <= |tau - (n-m)/d| < 7b/(d alpha^(n-k)) with
// d < M: X = ceil(ln(7 b (a_max+2) M)/ln alpha).
long legendre_nk_bound(int b, const mpz_class& M, const mpz_class& a_max);

// The four concrete reduction scenarios.
enum class ScenarioKind { thm1_step1, thm1_step2, thm2_step1, thm2_step2 };

const char* to_string(ScenarioKind k);
std::optional<ScenarioKind> scenario_from_string(const std::string& name);

struct ScenarioId {
    ScenarioKind kind;
    int b;
    long m = -1;  // step-2 scenarios only
    long nk = -1; // step-2 scenarios only
};

// The shift mu of the inequality 0 < |u tau - v + mu| < A B^-w for each
// scenario; a refinable recipe evaluable at any precision.
//   thm1_step2: ln(L_m / (1 - alpha^-nk / sqrt 5)) / ln alpha
//   thm2_step1: ln(1 / sqrt 5) / ln alpha            (m, nk unused)
//   thm2_step2: ln(F_m / (1 - alpha^-nk)) / ln alpha (needs m >= 1)
Refinable mu_expr(ScenarioKind kind, long m = -1, long nk = -1);

// Published parameter sets: M = 1.3e29 (thm1 step 1 via Legendre),
// M = 1.3e39, A = 6/ln(alpha) (thm1 step 2), M = 1.8e32 with
// A = 18/ln(alpha) resp. 12/ln(alpha) (thm2 steps 1 and 2); B = alpha.
mpz_class scenario_M(ScenarioKind kind);
Refinable scenario_A(ScenarioKind kind);

struct ScenarioOutcome {
    ScenarioId id;
    std::optional<ReductionOutcome> dp;       // DP scenarios
    std::optional<LegendreResult> legendre;   // thm1_step1
    long bound = -1; // strict: n-k < bound (step 1) or n < bound (step 2)
};

ScenarioOutcome run_scenario(const ScenarioId& id,
                             Precision prec = Precision(kReductionPrecision));

// Reusable machinery for sweeping many mu values against one tau: the
// continued fraction, tau, A and ln(B) are evaluated once per precision
// level and shared read-only across cells.
class DPEngine {
  public:
    DPEngine(Refinable tau, Refinable A, Refinable B, mpz_class M,
             Precision prec = Precision(kReductionPrecision), int retry_budget = kRetryBudget);

    ReductionOutcome reduce(const Refinable& mu) const;

  private:
    struct Level; // per-precision shared state
    const Level& level(Precision p) const;

    Refinable tau_, A_, B_;
    mpz_class M_;
    Precision start_prec_;
    int retry_budget_;
    mutable std::vector<std::shared_ptr<const Level>> levels_;
    mutable std::mutex mu_;
};

struct GridCell {
    long m = 0;
    long nk = 0;
    ReductionOutcome out;
};

// A cell whose mu equals u*tau + v for integers u, v: there the
// epsilon criterion degenerates (||mu q|| = ||u tau q|| up to integers, so
// eps < 0 for large M) and the best-approximation route applies instead.
struct DegenerateMu {
    long u = 0;
    long v = 0;
};

// Certifies mu == u*tau + v by exact arithmetic in Q(sqrt 5): the relation
// holds iff the cell's ratio (F_m or L_m against its alpha-power factor)
// collapses to b^u * alpha^v. Returns the verified (u, v) or nothing.
std::optional<DegenerateMu> detect_degenerate_mu(ScenarioKind kind, int b, long m, long nk,
                                                 Precision prec = Precision(kReductionPrecision));

// Bound for a degenerate cell: with mu = u*tau + v the scenario inequality
// reads |(d+u) tau - (w-v)| < A B^-w, and the best-approximation bound over
// quotients up to q_N > M+u yields w < ln(A (a_max+2) (M+u)) / ln B.
long degenerate_cell_bound(ScenarioKind kind, int b, long u,
                           Precision prec = Precision(kReductionPrecision));

// Full-grid sweep for a step-2 scenario: m in [m_lo, m_hi], n-k in
// [nk_lo, nk_hi]. Cells are processed in deterministic (m, nk) order;
// the sink runs on the calling thread, one completed m-row at a time.
void run_grid(ScenarioKind kind, int b, long m_lo, long m_hi, long nk_lo, long nk_hi,
              int threads, const std::function<void(const GridCell&)>& sink,
              Precision prec = Precision(kReductionPrecision));

// Published step-2 grids: thm1 sweeps 1 <= m <= 166, 3 <= n-k < 161;
// thm2 sweeps 0 <= m <= 182 (m = 0 is skipped: F_0 = 0 degenerates mu),
// 10 <= n-k <= 199.
struct GridSpec {
    long m_lo, m_hi, nk_lo, nk_hi;
};
GridSpec published_grid(ScenarioKind kind);

} // namespace concatdioph::reduction
