#include "concatdioph/reduction.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "concatdioph/seqcore.hpp"

namespace concatdioph::reduction {

namespace {

mpz_class big(long mantissa, int exp10) { return mantissa * detail::pow10(exp10); }

// ln(F_m) / ln(L_m) enclosures, cached per (kind, m, precision): the grid
// sweeps revisit each m across hundreds of n-k cells.
HPReal ln_seq_cached(SequenceKind kind, long m, Precision p) {
    struct Key {
        int kind;
        long m;
        int prec;
        bool operator<(const Key& o) const {
            return std::tie(kind, m, prec) < std::tie(o.kind, o.m, o.prec);
        }
    };
    static std::map<Key, HPReal> cache;
    static std::mutex mu;
    Key key{static_cast<int>(kind), m, p.digits()};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    Natural v = kind == SequenceKind::Fibonacci ? fib(m) : lucas(m);
    if (sgn(v) <= 0) throw std::invalid_argument("ln_seq_cached: zero sequence value");
    HPReal r = hp_ln(HPReal::from_int(v, p));
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, r);
    return r;
}

// ln(1 - x) for an enclosure 0 <= x < 1.
HPReal ln_one_minus(const HPReal& x, Precision p) {
    HPReal threshold = HPReal::from_ratio(2, 5, p);
    if (x.abs().certainly_less(threshold)) return hp_ln1p(-x);
    return hp_ln(HPReal::from_int(1, p) - x);
}

} // namespace

const char* to_string(DPStatus s) {
    switch (s) {
    case DPStatus::success: return "success";
    case DPStatus::eps_nonpositive: return "eps_nonpositive";
    case DPStatus::exhausted: return "exhausted";
    }
    return "?";
}

const char* to_string(ScenarioKind k) {
    switch (k) {
    case ScenarioKind::thm1_step1: return "thm1-step1";
    case ScenarioKind::thm1_step2: return "thm1-step2";
    case ScenarioKind::thm2_step1: return "thm2-step1";
    case ScenarioKind::thm2_step2: return "thm2-step2";
    }
    return "?";
}

std::optional<ScenarioKind> scenario_from_string(const std::string& name) {
    for (ScenarioKind k : {ScenarioKind::thm1_step1, ScenarioKind::thm1_step2,
                           ScenarioKind::thm2_step1, ScenarioKind::thm2_step2})
        if (name == to_string(k)) return k;
    return std::nullopt;
}

Refinable mu_expr(ScenarioKind kind, long m, long nk) {
    switch (kind) {
    case ScenarioKind::thm2_step1:
        return Refinable("ln(1/sqrt5)/ln(alpha)", [](Precision p) {
            HPReal half_ln5 = hp_const(ConstName::ln5, p) / 2L;
            return -half_ln5 / hp_const(ConstName::ln_alpha, p);
        });
    case ScenarioKind::thm1_step2: {
        if (m < 0 || nk < 1 || m > 400 || nk > 400)
            throw std::invalid_argument("mu_expr: thm1_step2 needs 0 <= m <= 400, 1 <= nk <= 400");
        std::string d = "ln(L_" + std::to_string(m) + "/(1-alpha^-" + std::to_string(nk) +
                        "/sqrt5))/ln(alpha)";
        return Refinable(d, [m, nk](Precision p) {
            HPReal x = hp_const(ConstName::alpha, p).pow_int(-nk) / hp_const(ConstName::sqrt5, p);
            HPReal num = ln_seq_cached(SequenceKind::Lucas, m, p) - ln_one_minus(x, p);
            return num / hp_const(ConstName::ln_alpha, p);
        });
    }
    case ScenarioKind::thm2_step2: {
        if (m < 1 || nk < 2 || m > 400 || nk > 400)
            throw std::invalid_argument("mu_expr: thm2_step2 needs 1 <= m <= 400, 2 <= nk <= 400");
        std::string d = "ln(F_" + std::to_string(m) + "/(1-alpha^-" + std::to_string(nk) +
                        "))/ln(alpha)";
        return Refinable(d, [m, nk](Precision p) {
            HPReal x = hp_const(ConstName::alpha, p).pow_int(-nk);
            HPReal num = ln_seq_cached(SequenceKind::Fibonacci, m, p) - ln_one_minus(x, p);
            return num / hp_const(ConstName::ln_alpha, p);
        });
    }
    case ScenarioKind::thm1_step1:
        break;
    }
    throw std::invalid_argument("mu_expr: scenario has no mu");
}

mpz_class scenario_M(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::thm1_step1: return big(13, 28); // 1.3e29
    case ScenarioKind::thm1_step2: return big(13, 38); // 1.3e39, as published
    case ScenarioKind::thm2_step1:
    case ScenarioKind::thm2_step2: return big(18, 31); // 1.8e32
    }
    throw std::invalid_argument("scenario_M: unknown scenario");
}

Refinable scenario_A(ScenarioKind kind) {
    long numer = 0;
    switch (kind) {
    case ScenarioKind::thm1_step2: numer = 6; break;
    case ScenarioKind::thm2_step1: numer = 18; break;
    case ScenarioKind::thm2_step2: numer = 12; break;
    case ScenarioKind::thm1_step1:
        throw std::invalid_argument("scenario_A: thm1_step1 has no A");
    }
    return Refinable(std::to_string(numer) + "/ln(alpha)", [numer](Precision p) {
        return HPReal::from_int(numer, p) / hp_const(ConstName::ln_alpha, p);
    });
}

namespace {

Refinable alpha_recipe() {
    return Refinable("alpha", [](Precision p) { return hp_const(ConstName::alpha, p); });
}

} // namespace

struct DPEngine::Level {
    Precision prec;
    HPReal tau_e;
    HPReal A_e;
    HPReal ln_B_e;
    CFExpansion cf;
    size_t first_idx; // first convergent with q > 6M
};

DPEngine::DPEngine(Refinable tau, Refinable A, Refinable B, mpz_class M, Precision prec,
                   int retry_budget)
    : tau_(std::move(tau)), A_(std::move(A)), B_(std::move(B)), M_(std::move(M)),
      start_prec_(prec), retry_budget_(retry_budget) {
    if (M_ <= 1) throw std::invalid_argument("DPEngine: M must exceed 1");
}

const DPEngine::Level& DPEngine::level(Precision p) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        for (const auto& l : levels_)
            if (l->prec == p) return *l;
    }
    auto lv = std::make_shared<Level>(Level{p, HPReal(), HPReal(), HPReal(), CFExpansion(), 0});
    lv->tau_e = tau_.eval(p);
    lv->A_e = A_.eval(p);
    HPReal b_e = B_.eval(p);
    if (!b_e.certainly_greater_int(1)) throw std::invalid_argument("DPEngine: B must exceed 1");
    if (!lv->A_e.is_positive()) throw std::invalid_argument("DPEngine: A must be positive");
    lv->ln_B_e = hp_ln(b_e);
    // expand far enough for the whole retry window
    CFExpansion head = cf_expand(tau_, CFStop::q_exceeds(6 * M_), p);
    lv->first_idx = head.size() - 1;
    lv->cf = cf_expand(tau_, CFStop::max_terms(lv->first_idx + 1 +
                                               static_cast<size_t>(retry_budget_)), p);
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& l : levels_) // another thread may have filled this level
        if (l->prec == p) return *l;
    levels_.push_back(lv);
    return *levels_.back();
}

ReductionOutcome DPEngine::reduce(const Refinable& mu) const {
    Precision p = start_prec_;
    for (;;) {
        bool escalate = false;
        try {
            const Level& lv = level(p);
            HPReal mu_e = mu.eval(p);
            for (int j = 0; j <= retry_budget_; ++j) {
                size_t i = lv.first_idx + static_cast<size_t>(j);
                const mpz_class& q = lv.cf.q[i];
                HPReal eps = frac_nearest(mu_e * q) - frac_nearest(lv.tau_e * q) * M_;
                if (eps.is_positive()) {
                    // The w-bound only needs to pin an integer near a few
                    // hundred; evaluate it at a precision just deep enough
                    // to keep the rounded-down eps endpoint positive.
                    int eps_digits =
                        static_cast<int>(mpz_sizeinbase(eps.lo_num().get_mpz_t(), 10));
                    int leading = p.digits() - eps_digits;
                    Precision wp(std::min(Precision::kMax, std::max(64, leading + 32)));
                    HPReal eps_lo = HPReal::from_scaled(eps.lo_num(), eps.lo_num(), p)
                                        .to_precision(wp);
                    HPReal arg = (lv.A_e.to_precision(wp) * q) /
                                 HPReal::from_scaled(eps_lo.lo_num(), eps_lo.lo_num(), wp);
                    HPReal x = hp_ln(arg) / lv.ln_B_e.to_precision(wp);
                    mpz_class w_floor = detail::fdiv(x.hi_num(), detail::pow10(wp.digits()));
                    ReductionOutcome out;
                    out.status = DPStatus::success;
                    out.conv_index = static_cast<long>(i);
                    out.q = q;
                    out.eps = eps;
                    out.w_bound = w_floor.get_si();
                    out.strict_bound = out.w_bound + 1;
                    out.precision_used = p.digits();
                    return out;
                }
                if (!eps.is_negative() && eps.contains_zero()) {
                    // straddles zero: sharpen before deciding to advance
                    escalate = true;
                    break;
                }
                // certainly nonpositive: try the next convergent
            }
            if (!escalate) {
                ReductionOutcome out;
                out.status = DPStatus::eps_nonpositive;
                out.conv_index = static_cast<long>(lv.first_idx);
                out.q = lv.cf.q[lv.first_idx];
                out.precision_used = p.digits();
                return out;
            }
        } catch (const AmbiguityError&) {
            escalate = true;
        } catch (const EscalationError&) {
            ReductionOutcome out;
            out.status = DPStatus::exhausted;
            out.precision_used = p.digits();
            return out;
        }
        try {
            p = p.doubled();
        } catch (const EscalationError&) {
            ReductionOutcome out;
            out.status = DPStatus::exhausted;
            out.precision_used = p.digits();
            return out;
        }
    }
}

ReductionOutcome dp_reduce(const DPParams& p) {
    DPEngine engine(p.tau, p.A, p.B, p.M, p.prec, p.retry_budget);
    return engine.reduce(p.mu);
}

LegendreResult legendre_amax(const Refinable& tau, const mpz_class& M, Precision prec) {
    CFExpansion cf = cf_expand(tau, CFStop::q_exceeds(M), prec);
    mpz_class a_max = 0;
    for (const mpz_class& a : cf.quotients) a_max = std::max(a_max, a);
    return {a_max, cf.size() - 1, cf.precision_used};
}

long legendre_nk_bound(int b, const mpz_class& M, const mpz_class& a_max) {
    if (b < 2 || b > 10) throw std::invalid_argument("legendre_nk_bound: base must be in 2..10");
    Precision wp(64);
    mpz_class arg = 7 * b * (a_max + 2) * M;
    HPReal x = hp_ln(HPReal::from_int(arg, wp)) / hp_const(ConstName::ln_alpha, wp);
    mpz_class fl = detail::fdiv(x.hi_num(), detail::pow10(wp.digits()));
    return fl.get_si() + 1;
}

ScenarioOutcome run_scenario(const ScenarioId& id, Precision prec) {
    if (id.b < 2 || id.b > 10) throw std::invalid_argument("run_scenario: base must be in 2..10");
    ScenarioOutcome out;
    out.id = id;
    Refinable tau = tau_log_ratio(id.b);
    mpz_class M = scenario_M(id.kind);
    if (id.kind == ScenarioKind::thm1_step1) {
        LegendreResult lr = legendre_amax(tau, M, prec);
        out.legendre = lr;
        out.bound = legendre_nk_bound(id.b, M, lr.a_max);
        return out;
    }
    DPParams p;
    p.tau = tau;
    p.mu = mu_expr(id.kind, id.m, id.nk);
    p.A = scenario_A(id.kind);
    p.B = alpha_recipe();
    p.M = M;
    p.prec = prec;
    ReductionOutcome r = dp_reduce(p);
    out.dp = r;
    out.bound = r.status == DPStatus::success ? r.strict_bound : -1;
    return out;
}

namespace {

// Exact arithmetic in Q(sqrt 5): value a + b*sqrt(5) with rational parts.
struct QuadRat {
    mpq_class a, b;

    friend QuadRat operator*(const QuadRat& x, const QuadRat& y) {
        return {x.a * y.a + 5 * x.b * y.b, x.a * y.b + x.b * y.a};
    }
    friend QuadRat operator-(const QuadRat& x, const QuadRat& y) {
        return {x.a - y.a, x.b - y.b};
    }
    friend bool operator==(const QuadRat& x, const QuadRat& y) {
        return x.a == y.a && x.b == y.b;
    }
};

QuadRat quad_int(const mpz_class& v) { return {mpq_class(v), mpq_class(0)}; }

// alpha^e for any integer e; alpha = (1+sqrt5)/2, alpha^-1 = (-1+sqrt5)/2.
QuadRat quad_alpha_pow(long e) {
    QuadRat base = e >= 0 ? QuadRat{mpq_class(1, 2), mpq_class(1, 2)}
                          : QuadRat{mpq_class(-1, 2), mpq_class(1, 2)};
    unsigned long ue = static_cast<unsigned long>(e >= 0 ? e : -e);
    QuadRat acc = quad_int(1);
    while (ue > 0) {
        if (ue & 1UL) acc = acc * base;
        base = base * base;
        ue >>= 1UL;
    }
    return acc;
}

mpz_class int_pow(long base, long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(e));
    return r;
}

} // namespace

std::optional<DegenerateMu> detect_degenerate_mu(ScenarioKind kind, int b, long m, long nk,
                                                 Precision prec) {
    if (kind != ScenarioKind::thm1_step2 && kind != ScenarioKind::thm2_step2)
        return std::nullopt;
    // candidate (u, v) from a numeric enclosure of mu - u*tau
    HPReal mu = mu_expr(kind, m, nk).eval(prec);
    HPReal tau = tau_log_ratio(b).eval(prec);
    for (long u = -4; u <= 4; ++u) {
        HPReal residual = mu - tau * mpz_class(u);
        auto v_floor = (residual + HPReal::from_ratio(1, 2, prec)).floor_if_unambiguous();
        if (!v_floor) continue;
        long v = v_floor->get_si();
        HPReal gap = (residual - HPReal::from_int(*v_floor, prec)).abs();
        if (!gap.certainly_less(HPReal::from_ratio(1, detail::pow10(8), prec))) continue;
        // exact verification in Q(sqrt5). thm2_step2:
        //   F_m * alpha^nk == b^u * alpha^v * (alpha^nk - 1)
        // thm1_step2 (factor sqrt5 cleared):
        //   L_m * sqrt5 * alpha^nk == b^u * alpha^v * (sqrt5 * alpha^nk - 1)
        QuadRat ank = quad_alpha_pow(nk);
        // b^u with u < 0 handled by scaling the other side
        QuadRat pos = quad_int(int_pow(b, u >= 0 ? u : 0));
        QuadRat neg = quad_int(int_pow(b, u >= 0 ? 0 : -u));
        QuadRat scale = pos * quad_alpha_pow(v);
        bool exact;
        if (kind == ScenarioKind::thm2_step2) {
            QuadRat lhs = neg * quad_int(fib(m)) * ank;
            QuadRat rhs = scale * (ank - quad_int(1));
            exact = lhs == rhs;
        } else {
            QuadRat sqrt5{mpq_class(0), mpq_class(1)};
            QuadRat lhs = neg * quad_int(lucas(m)) * sqrt5 * ank;
            QuadRat rhs = scale * (sqrt5 * ank - quad_int(1));
            exact = lhs == rhs;
        }
        if (exact) return DegenerateMu{u, v};
    }
    return std::nullopt;
}

long degenerate_cell_bound(ScenarioKind kind, int b, long u, Precision prec) {
    // |d + u| stays below M + |u| for every admissible d < M; the d + u = 0
    // case is vacuous (it would force w equal to the small shift v)
    mpz_class M_ext = scenario_M(kind) + (u >= 0 ? u : -u);
    LegendreResult lr = legendre_amax(tau_log_ratio(b), M_ext, prec);
    Precision wp(64);
    HPReal arg = scenario_A(kind).eval(wp) * ((lr.a_max + 2) * M_ext);
    HPReal x = hp_ln(arg) / hp_const(ConstName::ln_alpha, wp);
    mpz_class fl = detail::fdiv(x.hi_num(), detail::pow10(wp.digits()));
    return fl.get_si() + 1;
}

GridSpec published_grid(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::thm1_step2: return {1, 166, 3, 160};
    case ScenarioKind::thm2_step2: return {0, 182, 10, 199};
    default:
        throw std::invalid_argument("published_grid: only step-2 scenarios sweep a grid");
    }
}

void run_grid(ScenarioKind kind, int b, long m_lo, long m_hi, long nk_lo, long nk_hi,
              int threads, const std::function<void(const GridCell&)>& sink, Precision prec) {
    if (kind != ScenarioKind::thm1_step2 && kind != ScenarioKind::thm2_step2)
        throw std::invalid_argument("run_grid: only step-2 scenarios sweep a grid");
    if (threads < 1) threads = 1;

    DPEngine engine(tau_log_ratio(b), scenario_A(kind), alpha_recipe(), scenario_M(kind), prec);
    long nk_count = nk_hi - nk_lo + 1;
    if (nk_count <= 0 || m_hi < m_lo) return;

    for (long m = m_lo; m <= m_hi; ++m) {
        if (kind == ScenarioKind::thm2_step2 && m == 0) continue; // F_0 = 0: mu degenerates
        std::vector<GridCell> row(static_cast<size_t>(nk_count));
        std::atomic<long> next{0};
        auto worker = [&]() {
            for (;;) {
                long idx = next.fetch_add(1);
                if (idx >= nk_count) return;
                long nk = nk_lo + idx;
                GridCell& cell = row[static_cast<size_t>(idx)];
                cell.m = m;
                cell.nk = nk;
                cell.out = engine.reduce(mu_expr(kind, m, nk));
            }
        };
        std::vector<std::thread> pool;
        for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
        for (const GridCell& cell : row) sink(cell);
    }
}

} // namespace concatdioph::reduction
