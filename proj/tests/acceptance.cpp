// Acceptance suite: runs every published-value criterion end to end and
// prints one PASS/FAIL line per criterion. Exit status is nonzero when any
// criterion fails. The full step-2 grid sweeps run only with --full-grid
// (tens of minutes; parallelized via --threads).

#include <chrono>
#include <cstring>
#include <iostream>
#include <random>
#include <thread>
#include <vector>

#include "concatdioph/bounds.hpp"
#include "concatdioph/reduction.hpp"
#include "concatdioph/reference_tables.hpp"
#include "concatdioph/search.hpp"

using namespace concatdioph;
namespace red = concatdioph::reduction;

namespace {

struct Criterion {
    Criterion(int id_, std::string name_) : id(id_), name(std::move(name_)) {}

    int id;
    std::string name;
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& detail) {
        if (!ok) {
            pass = false;
            notes.push_back("FAILED: " + detail);
        }
    }
    void note(const std::string& detail) { notes.push_back(detail); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

mpz_class big(long mantissa, int exp10) { return mantissa * detail::pow10(exp10); }

std::string eps_str(const red::ReductionOutcome& r) {
    return HPReal::from_scaled(r.eps.lo_num(), r.eps.lo_num(), Precision(r.precision_used))
        .midpoint_string(6);
}

// ---------------------------------------------------------------- criterion 1
Criterion criterion_solution_tables(int threads) {
    Criterion c{1, "solution tables: exhaustive search matches the 49 + 40 tuples exactly"};
    search::TableReport r = search::verify_tables(1500, threads);
    c.check(r.ok, "search/table diff is nonempty");
    c.check(r.found_eq1 == reference::kEq1SolutionCount,
            "eq 1 count " + std::to_string(r.found_eq1));
    c.check(r.found_eq2 == reference::kEq2SolutionCount,
            "eq 2 count " + std::to_string(r.found_eq2));
    for (const auto& d : r.diffs)
        c.note("diff at eq " + std::to_string(d.eq) + " base " + std::to_string(d.b) + ": " +
               std::to_string(d.missing.size()) + " missing, " + std::to_string(d.extra.size()) +
               " extra");
    c.note("found " + std::to_string(r.found_eq1) + " + " + std::to_string(r.found_eq2) +
           " tuples at n_max = 1500");
    return c;
}

// ---------------------------------------------------------------- criterion 2
Criterion criterion_legendre_amax() {
    Criterion c{2, "legendre a_max row at M = 1.3e29 and the n-k < 161 bound"};
    mpz_class M = big(13, 28);
    for (int b = 2; b <= 10; ++b) {
        red::LegendreResult r = red::legendre_amax(tau_log_ratio(b), M, Precision(256));
        long want = reference::kAmaxRow[static_cast<size_t>(b - 2)];
        c.check(r.a_max == want, "b=" + std::to_string(b) + " a_max=" + r.a_max.get_str() +
                                     " expected " + std::to_string(want));
        long nk = red::legendre_nk_bound(b, M, reference::kLegendreGlobalAmax);
        c.check(nk <= reference::kLegendreNkBound,
                "b=" + std::to_string(b) + " global-a_max bound " + std::to_string(nk) + " > " +
                    std::to_string(reference::kLegendreNkBound));
    }
    c.note("a_max row {134,161,66,59,347,35,44,80,106} reproduced; n-k < 161 certified");
    return c;
}

HPReal scenario_A_eval(Precision p) {
    return red::scenario_A(red::ScenarioKind::thm2_step1).eval(p);
}

// ---------------------------------------------------------------- criterion 3
Criterion criterion_step1_reductions(std::vector<red::ScenarioOutcome>& outcomes) {
    Criterion c{3, "first reduction round: eps > 0 per base, rows within +2, n-k < 177"};
    long worst = 0;
    for (int b = 2; b <= 10; ++b) {
        red::ScenarioOutcome out = red::run_scenario({red::ScenarioKind::thm2_step1, b});
        const auto& row = reference::kThm2Step1Rows[static_cast<size_t>(b - 2)];
        bool success = out.dp && out.dp->status == red::DPStatus::success;
        c.check(success, "b=" + std::to_string(b) + " reduction did not succeed");
        if (!success) continue;
        outcomes.push_back(out);
        worst = std::max(worst, out.bound);
        c.note("b=" + std::to_string(b) + ": q index " + std::to_string(out.dp->conv_index) +
               ", eps > " + eps_str(*out.dp) + " (row: > " + std::to_string(row.eps_gt) +
               "), n-k < " + std::to_string(out.bound) + " (row: < " +
               std::to_string(row.nk_lt) + ")");
        bool row_ok = out.bound <= row.nk_lt + 2;
        c.check(row_ok, "b=" + std::to_string(b) + " bound " + std::to_string(out.bound) +
                            " exceeds published row " + std::to_string(row.nk_lt) + " + 2");
        if (!row_ok) {
            // evidence: the epsilon column does agree with ours, and with the
            // first q > 6M no epsilon <= 1/2 can reach the printed row value,
            // so the published bound row is internally inconsistent with its
            // own epsilon row (the values for bases 4..7 appear shifted by
            // one column; the multiset of row values matches ours exactly)
            Precision wp(64);
            HPReal min_x = hp_ln((scenario_A_eval(wp) * out.dp->q) * mpz_class(2)) /
                           hp_const(ConstName::ln_alpha, wp);
            c.note("diagnostic b=" + std::to_string(b) +
                   ": even with eps at its cap 1/2, the same convergent gives n-k < " +
                   min_x.midpoint_string(5) + "; the printed row value is unreachable");
        }
    }
    c.check(worst <= reference::kThm2Step1GlobalNk,
            "global n-k bound " + std::to_string(worst) + " exceeds 177");
    c.note("global: n-k < " + std::to_string(worst) + " (published conclusion: n-k < 177)");
    return c;
}

// ---------------------------------------------------------------- criterion 4
Criterion criterion_step2_reductions(std::vector<red::ScenarioOutcome>& outcomes,
                                     bool full_grid, int threads) {
    Criterion c{4, "second reduction round: published worst rows and global n-bounds"};
    long worst1 = 0;
    for (const auto& row : reference::kThm1Step2Rows) {
        red::ScenarioOutcome out =
            red::run_scenario({red::ScenarioKind::thm1_step2, row.b, row.m, row.nk});
        bool success = out.dp && out.dp->status == red::DPStatus::success;
        c.check(success, "thm1 b=" + std::to_string(row.b) + " reduction did not succeed");
        if (!success) continue;
        outcomes.push_back(out);
        worst1 = std::max(worst1, out.bound);
        c.note("thm1 b=" + std::to_string(row.b) + " (m=" + std::to_string(row.m) +
               ", n-k=" + std::to_string(row.nk) + "): eps > " + eps_str(*out.dp) + ", n < " +
               std::to_string(out.bound) + " (row: < " + std::to_string(row.n_lt) + ")");
        c.check(out.bound <= row.n_lt, "thm1 b=" + std::to_string(row.b) + " bound " +
                                           std::to_string(out.bound) + " exceeds row " +
                                           std::to_string(row.n_lt));
    }
    c.check(worst1 <= reference::kThm1GlobalN,
            "thm1 global bound " + std::to_string(worst1) + " exceeds 229");

    long worst2 = 0;
    for (const auto& row : reference::kThm2Step2Rows) {
        red::ScenarioOutcome out =
            red::run_scenario({red::ScenarioKind::thm2_step2, row.b, row.m, row.nk});
        bool success = out.dp && out.dp->status == red::DPStatus::success;
        c.check(success, "thm2 b=" + std::to_string(row.b) + " reduction did not succeed");
        if (!success) continue;
        outcomes.push_back(out);
        worst2 = std::max(worst2, out.bound);
        c.note("thm2 b=" + std::to_string(row.b) + " (m=" + std::to_string(row.m) +
               ", n-k=" + std::to_string(row.nk) + "): eps > " + eps_str(*out.dp) + ", n < " +
               std::to_string(out.bound) + " (row: < " + std::to_string(row.n_lt) + ")");
        bool row_ok = out.bound <= row.n_lt;
        c.check(row_ok, "thm2 b=" + std::to_string(row.b) + " bound " +
                            std::to_string(out.bound) + " exceeds row " +
                            std::to_string(row.n_lt));
        if (!row_ok)
            // the printed worst cell lies outside the published sweep grid
            // (n-k <= 199) and its bound is forced by (q, eps); the in-grid
            // maximum stays below the row (see --full-grid)
            c.note("diagnostic thm2 b=" + std::to_string(row.b) + ": printed cell n-k=" +
                   std::to_string(row.nk) +
                   " is outside the published grid (n-k <= 199); the bound at that cell is "
                   "determined by the matching (q, eps) pair");
    }
    c.check(worst2 <= reference::kThm2GlobalN,
            "thm2 global bound " + std::to_string(worst2) + " exceeds 214");
    c.note("globals: n < " + std::to_string(worst1) + " (published n <= 229), n < " +
           std::to_string(worst2) + " (published n < 214)");

    if (!full_grid) {
        c.note("full-grid sweeps skipped (pass --full-grid to run them)");
        return c;
    }
    for (red::ScenarioKind kind :
         {red::ScenarioKind::thm1_step2, red::ScenarioKind::thm2_step2}) {
        red::GridSpec g = red::published_grid(kind);
        long global = kind == red::ScenarioKind::thm1_step2 ? reference::kThm1GlobalN
                                                            : reference::kThm2GlobalN;
        for (int b = 2; b <= 10; ++b) {
            long max_bound = 0, cells = 0;
            long worst_m = -1, worst_nk = -1;
            std::vector<std::pair<long, long>> unresolved;
            red::run_grid(kind, b, g.m_lo, g.m_hi, g.nk_lo, g.nk_hi, threads,
                          [&](const red::GridCell& cell) {
                              ++cells;
                              if (cell.out.status != red::DPStatus::success) {
                                  unresolved.emplace_back(cell.m, cell.nk);
                                  return;
                              }
                              if (cell.out.strict_bound > max_bound) {
                                  max_bound = cell.out.strict_bound;
                                  worst_m = cell.m;
                                  worst_nk = cell.nk;
                              }
                          });
            // a cell without positive eps is admissible only when its mu is
            // certified degenerate (mu = u*tau + v exactly); such cells are
            // settled by the best-approximation route instead
            for (auto [fm, fnk] : unresolved) {
                auto deg = red::detect_degenerate_mu(kind, b, fm, fnk);
                if (!deg) {
                    c.check(false, std::string(red::to_string(kind)) + " grid b=" +
                                       std::to_string(b) + " cell (m=" + std::to_string(fm) +
                                       ", n-k=" + std::to_string(fnk) +
                                       ") has no positive eps and is not degenerate");
                    continue;
                }
                long fb = red::degenerate_cell_bound(kind, b, deg->u);
                c.check(fb <= global, std::string(red::to_string(kind)) + " degenerate cell b=" +
                                          std::to_string(b) + " fallback bound " +
                                          std::to_string(fb) + " exceeds " +
                                          std::to_string(global));
                c.note(std::string(red::to_string(kind)) + " grid b=" + std::to_string(b) +
                       " cell (m=" + std::to_string(fm) + ", n-k=" + std::to_string(fnk) +
                       "): mu = " + std::to_string(deg->u) + "*tau + " + std::to_string(deg->v) +
                       " exactly (criterion inapplicable); best-approximation route gives n < " +
                       std::to_string(fb));
                max_bound = std::max(max_bound, fb);
            }
            c.check(max_bound <= global,
                    std::string(red::to_string(kind)) + " grid b=" + std::to_string(b) +
                        " max bound " + std::to_string(max_bound) + " exceeds " +
                        std::to_string(global));
            c.note(std::string(red::to_string(kind)) + " grid b=" + std::to_string(b) + ": " +
                   std::to_string(cells) + " cells, max n < " + std::to_string(max_bound) +
                   " at (m=" + std::to_string(worst_m) + ", n-k=" + std::to_string(worst_nk) +
                   ")");
        }
    }
    return c;
}

// ---------------------------------------------------------------- criterion 5
Criterion criterion_matveev_constants() {
    Criterion c{5, "linear-form coefficients: recomputed values against published roundings"};
    auto checks = bounds::coefficient_checks();
    const char* published[] = {"1.1e10", "8.1e22", "1.51e12", "1.7e23", "1.9e26"};
    for (size_t i = 0; i < checks.size(); ++i) {
        const auto& k = checks[i];
        c.check(k.dominated, std::string(k.name) + " recomputation exceeds the published " +
                                 published[i]);
        c.note(std::string(k.name) + ": recomputed " + k.computed.midpoint_string(6) +
               " vs published " + published[i] +
               (k.within_2pct ? " (within 2%)" : " (dominated; published rounding is coarser)"));
    }
    // the two direct formula roundings must also match within two percent
    c.check(checks[2].within_2pct, "three-log sqrt5 coefficient not within 2% of 1.51e12");
    c.check(checks[3].within_2pct, "first n-bound constant not within 2% of 1.7e23");
    return c;
}

// ---------------------------------------------------------------- criterion 6
Criterion criterion_guzman_closure() {
    Criterion c{6, "resolution-step closure: 4 T (ln T)^2 below both closed forms, all bases"};
    Precision p(64);
    for (int b = 2; b <= 10; ++b) {
        HPReal lnb = hp_const(ConstName::ln_b, b, p);
        HPReal t1 = HPReal::from_int(big(17, 22), p) * lnb.pow_int(2);
        HPReal c1 = HPReal::from_int(big(44, 26), p) * lnb.pow_int(4);
        c.check(bounds::guzman_luca(2, t1, p).certainly_less(c1),
                "b=" + std::to_string(b) + " first closure fails");
        HPReal t2 = HPReal::from_int(big(19, 25), p) * lnb.pow_int(2);
        HPReal c2 = HPReal::from_int(big(63, 29), p) * lnb.pow_int(4);
        c.check(bounds::guzman_luca(2, t2, p).certainly_less(c2),
                "b=" + std::to_string(b) + " second closure fails");
    }
    c.note("both instantiations hold on enclosures for every base");
    return c;
}

// ---------------------------------------------------------------- criterion 7
Criterion criterion_property_suites(const std::vector<red::ScenarioOutcome>& outcomes) {
    Criterion c{7, "property suites: growth sandwiches, digits, cf identities, analysis lemma,"
                   " eps stability, window equivalence"};

    // growth sandwiches and closed-form residuals up to n = 2000; the
    // exponent-zero rows are equalities, which pow_int(0) = [1, 1] settles
    // exactly
    {
        Precision p(550);
        const mpz_class& scale = detail::pow10(550);
        HPReal alpha = hp_const(ConstName::alpha, p);
        HPReal sqrt5 = hp_const(ConstName::sqrt5, p);
        Natural f0 = 0, f1 = 1, l0 = 2, l1 = 1;
        bool growth_ok = true, residual_ok = true;
        // certified a <= x resp. x <= b against exact integers
        auto below = [&](const HPReal& a, const Natural& x) { return a.hi_num() <= x * scale; };
        auto above = [&](const Natural& x, const HPReal& b) { return x * scale <= b.lo_num(); };
        for (long n = 0; n <= 2000; ++n) {
            HPReal a_n = alpha.pow_int(n);
            growth_ok = growth_ok && below(alpha.pow_int(n - 1), l0) &&
                        above(l0, a_n * mpz_class(2));
            if (n >= 1)
                growth_ok = growth_ok && below(alpha.pow_int(n - 2), f0) &&
                            above(f0, alpha.pow_int(n - 1));
            if (n >= 2)
                residual_ok =
                    residual_ok &&
                    (HPReal::from_int(f0, p) * sqrt5 - a_n).abs().certainly_less_int(1) &&
                    (HPReal::from_int(l0, p) - a_n).abs().certainly_less_int(1);
            Natural f2 = f0 + f1, l2 = l0 + l1;
            f0 = f1;
            f1 = f2;
            l0 = l1;
            l1 = l2;
        }
        c.check(growth_ok, "growth sandwich violated for some n <= 2000");
        c.check(residual_ok, "closed-form residual reached 1 for some n <= 2000");
    }

    // digit-length bracket on 1e5 random pairs
    {
        std::mt19937_64 rng(0xC0FFEE);
        bool ok = true;
        for (int i = 0; i < 100000 && ok; ++i) {
            Natural x = rng() % 1000000 + 1;
            if (i % 9 == 0) x = x * x * (rng() % 1000 + 1);
            int b = static_cast<int>(rng() % 9) + 2;
            int d = digit_len(x, b);
            Natural lo, hi;
            mpz_ui_pow_ui(lo.get_mpz_t(), static_cast<unsigned long>(b),
                          static_cast<unsigned long>(d - 1));
            mpz_ui_pow_ui(hi.get_mpz_t(), static_cast<unsigned long>(b),
                          static_cast<unsigned long>(d));
            ok = lo <= x && x < hi;
        }
        c.check(ok, "digit-length bracket violated");
    }

    // continued-fraction identities, 200 quotients per base
    {
        bool ok = true;
        for (int b = 2; b <= 10 && ok; ++b) {
            CFExpansion cf = cf_expand(tau_log_ratio(b), CFStop::max_terms(200), Precision(256));
            mpz_class pm1 = 1, pm2 = 0, qm1 = 0, qm2 = 1;
            for (size_t i = 0; i < cf.size() && ok; ++i) {
                ok = cf.p[i] == cf.quotients[i] * pm1 + pm2 &&
                     cf.q[i] == cf.quotients[i] * qm1 + qm2;
                if (i >= 1) {
                    mpz_class det = cf.p[i] * qm1 - pm1 * cf.q[i];
                    ok = ok && det == (i % 2 == 1 ? 1 : -1);
                }
                mpz_class g;
                mpz_gcd(g.get_mpz_t(), cf.p[i].get_mpz_t(), cf.q[i].get_mpz_t());
                ok = ok && g == 1;
                pm2 = pm1;
                pm1 = cf.p[i];
                qm2 = qm1;
                qm1 = cf.q[i];
            }
        }
        c.check(ok, "cf recurrence/determinant/coprimality identity violated");
    }

    // analysis lemma sampling: (1/2)|x| < |ln(1+x)| < (3/2)|x| on 1e3 points
    {
        std::mt19937_64 rng(0xBEEF);
        Precision p(64);
        bool ok = true;
        int done = 0;
        while (done < 1000) {
            long num = static_cast<long>(rng() % 19999) - 9999;
            if (num == 0) continue;
            long den = 20001 + static_cast<long>(rng() % 20000);
            HPReal x = HPReal::from_ratio(num, den, p);
            HPReal l = hp_ln1p(x).abs();
            ok = ok && (x.abs() / 2L).certainly_less(l) &&
                 l.certainly_less(x.abs() * mpz_class(3) / 2L);
            ++done;
        }
        c.check(ok, "analysis sandwich violated");
    }

    // doubling the precision preserves every successful eps sign
    {
        bool ok = true;
        for (const auto& out : outcomes) {
            red::ScenarioOutcome redo = red::run_scenario(out.id, Precision(2400));
            ok = ok && redo.dp && redo.dp->status == red::DPStatus::success &&
                 redo.dp->eps.is_positive() && redo.dp->w_bound <= out.dp->w_bound + 1 &&
                 out.dp->w_bound <= redo.dp->w_bound + 1;
            if (!ok) {
                c.check(false, "eps sign/bound unstable for " +
                                   std::string(red::to_string(out.id.kind)) + " b=" +
                                   std::to_string(out.id.b));
                break;
            }
        }
        c.check(ok, "eps sign stability failed");
        c.note("eps sign and w-bound stable at doubled precision for all " +
               std::to_string(outcomes.size()) + " successful reductions");
    }

    // windowed search equals unpruned brute force at n <= 60
    {
        bool ok = true;
        for (int eq : {1, 2}) {
            for (int b = 2; b <= 10 && ok; ++b) {
                std::vector<search::SolutionTuple> brute;
                LucasTable table(60);
                for (long k = 0; k <= 60; ++k) {
                    Natural tail = eq == 1 ? fib(k) : lucas(k);
                    int d = digit_len(tail, b);
                    Natural shift;
                    mpz_ui_pow_ui(shift.get_mpz_t(), static_cast<unsigned long>(b),
                                  static_cast<unsigned long>(d));
                    for (long m = (eq == 2 ? 1 : 0); m <= 60; ++m) {
                        Natural head = eq == 1 ? lucas(m) : fib(m);
                        auto n = table.index_of(head * shift + tail, 60);
                        if (n) brute.push_back({eq, *n, m, k, b, d});
                    }
                }
                std::sort(brute.begin(), brute.end());
                ok = search::search_solutions(eq, b, 60).tuples == brute;
            }
        }
        c.check(ok, "windowed search disagrees with brute force at n <= 60");
    }
    return c;
}

} // namespace

int main(int argc, char** argv) {
    bool full_grid = false;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--full-grid") == 0) full_grid = true;
        else if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc)
            threads = std::atoi(argv[++i]);
        else {
            std::cerr << "usage: acceptance [--full-grid] [--threads N]\n";
            return 2;
        }
    }

    std::vector<red::ScenarioOutcome> outcomes;
    std::vector<Criterion> results;
    auto run = [&](auto&& fn) {
        auto t0 = std::chrono::steady_clock::now();
        Criterion c = fn();
        double dt = seconds_since(t0);
        std::cout << "CRITERION " << c.id << " " << (c.pass ? "PASS" : "FAIL") << " ["
                  << std::fixed;
        std::cout.precision(1);
        std::cout << dt << "s] " << c.name << "\n";
        for (const auto& n : c.notes) std::cout << "    " << n << "\n";
        results.push_back(std::move(c));
    };

    run([&] { return criterion_solution_tables(threads); });
    run([] { return criterion_legendre_amax(); });
    run([&] { return criterion_step1_reductions(outcomes); });
    run([&] { return criterion_step2_reductions(outcomes, full_grid, threads); });
    run([] { return criterion_matveev_constants(); });
    run([] { return criterion_guzman_closure(); });
    run([&] { return criterion_property_suites(outcomes); });

    int failed = 0;
    for (const auto& c : results)
        if (!c.pass) ++failed;
    std::cout << "SUMMARY: " << (results.size() - static_cast<size_t>(failed)) << "/"
              << results.size() << " criteria pass\n";
    return failed == 0 ? 0 : 1;
}
