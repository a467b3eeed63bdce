#include "concatdioph/search.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "concatdioph/bounds.hpp"

namespace concatdioph::search {

namespace {

struct SequenceCache {
    std::vector<Natural> heads; // L_m (eq 1) or F_m (eq 2)
    std::vector<Natural> tails; // F_k (eq 1) or L_k (eq 2)
};

SequenceCache build_cache(int eq, long upto) {
    SequenceCache c;
    c.heads.reserve(static_cast<size_t>(upto) + 1);
    c.tails.reserve(static_cast<size_t>(upto) + 1);
    Natural f0 = 0, f1 = 1, l0 = 2, l1 = 1;
    for (long i = 0; i <= upto; ++i) {
        c.heads.push_back(eq == 1 ? l0 : f0);
        c.tails.push_back(eq == 1 ? f0 : l0);
        Natural f2 = f0 + f1, l2 = l0 + l1;
        f0 = f1;
        f1 = f2;
        l0 = l1;
        l1 = l2;
    }
    return c;
}

// Candidates over one k-stripe. For fixed k the head value is nondecreasing
// in m from index 1 on, so the stripe exits once the candidate passes the
// largest admissible Lucas value.
void scan_stripe(int eq, int b, long n_max, long k_lo, long k_hi, const LucasTable& table,
                 const SequenceCache& cache, const Natural& biggest, long m_min,
                 long km_sum_below, std::vector<SolutionTuple>& out) {
    Natural v;
    for (long k = k_lo; k <= k_hi; ++k) {
        const Natural& tail = cache.tails[static_cast<size_t>(k)];
        int d = digit_len(tail, b);
        Natural shift;
        mpz_ui_pow_ui(shift.get_mpz_t(), static_cast<unsigned long>(b),
                      static_cast<unsigned long>(d));
        for (long m = m_min; k + m < km_sum_below; ++m) {
            v = cache.heads[static_cast<size_t>(m)] * shift + tail;
            if (v > biggest) {
                if (m >= 2) break; // nondecreasing from here on
                continue;
            }
            auto n = table.index_of(v, n_max);
            if (n) out.push_back({eq, *n, m, k, b, d});
        }
    }
}

} // namespace

SolutionSet search_solutions(int eq, int b, long n_max, int threads, bool include_trivial) {
    if (eq != 1 && eq != 2) throw std::invalid_argument("search_solutions: eq must be 1 or 2");
    if (b < 2 || b > 10) throw std::invalid_argument("search_solutions: base must be in 2..10");
    if (n_max < 0) throw std::invalid_argument("search_solutions: negative n_max");
    if (threads < 1) threads = 1;

    bounds::SearchWindow w = bounds::search_window(eq, b, n_max);
    LucasTable table(n_max);
    Natural biggest = table.value(n_max);
    SequenceCache cache = build_cache(eq, w.km_sum_below);

    std::vector<std::vector<SolutionTuple>> parts(static_cast<size_t>(threads));
    if (threads == 1) {
        scan_stripe(eq, b, n_max, w.k_min, w.k_max, table, cache, biggest, w.m_min,
                    w.km_sum_below, parts[0]);
    } else {
        std::vector<std::thread> pool;
        long span = w.k_max - w.k_min + 1;
        for (int t = 0; t < threads; ++t) {
            long lo = w.k_min + span * t / threads;
            long hi = w.k_min + span * (t + 1) / threads - 1;
            pool.emplace_back([&, t, lo, hi]() {
                scan_stripe(eq, b, n_max, lo, hi, table, cache, biggest, w.m_min,
                            w.km_sum_below, parts[static_cast<size_t>(t)]);
            });
        }
        for (auto& th : pool) th.join();
    }

    SolutionSet result;
    result.eq = eq;
    result.b = b;
    result.n_max = n_max;
    for (auto& part : parts)
        result.tuples.insert(result.tuples.end(), part.begin(), part.end());
    std::sort(result.tuples.begin(), result.tuples.end());
    result.tuples.erase(std::unique(result.tuples.begin(), result.tuples.end()),
                        result.tuples.end());

    if (include_trivial && eq == 2) {
        for (long n = 0; n <= n_max; ++n)
            result.trivial_family.push_back({2, n, 0, n, b, digit_len(lucas(n), b)});
    }
    return result;
}

bool verify_tuple(const SolutionTuple& t) {
    if (t.b < 2 || t.b > 10) return false;
    if (t.n < 0 || t.m < 0 || t.k < 0 || t.d < 1) return false;
    if (t.eq != 1 && t.eq != 2) return false;
    if (t.eq == 2 && t.m < 1) return false;
    Natural tail = t.eq == 1 ? fib(t.k) : lucas(t.k);
    if (digit_len(tail, t.b) != t.d) return false;
    Natural head = t.eq == 1 ? lucas(t.m) : fib(t.m);
    Natural shift;
    mpz_ui_pow_ui(shift.get_mpz_t(), static_cast<unsigned long>(t.b),
                  static_cast<unsigned long>(t.d));
    return lucas(t.n) == head * shift + tail;
}

std::vector<SolutionTuple> parse_solutions_csv(const std::string& csv) {
    std::vector<SolutionTuple> out;
    std::istringstream in(csv);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line == "eq,b,n,m,k,d") continue; // header
        }
        SolutionTuple t{};
        char c1, c2, c3, c4, c5;
        std::istringstream ls(line);
        if (!(ls >> t.eq >> c1 >> t.b >> c2 >> t.n >> c3 >> t.m >> c4 >> t.k >> c5 >> t.d) ||
            c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',' || c5 != ',')
            throw std::invalid_argument("corrupt solutions csv line: " + line);
        out.push_back(t);
    }
    return out;
}

std::string to_csv(const std::vector<SolutionTuple>& tuples) {
    std::ostringstream out;
    out << "eq,b,n,m,k,d\n";
    for (const auto& t : tuples)
        out << t.eq << ',' << t.b << ',' << t.n << ',' << t.m << ',' << t.k << ',' << t.d << '\n';
    return out.str();
}

TableReport verify_tables(long n_max, int threads, const std::string& csv) {
    std::vector<SolutionTuple> expected =
        parse_solutions_csv(csv.empty() ? embedded_expected_csv() : csv);
    TableReport report;
    report.ok = true;
    for (const auto& t : expected)
        (t.eq == 1 ? report.expected_eq1 : report.expected_eq2) += 1;

    for (int eq : {1, 2}) {
        for (int b = 2; b <= 10; ++b) {
            SolutionSet s = search_solutions(eq, b, n_max, threads);
            (eq == 1 ? report.found_eq1 : report.found_eq2) +=
                static_cast<long>(s.tuples.size());
            std::set<SolutionTuple> found(s.tuples.begin(), s.tuples.end());
            std::set<SolutionTuple> want;
            for (const auto& t : expected)
                if (t.eq == eq && t.b == b) want.insert(t);
            TableDiff diff{eq, b, {}, {}};
            for (const auto& t : want)
                if (!found.count(t)) diff.missing.push_back(t);
            for (const auto& t : found)
                if (!want.count(t)) diff.extra.push_back(t);
            if (!diff.missing.empty() || !diff.extra.empty()) {
                report.ok = false;
                report.diffs.push_back(std::move(diff));
            }
        }
    }
    return report;
}

} // namespace concatdioph::search
