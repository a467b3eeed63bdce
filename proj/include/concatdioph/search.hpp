#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "concatdioph/seqcore.hpp"

namespace concatdioph::search {

// A solution of one of the two concatenation equations:
//   eq 1: L_n = L_m * b^d + F_k, d = digit_len(F_k, b)
//   eq 2: L_n = F_m * b^d + L_k, d = digit_len(L_k, b), m >= 1
struct SolutionTuple {
    int eq;
    long n, m, k;
    int b;
    int d;

    friend bool operator==(const SolutionTuple& a, const SolutionTuple& b) = default;
    friend auto operator<=>(const SolutionTuple& a, const SolutionTuple& b) = default;
};

struct SolutionSet {
    int eq;
    int b;
    long n_max;
    std::vector<SolutionTuple> tuples; // canonical (n, m, k) ascending, no duplicates
    // The excluded trivial family of equation 2 (m = 0, n = k), emitted only
    // when requested; never merged into tuples.
    std::vector<SolutionTuple> trivial_family;
};

// Exhaustive solver over the (k, m) window with exact arithmetic and
// Lucas-membership lookup. threads > 1 splits the k range; the result is
// identical regardless of partitioning.
SolutionSet search_solutions(int eq, int b, long n_max, int threads = 1,
                             bool include_trivial = false);

// Exact recheck of a single tuple: equation and digit-length side
// condition both hold.
bool verify_tuple(const SolutionTuple& t);

// Comparison of a full search (n_max = 1500, all eq, all b) against the
// embedded expected tables.
struct TableDiff {
    int eq;
    int b;
    std::vector<SolutionTuple> missing; // expected but not found
    std::vector<SolutionTuple> extra;   // found but not expected
};

struct TableReport {
    bool ok = false;
    long found_eq1 = 0, found_eq2 = 0;
    long expected_eq1 = 0, expected_eq2 = 0;
    std::vector<TableDiff> diffs; // only (eq, b) pairs with discrepancies
};

// csv: the expected tables, columns eq,b,n,m,k,d with a header row; empty
// string selects the embedded copy. Throws std::invalid_argument on a
// corrupt resource.
TableReport verify_tables(long n_max = 1500, int threads = 1, const std::string& csv = "");

// Expected-table helpers (the CSV format is a stability contract).
std::vector<SolutionTuple> parse_solutions_csv(const std::string& csv);
std::string to_csv(const std::vector<SolutionTuple>& tuples);
const std::string& embedded_expected_csv();

} // namespace concatdioph::search
