#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace concatdioph {

// Arbitrary-precision nonnegative integer.
using Natural = mpz_class;

enum class SequenceKind { Fibonacci, Lucas };

// F_n by fast doubling; F_0 = 0, F_1 = 1.
Natural fib(long n);

// L_n; L_0 = 2, L_1 = 1.
Natural lucas(long n);

// Exact count of base-b digits of x, for 2 <= b <= 10. digit_len(0, b) = 1:
// zero occupies one digit. Satisfies b^(d-1) <= x < b^d for x >= 1.
int digit_len(const Natural& x, int b);

// Precomputed Lucas values up to index n_max + 32, supporting O(log n)
// membership lookup. Immutable after construction; safe to share across
// threads.
class LucasTable {
  public:
    explicit LucasTable(long n_max);

    // Index n <= n_max with L_n == v, if any. The table is strictly
    // increasing from index 1 on; the lone out-of-order value L_0 = 2 is
    // special-cased.
    std::optional<long> index_of(const Natural& v, long n_max) const;

    const Natural& value(long n) const { return values_[static_cast<size_t>(n)]; }
    long capacity() const { return static_cast<long>(values_.size()) - 1; }

  private:
    std::vector<Natural> values_;
};

// Convenience lookup backed by a shared table that grows on demand.
std::optional<long> lucas_index_of(const Natural& v, long n_max);

} // namespace concatdioph
