#include "concatdioph/seqcore.hpp"

#include <memory>
#include <mutex>
#include <stdexcept>

namespace concatdioph {

namespace {

// (F_n, F_{n+1}) by fast doubling:
//   F_{2k}   = F_k * (2*F_{k+1} - F_k)
//   F_{2k+1} = F_k^2 + F_{k+1}^2
std::pair<Natural, Natural> fib_pair(unsigned long n) {
    if (n == 0) return {0, 1};
    auto [a, b] = fib_pair(n >> 1);
    Natural c = a * (2 * b - a);
    Natural d = a * a + b * b;
    if (n & 1UL) return {d, c + d};
    return {c, d};
}

} // namespace

Natural fib(long n) {
    if (n < 0) throw std::invalid_argument("fib: negative index");
    return fib_pair(static_cast<unsigned long>(n)).first;
}

Natural lucas(long n) {
    if (n < 0) throw std::invalid_argument("lucas: negative index");
    // L_n = 2*F_{n+1} - F_n
    auto [fn, fn1] = fib_pair(static_cast<unsigned long>(n));
    return 2 * fn1 - fn;
}

int digit_len(const Natural& x, int b) {
    if (b < 2 || b > 10) throw std::invalid_argument("digit_len: base must be in 2..10");
    if (sgn(x) < 0) throw std::invalid_argument("digit_len: negative value");
    if (sgn(x) == 0) return 1;
    // sizeinbase is exact or one too large; settle with one power comparison
    size_t d = mpz_sizeinbase(x.get_mpz_t(), b);
    if (d == 1) return 1;
    Natural p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(d - 1));
    return p <= x ? static_cast<int>(d) : static_cast<int>(d - 1);
}

LucasTable::LucasTable(long n_max) {
    if (n_max < 0) throw std::invalid_argument("LucasTable: negative cap");
    long cap = n_max + 32; // slack covers the n < k + m + 7*log(b) window
    values_.reserve(static_cast<size_t>(cap) + 1);
    values_.push_back(2);
    values_.push_back(1);
    for (long i = 2; i <= cap; ++i)
        values_.push_back(values_[static_cast<size_t>(i - 1)] + values_[static_cast<size_t>(i - 2)]);
}

std::optional<long> LucasTable::index_of(const Natural& v, long n_max) const {
    if (n_max < 0) return std::nullopt;
    if (v == 2) return 0; // the only value out of ascending order
    // values_[1..] is strictly increasing: 1, 3, 4, 7, 11, ...
    size_t lo = 1, hi = values_.size();
    while (lo < hi) {
        size_t mid = lo + (hi - lo) / 2;
        if (values_[mid] < v)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < values_.size() && values_[lo] == v && static_cast<long>(lo) <= n_max)
        return static_cast<long>(lo);
    return std::nullopt;
}

std::optional<long> lucas_index_of(const Natural& v, long n_max) {
    static std::shared_ptr<const LucasTable> shared;
    static std::mutex mu;
    std::shared_ptr<const LucasTable> table;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (!shared || shared->capacity() < n_max + 32)
            shared = std::make_shared<const LucasTable>(n_max);
        table = shared;
    }
    return table->index_of(v, n_max);
}

} // namespace concatdioph
