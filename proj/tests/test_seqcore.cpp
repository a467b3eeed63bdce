#include "doctest.h"

#include "concatdioph/seqcore.hpp"

#include <random>

using namespace concatdioph;

TEST_CASE("fibonacci and lucas seed values") {
    CHECK(fib(0) == 0);
    CHECK(fib(1) == 1);
    CHECK(fib(10) == 55);
    CHECK(fib(11) == 89);
    CHECK(lucas(0) == 2);
    CHECK(lucas(1) == 1);
    CHECK(lucas(5) == 11);
    CHECK(lucas(13) == 521);
}

TEST_CASE("fast doubling agrees with the naive recurrence up to 300") {
    Natural f0 = 0, f1 = 1, l0 = 2, l1 = 1;
    for (long n = 0; n <= 300; ++n) {
        CHECK(fib(n) == f0);
        CHECK(lucas(n) == l0);
        Natural f2 = f0 + f1, l2 = l0 + l1;
        f0 = f1;
        f1 = f2;
        l0 = l1;
        l1 = l2;
    }
}

TEST_CASE("large index runs fast and satisfies the doubling identity") {
    Natural f5000 = fib(5000);
    CHECK(f5000 == fib(2500) * (2 * fib(2501) - fib(2500)));
    CHECK(mpz_sizeinbase(f5000.get_mpz_t(), 10) == 1045);
}

TEST_CASE("digit_len") {
    CHECK(digit_len(89, 6) == 3);
    CHECK(digit_len(0, 6) == 1);
    CHECK(digit_len(5, 2) == 3);
    CHECK(digit_len(1, 10) == 1);
    CHECK(digit_len(9, 10) == 1);
    CHECK(digit_len(10, 10) == 2);
    CHECK_THROWS_AS(digit_len(5, 11), std::invalid_argument);
    CHECK_THROWS_AS(digit_len(5, 1), std::invalid_argument);
}

TEST_CASE("digit_len bracket property on dense small range and random values") {
    for (long x = 1; x <= 3000; ++x) {
        for (int b = 2; b <= 10; ++b) {
            int d = digit_len(x, b);
            Natural lo, hi;
            mpz_ui_pow_ui(lo.get_mpz_t(), b, static_cast<unsigned long>(d - 1));
            mpz_ui_pow_ui(hi.get_mpz_t(), b, static_cast<unsigned long>(d));
            CHECK(lo <= x);
            CHECK(x < hi);
        }
    }
    std::mt19937_64 rng(20240901);
    for (int i = 0; i < 20000; ++i) {
        Natural x = rng() % 1000000 + 1;
        // occasionally stretch to very large values
        if (i % 7 == 0) x = x * x * x;
        int b = static_cast<int>(rng() % 9) + 2;
        int d = digit_len(x, b);
        Natural lo, hi;
        mpz_ui_pow_ui(lo.get_mpz_t(), static_cast<unsigned long>(b),
                      static_cast<unsigned long>(d - 1));
        mpz_ui_pow_ui(hi.get_mpz_t(), static_cast<unsigned long>(b),
                      static_cast<unsigned long>(d));
        CHECK(lo <= x);
        CHECK(x < hi);
    }
}

TEST_CASE("lucas membership lookup") {
    CHECK(lucas_index_of(521, 1500) == 13);
    CHECK(lucas_index_of(12, 1500) == std::nullopt); // between 11 and 18
    CHECK(lucas_index_of(2, 1500) == 0);
    CHECK(lucas_index_of(1, 1500) == 1);
    CHECK(lucas_index_of(3, 1500) == 2);
    CHECK(lucas_index_of(0, 1500) == std::nullopt);

    LucasTable table(100);
    // every indexed value resolves to its own index, nothing else resolves
    for (long n = 0; n <= 100; ++n) CHECK(table.index_of(lucas(n), 100) == n);
    CHECK(table.index_of(lucas(50), 49) == std::nullopt); // beyond the cap
    CHECK(table.index_of(lucas(101), 100) == std::nullopt);
    CHECK(table.index_of(lucas(110), 100) == std::nullopt); // inside slack, above cap
}
