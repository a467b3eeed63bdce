#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "concatdioph/hpreal.hpp"

namespace concatdioph {

// Certified continued-fraction expansion of an irrational given as a
// refinable enclosure. Every stored quotient was produced while both
// enclosure endpoints agreed on the Euclidean step, so the quotient list
// is exact. Immutable once built.
struct CFExpansion {
    Refinable tau;
    std::vector<mpz_class> quotients; // a_0, a_1, ..., a_N
    std::vector<mpz_class> p;         // convergent numerators
    std::vector<mpz_class> q;         // convergent denominators
    int precision_used = 0;           // digits that certified the expansion

    size_t size() const { return quotients.size(); }
};

// Stop condition: expand until max_terms quotients are produced, or until
// the convergent denominator exceeds q_bound (whichever is configured).
struct CFStop {
    static CFStop max_terms(size_t n) { return {n, 0, false}; }
    static CFStop q_exceeds(mpz_class m) { return {0, std::move(m), true}; }

    size_t terms = 0;
    mpz_class q_bound;
    bool by_q = false;
};

// Expands tau's continued fraction. On an ambiguous Euclidean step the
// precision is doubled and the expansion restarts from scratch; throws
// EscalationError if the cap is reached first.
CFExpansion cf_expand(const Refinable& tau, const CFStop& stop,
                      Precision start = Precision(128));

// The i-th convergent (p_i, q_i); throws std::out_of_range past the
// certified range.
std::pair<mpz_class, mpz_class> convergent(const CFExpansion& cf, size_t i);

// Minimal i with q_i > M; throws std::out_of_range when the certified
// expansion is too short (caller should re-expand).
size_t first_q_exceeding(const CFExpansion& cf, const mpz_class& M);

// The workbench's standing irrational: tau = ln(b)/ln(alpha), 2 <= b <= 10.
// Irrational because alpha is a unit of Q(sqrt 5) while b is not.
Refinable tau_log_ratio(int b);

} // namespace concatdioph
