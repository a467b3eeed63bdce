#include "concatdioph/contfrac.hpp"

#include <stdexcept>

namespace concatdioph {

namespace {

// One full expansion attempt at fixed precision. Returns false when an
// Euclidean step becomes ambiguous before the stop condition is met.
bool try_expand(const Refinable& tau, const CFStop& stop, Precision prec, CFExpansion& out) {
    out.quotients.clear();
    out.p.clear();
    out.q.clear();

    HPReal x = tau.eval(prec);
    mpz_class pm1 = 1, pm2 = 0, qm1 = 0, qm2 = 1;

    for (size_t i = 0;; ++i) {
        auto a = x.floor_if_unambiguous();
        if (!a) return false;
        if (i > 0 && *a < 1)
            throw std::logic_error("cf_expand: certified quotient below 1 at i>=1");

        mpz_class pi = *a * pm1 + pm2;
        mpz_class qi = *a * qm1 + qm2;
        out.quotients.push_back(*a);
        out.p.push_back(pi);
        out.q.push_back(qi);
        pm2 = pm1;
        pm1 = pi;
        qm2 = qm1;
        qm1 = qi;

        if (stop.by_q) {
            if (qi > stop.q_bound) return true;
        } else if (out.quotients.size() >= stop.terms) {
            return true;
        }

        HPReal frac = x - HPReal::from_int(*a, prec);
        if (!frac.is_positive()) return false; // cannot certify the next step
        x = frac.recip();
    }
}

} // namespace

CFExpansion cf_expand(const Refinable& tau, const CFStop& stop, Precision start) {
    if (!stop.by_q && stop.terms == 0)
        throw std::invalid_argument("cf_expand: empty stop condition");
    CFExpansion cf;
    cf.tau = tau;
    Precision prec = start;
    for (;;) {
        if (try_expand(tau, stop, prec, cf)) {
            cf.precision_used = prec.digits();
            return cf;
        }
        prec = prec.doubled(); // throws EscalationError at the cap
    }
}

std::pair<mpz_class, mpz_class> convergent(const CFExpansion& cf, size_t i) {
    if (i >= cf.size()) throw std::out_of_range("convergent: index beyond certified range");
    return {cf.p[i], cf.q[i]};
}

size_t first_q_exceeding(const CFExpansion& cf, const mpz_class& M) {
    for (size_t i = 0; i < cf.size(); ++i)
        if (cf.q[i] > M) return i;
    throw std::out_of_range("first_q_exceeding: expansion too short");
}

Refinable tau_log_ratio(int b) {
    if (b < 2 || b > 10) throw std::invalid_argument("tau_log_ratio: base must be in 2..10");
    return Refinable("ln(" + std::to_string(b) + ")/ln(alpha)", [b](Precision p) {
        return hp_const(ConstName::ln_b, b, p) / hp_const(ConstName::ln_alpha, p);
    });
}

} // namespace concatdioph
