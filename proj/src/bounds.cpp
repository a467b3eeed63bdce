#include "concatdioph/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace concatdioph::bounds {

namespace {

mpz_class big(long mantissa, int exp10) { return mantissa * detail::pow10(exp10); }

HPReal ln_of_int(long v, Precision p) { return hp_ln(HPReal::from_int(v, p)); }

// t^4.5 = t^4 * sqrt(t)
HPReal pow_4_5(int t, Precision p) {
    return HPReal::from_int(t, p).pow_int(4) * hp_sqrt_int(t, p);
}

} // namespace

HPReal matveev_base(int t, int D, Precision prec) {
    if (t < 1 || D < 1) throw std::invalid_argument("matveev_base: t and D must be >= 1");
    HPReal c = HPReal::from_ratio(7, 5, prec); // 1.4
    c = c * HPReal::from_int(30, prec).pow_int(t + 3);
    c = c * pow_4_5(t, prec);
    c = c * HPReal::from_int(static_cast<long>(D) * D, prec);
    c = c * (HPReal::from_int(1, prec) + ln_of_int(D, prec));
    return c;
}

HPReal matveev_log_lower(const LinearFormParams& p, Precision prec) {
    if (p.t < 1 || p.D < 1) throw std::invalid_argument("matveev: t and D must be >= 1");
    if (p.B < 1) throw std::invalid_argument("matveev: B must be >= 1");
    if (static_cast<int>(p.A.size()) != p.t)
        throw std::invalid_argument("matveev: need exactly t height parameters");
    HPReal min_a = HPReal::from_ratio(16, 100, prec);
    HPReal c = matveev_base(p.t, p.D, prec);
    c = c * (HPReal::from_int(1, prec) + hp_ln(HPReal::from_int(p.B, prec)));
    for (const HPReal& a : p.A) {
        if (a.certainly_less(min_a))
            throw std::invalid_argument("matveev: every A_i must be >= 0.16");
        c = c * a;
    }
    return -c;
}

HPReal guzman_luca(int s, const HPReal& T, Precision prec) {
    if (s < 1) throw std::invalid_argument("guzman_luca: s must be >= 1");
    mpz_class threshold; // (4 s^2)^s
    mpz_class base = 4 * static_cast<long>(s) * s;
    mpz_pow_ui(threshold.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(s));
    if (!T.certainly_greater_int(threshold))
        throw HypothesisError("guzman_luca: requires T > (4 s^2)^s = " + threshold.get_str());
    HPReal t = T.to_precision(prec);
    mpz_class two_s;
    mpz_ui_pow_ui(two_s.get_mpz_t(), 2, static_cast<unsigned long>(s));
    return HPReal::from_int(two_s, prec) * t * hp_ln(t).pow_int(s);
}

HPReal lemma_bound(Lemma which, int b, std::optional<std::pair<long, long>> aux, Precision prec) {
    if (b < 2 || b > 10) throw std::invalid_argument("lemma_bound: base must be in 2..10");
    HPReal ln_b = hp_const(ConstName::ln_b, b, prec);
    switch (which) {
    case Lemma::L3_1: {
        if (!aux) throw std::invalid_argument("lemma_bound: L3.1 needs aux (n, m)");
        auto [n, m] = *aux;
        return HPReal::from_int(big(23, 9), prec) * ln_b * ln_of_int(n - m + 2, prec);
    }
    case Lemma::L3_2:
        return HPReal::from_int(big(44, 26), prec) * ln_b.pow_int(4);
    case Lemma::L3_3: {
        if (!aux) throw std::invalid_argument("lemma_bound: L3.3 needs aux (n, m)");
        auto [n, m] = *aux;
        return HPReal::from_int(big(8, 12), prec) * ln_b *
               (HPReal::from_int(1, prec) + ln_of_int(n - m + 3, prec));
    }
    case Lemma::L3_4:
        return HPReal::from_int(big(63, 29), prec) * ln_b.pow_int(4);
    }
    throw std::invalid_argument("lemma_bound: unknown lemma");
}

SearchWindow search_window(int eq, int b, long n_max) {
    if (eq != 1 && eq != 2) throw std::invalid_argument("search_window: eq must be 1 or 2");
    if (b < 2 || b > 10) throw std::invalid_argument("search_window: base must be in 2..10");
    if (n_max < 0) throw std::invalid_argument("search_window: negative n_max");
    SearchWindow w;
    w.eq = eq;
    w.b = b;
    w.n_max = n_max;
    w.m_min = eq == 2 ? 1 : 0; // m = 0 in equation 2 is the trivial family n = k
    w.m_max = n_max + 5;
    w.k_min = 0;
    w.k_max = n_max + 5;
    w.km_sum_below = n_max + 5;
    w.n_window_above_km = 7.0 * std::log(static_cast<double>(b));
    return w;
}

std::vector<CoefficientCheck> coefficient_checks(Precision prec) {
    std::vector<CoefficientCheck> out;
    HPReal one = HPReal::from_int(1, prec);
    HPReal ln_alpha = hp_const(ConstName::ln_alpha, prec);
    HPReal ln5 = hp_const(ConstName::ln5, prec);

    auto add = [&](const char* name, const HPReal& computed, const mpz_class& published_int) {
        HPReal published = HPReal::from_int(published_int, prec);
        bool dominated = !published.certainly_less(computed);
        HPReal rel = (computed - published).abs() / published;
        bool within = rel.certainly_less(HPReal::from_ratio(2, 100, prec));
        out.push_back({name, computed, published, dominated, within});
    };

    // Two-log form (t=2, D=2, A = {2 ln b, ln alpha}, B = n-m+2 >= 3):
    // coefficient of ln(n-m+2)*ln(b) after absorbing 1+ln(x) <= (1+1/ln 3)*ln(x).
    {
        HPReal c = matveev_base(2, 2, prec) * mpz_class(2) * ln_alpha;
        HPReal ln3 = hp_ln(HPReal::from_int(3, prec));
        c = c * ((one + ln3) / ln3);
        add("two-log coefficient", c, big(11, 9));
    }
    // Three-log form with the composed height A_3 <= 2.3e10 ln(b) ln(n-m+2)
    // (t=3, D=2, B = n+2): coefficient of (ln n)^2 (ln b)^2, worst at n=1501.
    {
        HPReal c = matveev_base(3, 2, prec) * mpz_class(2) * ln_alpha *
                   HPReal::from_int(big(23, 9), prec);
        HPReal worst = (one + ln_of_int(1503, prec)) * ln_of_int(1503, prec) /
                       ln_of_int(1501, prec).pow_int(2);
        add("three-log composed coefficient", c * worst, big(81, 21));
    }
    // Three-log form with A = {2 ln b, ln 5, ln alpha} (direct product, no
    // absorption): coefficient of ln(b)*(1+ln(n-m+3)).
    {
        HPReal c = matveev_base(3, 2, prec) * mpz_class(2) * ln5 * ln_alpha;
        add("three-log sqrt5 coefficient", c, big(151, 10));
    }
    // n-bound constant: dividing the 8.1e22 form by ln(alpha), plus the
    // ln(4) offset at the smallest window (n = 1501, b = 2).
    {
        HPReal x_min = ln_of_int(1501, prec).pow_int(2) *
                       hp_const(ConstName::ln_b, 2, prec).pow_int(2);
        HPReal c = (HPReal::from_int(big(81, 21), prec) + ln_of_int(4, prec) / x_min) / ln_alpha;
        add("first n-bound constant", c, big(17, 22));
    }
    // Second n-bound constant: height chain (3(n-k)+8) ln(alpha) + 2 ln 2
    // coarsened to 4.8e13 ln(b) ln(n) (the ln(alpha) < 1 factor dropped),
    // times the three-log base, 1+ln B <= 2 ln n, divided by ln(alpha).
    {
        HPReal c = matveev_base(3, 2, prec) * mpz_class(2) * ln_alpha *
                   HPReal::from_int(big(48, 12), prec) * mpz_class(2) / ln_alpha;
        HPReal x_min = ln_of_int(1501, prec).pow_int(2) *
                       hp_const(ConstName::ln_b, 2, prec).pow_int(2);
        c = c + ln_of_int(6, prec) / (ln_alpha * x_min);
        add("second n-bound constant", c, big(19, 25));
    }
    return out;
}

} // namespace concatdioph::bounds
