#include "doctest.h"

#include "concatdioph/bounds.hpp"
#include "concatdioph/reference_tables.hpp"
#include "oracle.hpp"

using namespace concatdioph;
using namespace concatdioph::bounds;

namespace {

HPReal window(double lo, double hi, Precision p = Precision(64)) {
    // coarse decimal window for order-of-magnitude assertions
    auto conv = [&](double v) {
        // represent v = m * 10^e with m an integer of ~15 digits
        long double x = v;
        int e = 0;
        while (x >= 1e15L) { x /= 10; ++e; }
        while (x != 0 && x < 1e14L) { x *= 10; --e; }
        mpz_class m(static_cast<long>(x));
        HPReal r = HPReal::from_int(m, p);
        if (e >= 0) return r * detail::pow10(e);
        return r / HPReal::from_int(detail::pow10(-e), p);
    };
    HPReal a = conv(lo), b = conv(hi);
    return HPReal::from_scaled(a.lo_num(), b.hi_num(), p);
}

} // namespace

TEST_CASE("matveev formula exact spot value") {
    // t=1, D=1, B=1, A={0.16}: -1.4*30^4*1*1*1*0.16 = -181440 exactly
    LinearFormParams p;
    p.t = 1;
    p.D = 1;
    p.B = 1;
    p.A = {HPReal::from_ratio(16, 100, Precision(64))};
    HPReal v = matveev_log_lower(p);
    CHECK(v.contains_int(-181440));
    CHECK(v.width_num() <= 10); // exact rational inputs keep it tight
}

TEST_CASE("matveev base coefficients match the published roundings") {
    // two-log prefix with A_1/ln b = 2 factored out: ~1.0427e10
    HPReal c2 = matveev_base(2, 2) * mpz_class(2);
    CHECK(oracle::intersects(c2, window(1.0425e10, 1.0429e10)));
    // three-log product with ln 5 and ln alpha: ~1.50209e12, published 1.51e12
    HPReal c3 = matveev_base(3, 2) * mpz_class(2) *
                hp_const(ConstName::ln5, Precision(64)) *
                hp_const(ConstName::ln_alpha, Precision(64));
    CHECK(oracle::intersects(c3, window(1.5019e12, 1.5022e12)));
    CHECK(c3.certainly_less(HPReal::from_int(mpz_class(151) * detail::pow10(10), Precision(64))));
}

TEST_CASE("matveev invariants and monotonicity") {
    LinearFormParams base;
    base.t = 2;
    base.D = 2;
    base.B = 1000;
    Precision p(64);
    base.A = {HPReal::from_int(2, p), HPReal::from_int(1, p)};
    HPReal v0 = matveev_log_lower(base);
    CHECK(v0.is_negative());

    // larger A_i or larger B: lower bound moves further down
    LinearFormParams biggerA = base;
    biggerA.A[0] = HPReal::from_int(3, p);
    CHECK(matveev_log_lower(biggerA).certainly_less(v0));
    LinearFormParams biggerB = base;
    biggerB.B = 100000;
    CHECK(matveev_log_lower(biggerB).certainly_less(v0));

    LinearFormParams bad = base;
    bad.A[0] = HPReal::from_ratio(1, 10, p); // below 0.16
    CHECK_THROWS_AS(matveev_log_lower(bad), std::invalid_argument);
    bad = base;
    bad.A.pop_back();
    CHECK_THROWS_AS(matveev_log_lower(bad), std::invalid_argument);
}

TEST_CASE("guzman-luca resolution step") {
    Precision p(64);
    // s=2, T = 1.7e23 * (ln 2)^2: value ~9.0933e26, below 4.4e27*(ln 2)^4
    HPReal ln2 = hp_const(ConstName::ln_b, 2, p);
    HPReal T = HPReal::from_int(mpz_class(17) * detail::pow10(22), p) * ln2.pow_int(2);
    HPReal z = guzman_luca(2, T);
    CHECK(oracle::intersects(z, window(9.0931e26, 9.0935e26)));
    HPReal closed = HPReal::from_int(mpz_class(44) * detail::pow10(26), p) * ln2.pow_int(4);
    CHECK(z.certainly_less(closed));

    // hypothesis violation: 100 <= (4*4)^2 = 256
    CHECK_THROWS_AS(guzman_luca(2, HPReal::from_int(100, p)), HypothesisError);
    // just above the threshold is accepted
    CHECK(guzman_luca(2, HPReal::from_int(257, p)).is_positive());
}

TEST_CASE("guzman-luca closure holds for every base and both instantiations") {
    Precision p(64);
    for (int b = 2; b <= 10; ++b) {
        HPReal lnb = hp_const(ConstName::ln_b, b, p);
        HPReal t1 = HPReal::from_int(mpz_class(17) * detail::pow10(22), p) * lnb.pow_int(2);
        HPReal c1 = HPReal::from_int(mpz_class(44) * detail::pow10(26), p) * lnb.pow_int(4);
        CHECK(guzman_luca(2, t1).certainly_less(c1));
        HPReal t2 = HPReal::from_int(mpz_class(19) * detail::pow10(25), p) * lnb.pow_int(2);
        HPReal c2 = HPReal::from_int(mpz_class(63) * detail::pow10(29), p) * lnb.pow_int(4);
        CHECK(guzman_luca(2, t2).certainly_less(c2));
    }
}

TEST_CASE("lemma bound expressions") {
    CHECK(oracle::intersects(lemma_bound(Lemma::L3_2, 10), window(1.2367e29, 1.2369e29)));
    CHECK(oracle::intersects(lemma_bound(Lemma::L3_4, 2), window(1.4542e30, 1.4543e30)));
    // L3.1 at n-m+2 = 10^30: 2.3e10 * ln 2 * 30 ln 10
    HPReal v = lemma_bound(Lemma::L3_1, 2, std::pair<long, long>{1000, 2});
    HPReal manual = HPReal::from_int(mpz_class(23) * detail::pow10(9), Precision(64)) *
                    hp_const(ConstName::ln_b, 2, Precision(64)) *
                    hp_ln(HPReal::from_int(1000, Precision(64)));
    CHECK(oracle::intersects(v, manual));
    CHECK_THROWS_AS(lemma_bound(Lemma::L3_1, 2), std::invalid_argument);
    CHECK_THROWS_AS(lemma_bound(Lemma::L3_3, 2), std::invalid_argument);
    CHECK(lemma_bound(Lemma::L3_3, 5, std::pair<long, long>{500, 3}).is_positive());
}

TEST_CASE("search window ranges") {
    SearchWindow w1 = search_window(1, 10, 1500);
    CHECK(w1.m_min == 0);
    CHECK(w1.m_max == 1505);
    CHECK(w1.k_max == 1505);
    CHECK(w1.km_sum_below == 1505);
    CHECK(w1.n_window_above_km > 16.1);
    CHECK(w1.n_window_above_km < 16.2);

    SearchWindow w2 = search_window(2, 2, 1500);
    CHECK(w2.m_min == 1);

    SearchWindow w0 = search_window(1, 2, 0);
    CHECK(w0.m_min == 0);
    CHECK(w0.km_sum_below == 5); // admits (m, k) = (1, 0)
    CHECK_THROWS_AS(search_window(3, 2, 10), std::invalid_argument);
}

TEST_CASE("published coefficient dominance") {
    auto checks = coefficient_checks();
    REQUIRE(checks.size() == 5);
    for (const auto& c : checks) {
        INFO(c.name);
        CHECK(c.dominated);
    }
    // the direct formula roundings also match within two percent
    CHECK(checks[2].within_2pct); // 1.51e12
    CHECK(checks[3].within_2pct); // 1.7e23
}
