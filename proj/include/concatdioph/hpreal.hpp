#pragma once

#include <gmpxx.h>

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "concatdioph/errors.hpp"

namespace concatdioph {

// Decimal digit count for high-precision evaluation.
class Precision {
  public:
    static constexpr int kMin = 32;
    static constexpr int kMax = 10000;

    explicit Precision(int digits);
    int digits() const { return digits_; }

    // Doubles the digit count, clamped to kMax; throws EscalationError if
    // already at the cap.
    Precision doubled() const;

    friend bool operator==(Precision a, Precision b) { return a.digits_ == b.digits_; }
    friend bool operator<(Precision a, Precision b) { return a.digits_ < b.digits_; }

  private:
    int digits_;
};

// Certified enclosure of a real number: the true value lies in
// [lo/10^P, hi/10^P] where P is the decimal precision. Every operation
// rounds outward, so enclosures are sound by construction; typical width
// after a short expression is a few units in the last place (guard g = 4
// digits covers all expressions this project evaluates).
class HPReal {
  public:
    HPReal();

    // Exact integer value (width zero).
    static HPReal from_int(const mpz_class& v, Precision p);
    // Outward-rounded enclosure of num/den, den != 0.
    static HPReal from_ratio(const mpz_class& num, const mpz_class& den, Precision p);
    // Enclosure parsed from a plain decimal string, widened by one ulp on
    // each side unless the string is exact at precision p.
    static HPReal from_decimal(const std::string& s, Precision p);
    // Raw endpoints at scale 10^p; lo_num <= hi_num required.
    static HPReal from_scaled(mpz_class lo_num, mpz_class hi_num, Precision p);

    const mpz_class& lo_num() const { return lo_; }
    const mpz_class& hi_num() const { return hi_; }
    Precision precision() const { return prec_; }
    mpz_class width_num() const { return hi_ - lo_; }

    // Rescale to a different precision; exact when widening, outward when
    // narrowing.
    HPReal to_precision(Precision p) const;

    HPReal operator-() const;
    HPReal abs() const;
    HPReal recip() const; // throws AmbiguityError if the enclosure contains 0

    // Integer power by interval binary exponentiation; negative exponents
    // go through recip().
    HPReal pow_int(long e) const;

    bool is_positive() const { return sgn(lo_) > 0; }
    bool is_negative() const { return sgn(hi_) < 0; }
    bool contains_zero() const { return sgn(lo_) <= 0 && sgn(hi_) >= 0; }
    bool contains_int(const mpz_class& v) const;
    bool contains(const HPReal& other) const; // other's enclosure inside ours

    // True when every point of *this is strictly below every point of rhs.
    bool certainly_less(const HPReal& rhs) const;
    bool certainly_less_int(const mpz_class& v) const;
    bool certainly_greater_int(const mpz_class& v) const;

    // floor over the whole enclosure, if unambiguous.
    std::optional<mpz_class> floor_if_unambiguous() const;

    // Debug serialization "lo..hi@P" (not a stability contract).
    std::string to_string() const;
    // Midpoint rendered with the given number of significant digits.
    std::string midpoint_string(int sig_digits = 20) const;

    friend HPReal operator+(const HPReal& a, const HPReal& b);
    friend HPReal operator-(const HPReal& a, const HPReal& b);
    friend HPReal operator*(const HPReal& a, const HPReal& b);
    friend HPReal operator/(const HPReal& a, const HPReal& b); // AmbiguityError if b spans 0
    friend HPReal operator*(const HPReal& a, const mpz_class& k); // exact
    friend HPReal operator/(const HPReal& a, long k);

  private:
    mpz_class lo_, hi_;
    Precision prec_;
};

// Named constants. ln_b requires 2 <= b <= 10. Results are cached per
// (name, b, precision); the cache is safe for concurrent use.
enum class ConstName { alpha, sqrt5, ln_alpha, ln_b, ln5 };
HPReal hp_const(ConstName name, int b, Precision p);
inline HPReal hp_const(ConstName name, Precision p) { return hp_const(name, 0, p); }

// Enclosure of sqrt(n) for a nonnegative integer n.
HPReal hp_sqrt_int(const mpz_class& n, Precision p);

// Natural logarithm; the input enclosure must be entirely positive.
HPReal hp_ln(const HPReal& x);

// ln(1+x) for |x| < 1/2 (entire enclosure); tighter and much cheaper than
// hp_ln(1+x) when x is small.
HPReal hp_ln1p(const HPReal& x);

// Distance from x to its nearest integer, in [0, 1/2]. Throws
// AmbiguityError when the enclosure straddles a half-integer, i.e. the
// nearest integer is not the same for both endpoints.
HPReal frac_nearest(const HPReal& x);

// A named, re-evaluable expression: the precision-escalation contract.
// eval(p) must return an enclosure of the same real number at any
// requested precision.
class Refinable {
  public:
    Refinable() = default;
    Refinable(std::string desc, std::function<HPReal(Precision)> fn)
        : desc_(std::move(desc)), fn_(std::move(fn)) {}

    const std::string& desc() const { return desc_; }
    HPReal eval(Precision p) const { return fn_(p); }
    bool empty() const { return !fn_; }

  private:
    std::string desc_;
    std::function<HPReal(Precision)> fn_;
};

// Re-evaluates the recipe at a strictly higher precision.
HPReal refine(const Refinable& recipe, Precision current, Precision target);

namespace detail {
// Scale factor 10^p (cached).
const mpz_class& pow10(int p);
mpz_class fdiv(const mpz_class& a, const mpz_class& b);
mpz_class cdiv(const mpz_class& a, const mpz_class& b);
// Decimal rendering of v/10^p.
std::string scaled_decimal(const mpz_class& v, int p);
} // namespace detail

} // namespace concatdioph
