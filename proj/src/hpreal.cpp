#include "concatdioph/hpreal.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace concatdioph {

namespace detail {

const mpz_class& pow10(int p) {
    static std::map<int, mpz_class> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it == cache.end()) {
        mpz_class v;
        mpz_ui_pow_ui(v.get_mpz_t(), 10, static_cast<unsigned long>(p));
        it = cache.emplace(p, std::move(v)).first;
    }
    return it->second;
}

mpz_class fdiv(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

mpz_class cdiv(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

std::string scaled_decimal(const mpz_class& v, int p) {
    mpz_class a = ::abs(v);
    std::string digits = a.get_str();
    if (static_cast<int>(digits.size()) <= p)
        digits.insert(0, static_cast<size_t>(p) + 1 - digits.size(), '0');
    std::string out;
    if (sgn(v) < 0) out += '-';
    out.append(digits, 0, digits.size() - static_cast<size_t>(p));
    if (p > 0) {
        out += '.';
        out.append(digits, digits.size() - static_cast<size_t>(p), static_cast<size_t>(p));
    }
    return out;
}

} // namespace detail

using detail::cdiv;
using detail::fdiv;
using detail::pow10;

Precision::Precision(int digits) : digits_(digits) {
    if (digits < kMin || digits > kMax)
        throw std::invalid_argument("precision must be in [" + std::to_string(kMin) + ", " +
                                    std::to_string(kMax) + "] digits, got " + std::to_string(digits));
}

Precision Precision::doubled() const {
    if (digits_ >= kMax)
        throw EscalationError("precision cap of " + std::to_string(kMax) + " digits exceeded");
    return Precision(std::min(digits_ * 2, kMax));
}

HPReal::HPReal() : lo_(0), hi_(0), prec_(Precision::kMin) {}

HPReal HPReal::from_int(const mpz_class& v, Precision p) {
    HPReal r;
    r.prec_ = p;
    r.lo_ = v * pow10(p.digits());
    r.hi_ = r.lo_;
    return r;
}

HPReal HPReal::from_ratio(const mpz_class& num, const mpz_class& den, Precision p) {
    if (sgn(den) == 0) throw std::invalid_argument("from_ratio: zero denominator");
    mpz_class n = num, d = den;
    if (sgn(d) < 0) { n = -n; d = -d; }
    HPReal r;
    r.prec_ = p;
    mpz_class scaled = n * pow10(p.digits());
    r.lo_ = fdiv(scaled, d);
    r.hi_ = cdiv(scaled, d);
    return r;
}

HPReal HPReal::from_decimal(const std::string& s, Precision p) {
    std::string t = s;
    bool neg = false;
    size_t i = 0;
    if (i < t.size() && (t[i] == '+' || t[i] == '-')) {
        neg = t[i] == '-';
        ++i;
    }
    std::string digits;
    int frac = 0;
    bool seen_dot = false, exact_tail = true;
    for (; i < t.size(); ++i) {
        char c = t[i];
        if (c == '.') {
            if (seen_dot) throw std::invalid_argument("bad decimal: " + s);
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            if (seen_dot) ++frac;
            digits += c;
        } else {
            throw std::invalid_argument("bad decimal: " + s);
        }
    }
    if (digits.empty()) throw std::invalid_argument("bad decimal: " + s);
    mpz_class mant(digits, 10);
    if (neg) mant = -mant;
    HPReal r;
    r.prec_ = p;
    if (frac <= p.digits()) {
        mpz_class v = mant * pow10(p.digits() - frac);
        r.lo_ = v;
        r.hi_ = v;
    } else {
        const mpz_class& d = pow10(frac - p.digits());
        r.lo_ = fdiv(mant, d);
        r.hi_ = cdiv(mant, d);
        exact_tail = false;
    }
    // A truncated literal stands for some value within one ulp of itself.
    if (!exact_tail || frac > p.digits()) {
        r.lo_ -= 1;
        r.hi_ += 1;
    }
    return r;
}

HPReal HPReal::from_scaled(mpz_class lo_num, mpz_class hi_num, Precision p) {
    if (lo_num > hi_num) throw std::invalid_argument("from_scaled: lo > hi");
    HPReal r;
    r.prec_ = p;
    r.lo_ = std::move(lo_num);
    r.hi_ = std::move(hi_num);
    return r;
}

HPReal HPReal::to_precision(Precision p) const {
    if (p == prec_) return *this;
    HPReal r;
    r.prec_ = p;
    if (prec_ < p) {
        const mpz_class& f = pow10(p.digits() - prec_.digits());
        r.lo_ = lo_ * f;
        r.hi_ = hi_ * f;
    } else {
        const mpz_class& f = pow10(prec_.digits() - p.digits());
        r.lo_ = fdiv(lo_, f);
        r.hi_ = cdiv(hi_, f);
    }
    return r;
}

HPReal HPReal::operator-() const {
    HPReal r;
    r.prec_ = prec_;
    r.lo_ = -hi_;
    r.hi_ = -lo_;
    return r;
}

HPReal HPReal::abs() const {
    HPReal r;
    r.prec_ = prec_;
    if (sgn(lo_) >= 0) return *this;
    if (sgn(hi_) <= 0) return -*this;
    r.lo_ = 0;
    r.hi_ = std::max(mpz_class(-lo_), hi_);
    return r;
}

HPReal HPReal::recip() const {
    if (contains_zero()) throw AmbiguityError("reciprocal of enclosure containing zero");
    const mpz_class sq = pow10(2 * prec_.digits());
    HPReal r;
    r.prec_ = prec_;
    r.lo_ = fdiv(sq, hi_);
    r.hi_ = cdiv(sq, lo_);
    return r;
}

HPReal HPReal::pow_int(long e) const {
    if (e < 0) return pow_int(-e).recip();
    HPReal acc = from_int(1, prec_);
    HPReal base = *this;
    unsigned long ue = static_cast<unsigned long>(e);
    while (ue > 0) {
        if (ue & 1UL) acc = acc * base;
        ue >>= 1UL;
        if (ue > 0) base = base * base;
    }
    return acc;
}

bool HPReal::contains_int(const mpz_class& v) const {
    mpz_class s = v * pow10(prec_.digits());
    return lo_ <= s && s <= hi_;
}

bool HPReal::contains(const HPReal& other) const {
    HPReal o = other.to_precision(prec_);
    // other was rounded outward to our scale, so compare with one-ulp grace
    return lo_ <= o.lo_ + 1 && o.hi_ <= hi_ + 1 && lo_ - 1 <= o.lo_ && o.hi_ - 1 <= hi_;
}

bool HPReal::certainly_less(const HPReal& rhs) const {
    int p = std::max(prec_.digits(), rhs.prec_.digits());
    HPReal a = to_precision(Precision(p));
    HPReal b = rhs.to_precision(Precision(p));
    return a.hi_ < b.lo_;
}

bool HPReal::certainly_less_int(const mpz_class& v) const {
    return hi_ < v * pow10(prec_.digits());
}

bool HPReal::certainly_greater_int(const mpz_class& v) const {
    return lo_ > v * pow10(prec_.digits());
}

std::optional<mpz_class> HPReal::floor_if_unambiguous() const {
    const mpz_class& s = pow10(prec_.digits());
    mpz_class flo = fdiv(lo_, s);
    mpz_class fhi = fdiv(hi_, s);
    if (flo != fhi) return std::nullopt;
    return flo;
}

std::string HPReal::to_string() const {
    return detail::scaled_decimal(lo_, prec_.digits()) + ".." +
           detail::scaled_decimal(hi_, prec_.digits()) + "@" + std::to_string(prec_.digits());
}

std::string HPReal::midpoint_string(int sig_digits) const {
    mpz_class mid = fdiv(lo_ + hi_, 2);
    std::string full = detail::scaled_decimal(mid, prec_.digits());
    size_t dot = full.find('.');
    int seen = 0;
    size_t end = full.size();
    for (size_t i = 0; i < full.size(); ++i) {
        char c = full[i];
        if (c < '0' || c > '9') continue;
        if (seen > 0 || c != '0') ++seen;
        if (seen >= sig_digits) {
            // never truncate the integer part
            end = (dot != std::string::npos && i < dot) ? dot : i + 1;
            break;
        }
    }
    std::string out = full.substr(0, end);
    if (!out.empty() && out.back() == '.') out.pop_back();
    return out;
}

HPReal operator+(const HPReal& a, const HPReal& b) {
    Precision p(std::max(a.prec_.digits(), b.prec_.digits()));
    HPReal x = a.to_precision(p), y = b.to_precision(p);
    HPReal r;
    r.prec_ = p;
    r.lo_ = x.lo_ + y.lo_;
    r.hi_ = x.hi_ + y.hi_;
    return r;
}

HPReal operator-(const HPReal& a, const HPReal& b) { return a + (-b); }

HPReal operator*(const HPReal& a, const HPReal& b) {
    Precision p(std::max(a.prec_.digits(), b.prec_.digits()));
    HPReal x = a.to_precision(p), y = b.to_precision(p);
    mpz_class p1 = x.lo_ * y.lo_, p2 = x.lo_ * y.hi_, p3 = x.hi_ * y.lo_, p4 = x.hi_ * y.hi_;
    const mpz_class& s = pow10(p.digits());
    mpz_class lo = std::min(std::min(p1, p2), std::min(p3, p4));
    mpz_class hi = std::max(std::max(p1, p2), std::max(p3, p4));
    HPReal r;
    r.prec_ = p;
    r.lo_ = fdiv(lo, s);
    r.hi_ = cdiv(hi, s);
    return r;
}

HPReal operator/(const HPReal& a, const HPReal& b) {
    if (b.contains_zero()) throw AmbiguityError("division by enclosure containing zero");
    Precision p(std::max(a.prec_.digits(), b.prec_.digits()));
    HPReal x = a.to_precision(p), y = b.to_precision(p);
    const mpz_class& s = pow10(p.digits());
    // quotient endpoints over the four corner combinations, rounded outward
    mpz_class lo, hi;
    bool first = true;
    for (const mpz_class* n : {&x.lo_, &x.hi_}) {
        for (const mpz_class* d : {&y.lo_, &y.hi_}) {
            mpz_class num = *n * s;
            mpz_class qlo = fdiv(num, *d);
            mpz_class qhi = cdiv(num, *d);
            if (first) {
                lo = qlo;
                hi = qhi;
                first = false;
            } else {
                lo = std::min(lo, qlo);
                hi = std::max(hi, qhi);
            }
        }
    }
    HPReal r;
    r.prec_ = p;
    r.lo_ = lo;
    r.hi_ = hi;
    return r;
}

HPReal operator*(const HPReal& a, const mpz_class& k) {
    HPReal r;
    r.prec_ = a.prec_;
    if (sgn(k) >= 0) {
        r.lo_ = a.lo_ * k;
        r.hi_ = a.hi_ * k;
    } else {
        r.lo_ = a.hi_ * k;
        r.hi_ = a.lo_ * k;
    }
    return r;
}

HPReal operator/(const HPReal& a, long k) {
    if (k == 0) throw std::invalid_argument("division by zero");
    HPReal r;
    r.prec_ = a.prec_;
    mpz_class d(k);
    if (k > 0) {
        r.lo_ = fdiv(a.lo_, d);
        r.hi_ = cdiv(a.hi_, d);
    } else {
        r.lo_ = fdiv(a.hi_, d);
        r.hi_ = cdiv(a.lo_, d);
    }
    return r;
}

HPReal hp_sqrt_int(const mpz_class& n, Precision p) {
    if (sgn(n) < 0) throw std::invalid_argument("hp_sqrt_int: negative argument");
    mpz_class scaled = n * pow10(2 * p.digits());
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    HPReal r = HPReal::from_scaled(root, root * root == scaled ? root : root + 1, p);
    return r;
}

namespace {

// atanh series on a scaled-integer interval z with |z| <= 1/3:
// sum z^(2j+1)/(2j+1), truncation absorbed into the enclosure.
// All quantities at scale 10^w.
struct ScaledInterval {
    mpz_class lo, hi;
};

ScaledInterval si_mul(const ScaledInterval& a, const ScaledInterval& b, const mpz_class& s) {
    mpz_class p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {fdiv(std::min(std::min(p1, p2), std::min(p3, p4)), s),
            cdiv(std::max(std::max(p1, p2), std::max(p3, p4)), s)};
}

ScaledInterval atanh_series(const ScaledInterval& z, int w) {
    const mpz_class& s = pow10(w);
    ScaledInterval z2 = si_mul(z, z, s);
    if (sgn(z2.lo) < 0) z2.lo = 0; // square is nonnegative
    ScaledInterval pw = z;
    ScaledInterval sum = z;
    mpz_class mag = std::max(mpz_class(-pw.lo), pw.hi);
    unsigned long j = 1;
    while (mag > 8) {
        pw = si_mul(pw, z2, s);
        mpz_class d(2 * j + 1);
        sum.lo += fdiv(pw.lo, d);
        sum.hi += cdiv(pw.hi, d);
        mag = std::max(mpz_class(-pw.lo), pw.hi);
        ++j;
        if (j > 2000000UL) throw EscalationError("atanh series failed to converge");
    }
    // Remaining tail: |z|^2 <= 1/9 + rounding, so the geometric tail past the
    // last added term is below |pw|/8 in magnitude; pad by one ulp.
    mpz_class tail = cdiv(mag, mpz_class(8)) + 1;
    sum.lo -= tail;
    sum.hi += tail;
    return sum;
}

// ln of the exact positive rational num/den, as a scaled interval at
// precision p. Reduces the argument to (1, 2] by an exact power of two,
// then ln(y) = 2*atanh((y-1)/(y+1)).
HPReal point_ln(const mpz_class& num, const mpz_class& den, Precision p);

HPReal ln2_const(Precision p) {
    static std::map<int, HPReal> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(p.digits());
        if (it != cache.end()) return it->second;
    }
    HPReal v = point_ln(2, 1, p);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(p.digits(), v);
    return v;
}

HPReal point_ln(const mpz_class& num, const mpz_class& den, Precision p) {
    if (sgn(num) <= 0 || sgn(den) <= 0) throw std::invalid_argument("point_ln: nonpositive argument");
    if (num == den) return HPReal::from_int(0, p);
    const int w = std::min(p.digits() + 10, Precision::kMax);
    Precision wp(std::max(w, Precision::kMin));

    // find k with num/(den*2^k) in (1, 2]
    long k = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
    auto shifted = [&](long kk, mpz_class& a, mpz_class& b) {
        a = num;
        b = den;
        if (kk >= 0)
            mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(kk));
        else
            mpz_mul_2exp(a.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(-kk));
    };
    mpz_class a, b;
    shifted(k, a, b);
    while (a > 2 * b) { ++k; shifted(k, a, b); }
    while (a <= b) { --k; shifted(k, a, b); }

    // z = (a-b)/(a+b) in (0, 1/3]
    mpz_class zn = a - b, zd = a + b;
    const mpz_class& s = pow10(wp.digits());
    mpz_class zs = zn * s;
    ScaledInterval z{fdiv(zs, zd), cdiv(zs, zd)};
    ScaledInterval at = atanh_series(z, wp.digits());

    HPReal ln_y = HPReal::from_scaled(2 * at.lo, 2 * at.hi, wp);
    HPReal result = ln_y;
    if (k != 0) result = ln_y + ln2_const(wp) * mpz_class(k);
    return result.to_precision(p);
}

} // namespace

HPReal hp_ln(const HPReal& x) {
    if (!x.is_positive()) throw std::invalid_argument("hp_ln: enclosure must be entirely positive");
    Precision p = x.precision();
    const mpz_class& s = pow10(p.digits());
    HPReal lo_ln = point_ln(x.lo_num(), s, p);
    HPReal hi_ln = x.lo_num() == x.hi_num() ? lo_ln : point_ln(x.hi_num(), s, p);
    return HPReal::from_scaled(lo_ln.lo_num(), hi_ln.hi_num(), p);
}

HPReal hp_ln1p(const HPReal& x) {
    Precision p = x.precision();
    const mpz_class& s = pow10(p.digits());
    if (!(2 * x.abs().hi_num() < s))
        throw std::invalid_argument("hp_ln1p: requires |x| < 1/2");
    // ln(1+x) = 2*atanh(x/(2+x)); |x/(2+x)| < 1/3 for |x| < 1/2
    HPReal z = x / (HPReal::from_int(2, p) + x);
    ScaledInterval zi{z.lo_num(), z.hi_num()};
    ScaledInterval at = atanh_series(zi, p.digits());
    return HPReal::from_scaled(2 * at.lo, 2 * at.hi, p);
}

HPReal frac_nearest(const HPReal& x) {
    Precision p = x.precision();
    const mpz_class& s = pow10(p.digits());
    mpz_class n_lo = fdiv(2 * x.lo_num() + s, 2 * s);
    mpz_class n_hi = fdiv(2 * x.hi_num() + s, 2 * s);
    if (n_lo != n_hi)
        throw AmbiguityError("frac_nearest: enclosure straddles a half-integer at " +
                             std::to_string(p.digits()) + " digits");
    mpz_class ns = n_lo * s;
    mpz_class dl = ::abs(mpz_class(x.lo_num() - ns));
    mpz_class dh = ::abs(mpz_class(x.hi_num() - ns));
    mpz_class d_hi = std::max(dl, dh);
    mpz_class d_lo;
    if (x.lo_num() <= ns && ns <= x.hi_num())
        d_lo = 0;
    else
        d_lo = std::min(dl, dh);
    return HPReal::from_scaled(d_lo, d_hi, p);
}

HPReal hp_const(ConstName name, int b, Precision p) {
    struct Key {
        int name, b, prec;
        bool operator<(const Key& o) const {
            return std::tie(name, b, prec) < std::tie(o.name, o.b, o.prec);
        }
    };
    static std::map<Key, HPReal> cache;
    static std::mutex mu;
    Key key{static_cast<int>(name), name == ConstName::ln_b ? b : 0, p.digits()};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    HPReal v;
    switch (name) {
    case ConstName::sqrt5:
        v = hp_sqrt_int(5, p);
        break;
    case ConstName::alpha: {
        Precision wp(std::min(p.digits() + 4, Precision::kMax));
        v = ((HPReal::from_int(1, wp) + hp_sqrt_int(5, wp)) / 2L).to_precision(p);
        break;
    }
    case ConstName::ln_alpha: {
        Precision wp(std::min(p.digits() + 4, Precision::kMax));
        v = hp_ln(hp_const(ConstName::alpha, wp)).to_precision(p);
        break;
    }
    case ConstName::ln5:
        v = point_ln(5, 1, p);
        break;
    case ConstName::ln_b:
        if (b < 2 || b > 10) throw std::invalid_argument("ln_b: base must be in 2..10");
        v = point_ln(b, 1, p);
        break;
    default:
        throw std::invalid_argument("unsupported constant");
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, v);
    return v;
}

HPReal refine(const Refinable& recipe, Precision current, Precision target) {
    if (!(current < target))
        throw std::invalid_argument("refine: target precision must exceed current");
    return recipe.eval(target);
}

} // namespace concatdioph
