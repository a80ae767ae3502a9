#pragma once

// Outward-rounded real intervals on top of MPFR.
//
// Every operation returns an enclosure of the exact image of all points of its
// arguments. Lower endpoints are rounded toward -inf and upper endpoints toward
// +inf, so any inequality certified on an IntervalReal holds for the exact
// quantity it encloses.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace twolog {

/// Working precision in bits. Never below 64.
class Precision {
public:
    constexpr explicit Precision(unsigned bits = 128) : bits_(bits)
    {
        if (bits < 64) {
            throw std::invalid_argument("precision must be at least 64 bits");
        }
    }

    constexpr unsigned bits() const noexcept { return bits_; }
    constexpr Precision doubled() const { return Precision(bits_ * 2); }

    friend constexpr auto operator<=>(Precision, Precision) = default;

private:
    unsigned bits_;
};

inline constexpr Precision kDefaultPrecision{128};
inline constexpr Precision kMaxEscalation{1024};

/// Raised when an argument leaves the domain of an operation (log of a
/// nonpositive interval, division by an interval containing zero, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a decision cannot be made even at the highest precision tried.
class IndeterminateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void ensure_exponent_range()
{
    // MPFR keeps the exponent range per thread in thread-safe builds.
    thread_local bool done = false;
    if (!done) {
        mpfr_set_emin(mpfr_get_emin_min());
        mpfr_set_emax(mpfr_get_emax_max());
        done = true;
    }
}

class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t bits)
    {
        ensure_exponent_range();
        mpfr_init2(v_, bits);
        mpfr_set_zero(v_, 1);
    }
    Mpfr(const Mpfr& other)
    {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    Mpfr(Mpfr&& other) noexcept
    {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, other.v_);
    }
    Mpfr& operator=(const Mpfr& other)
    {
        if (this != &other) {
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }
    Mpfr& operator=(Mpfr&& other) noexcept
    {
        mpfr_swap(v_, other.v_);
        return *this;
    }
    ~Mpfr() { mpfr_clear(v_); }

    mpfr_ptr get() noexcept { return v_; }
    mpfr_srcptr get() const noexcept { return v_; }
    mpfr_prec_t bits() const noexcept { return mpfr_get_prec(v_); }

private:
    mpfr_t v_;
};

inline std::string format_endpoint(mpfr_srcptr x, int digits, mpfr_rnd_t rnd)
{
    if (mpfr_inf_p(x)) {
        return mpfr_sgn(x) > 0 ? "inf" : "-inf";
    }
    if (mpfr_zero_p(x)) {
        return "0";
    }
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*R*e", std::max(digits - 1, 0), rnd, x);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

}  // namespace detail

class IntervalReal {
public:
    /// The degenerate interval [0, 0].
    IntervalReal() : IntervalReal(Precision(64)) {}

    template <class Int>
        requires std::is_integral_v<Int>
    IntervalReal(Int v)  // NOLINT(google-explicit-constructor): integers are exact
        : IntervalReal(Precision(64))
    {
        if constexpr (std::is_signed_v<Int>) {
            mpfr_set_si(lo_.get(), static_cast<long>(v), MPFR_RNDD);
            mpfr_set_si(hi_.get(), static_cast<long>(v), MPFR_RNDU);
        } else {
            mpfr_set_ui(lo_.get(), static_cast<unsigned long>(v), MPFR_RNDD);
            mpfr_set_ui(hi_.get(), static_cast<unsigned long>(v), MPFR_RNDU);
        }
    }

    explicit IntervalReal(Precision p) : lo_(p.bits()), hi_(p.bits()) {}

    static IntervalReal from_integer(const mpz_class& v, Precision p)
    {
        IntervalReal r(p);
        mpfr_set_z(r.lo_.get(), v.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_.get(), v.get_mpz_t(), MPFR_RNDU);
        return r;
    }

    static IntervalReal from_int(long v, Precision p)
    {
        IntervalReal r(p);
        mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
        mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
        return r;
    }

    static IntervalReal from_rational(const mpq_class& v, Precision p)
    {
        IntervalReal r(p);
        mpfr_set_q(r.lo_.get(), v.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_.get(), v.get_mpq_t(), MPFR_RNDU);
        return r;
    }

    /// Exact decimal literal such as "18.1", "-0.0003" or "2.5e-3".
    static IntervalReal from_decimal(std::string_view text, Precision p);

    /// [lo, hi] from two MPFR values; lo is rounded down, hi rounded up.
    static IntervalReal from_bounds(mpfr_srcptr lo, mpfr_srcptr hi, Precision p)
    {
        IntervalReal r(p);
        mpfr_set(r.lo_.get(), lo, MPFR_RNDD);
        mpfr_set(r.hi_.get(), hi, MPFR_RNDU);
        if (mpfr_cmp(r.lo_.get(), r.hi_.get()) > 0) {
            throw std::invalid_argument("interval bounds out of order");
        }
        return r;
    }

    static IntervalReal entire(Precision p)
    {
        IntervalReal r(p);
        mpfr_set_inf(r.lo_.get(), -1);
        mpfr_set_inf(r.hi_.get(), 1);
        return r;
    }

    static IntervalReal hull(const IntervalReal& a, const IntervalReal& b)
    {
        IntervalReal r(Precision(std::max(a.bits(), b.bits())));
        mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
        mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
        return r;
    }

    mpfr_srcptr lo() const noexcept { return lo_.get(); }
    mpfr_srcptr hi() const noexcept { return hi_.get(); }
    unsigned bits() const noexcept { return static_cast<unsigned>(lo_.bits()); }
    Precision precision() const { return Precision(bits()); }

    double lo_double() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
    double hi_double() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }
    double mid_double() const
    {
        if (mpfr_inf_p(lo_.get()) || mpfr_inf_p(hi_.get())) {
            return lo_double() / 2 + hi_double() / 2;
        }
        detail::Mpfr m(bits() + 2);
        mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
        mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
        return mpfr_get_d(m.get(), MPFR_RNDN);
    }

    /// Upper bound on hi - lo.
    IntervalReal width() const
    {
        IntervalReal r(precision());
        mpfr_sub(r.hi_.get(), hi_.get(), lo_.get(), MPFR_RNDU);
        mpfr_set(r.lo_.get(), r.hi_.get(), MPFR_RNDD);
        return r;
    }
    double width_double() const
    {
        detail::Mpfr w(bits());
        mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
        return mpfr_get_d(w.get(), MPFR_RNDU);
    }

    bool is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }
    bool contains_zero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }
    bool contains(const mpq_class& q) const
    {
        return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
    }
    bool contains(mpfr_srcptr x) const
    {
        return mpfr_cmp(lo_.get(), x) <= 0 && mpfr_cmp(hi_.get(), x) >= 0;
    }
    bool contains(const IntervalReal& o) const
    {
        return mpfr_cmp(lo_.get(), o.lo_.get()) <= 0 && mpfr_cmp(hi_.get(), o.hi_.get()) >= 0;
    }
    bool contains_double(double x) const
    {
        return mpfr_cmp_d(lo_.get(), x) <= 0 && mpfr_cmp_d(hi_.get(), x) >= 0;
    }

    bool certainly_positive() const { return mpfr_sgn(lo_.get()) > 0; }
    bool certainly_negative() const { return mpfr_sgn(hi_.get()) < 0; }
    bool certainly_nonnegative() const { return mpfr_sgn(lo_.get()) >= 0; }

    /// Same interval re-rounded outward to precision p.
    IntervalReal with_precision(Precision p) const
    {
        IntervalReal r(p);
        mpfr_set(r.lo_.get(), lo_.get(), MPFR_RNDD);
        mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
        return r;
    }

    std::string lo_string(int digits = 15) const { return detail::format_endpoint(lo_.get(), digits, MPFR_RNDD); }
    std::string hi_string(int digits = 15) const { return detail::format_endpoint(hi_.get(), digits, MPFR_RNDU); }
    std::string to_string(int digits = 15) const { return "[" + lo_string(digits) + ", " + hi_string(digits) + "]"; }

    friend bool identical(const IntervalReal& a, const IntervalReal& b)
    {
        return mpfr_equal_p(a.lo_.get(), b.lo_.get()) && mpfr_equal_p(a.hi_.get(), b.hi_.get())
               && a.bits() == b.bits();
    }

    // Raw endpoint access for the arithmetic below.
    mpfr_ptr lo_mut() noexcept { return lo_.get(); }
    mpfr_ptr hi_mut() noexcept { return hi_.get(); }

    /// Throws DomainError if an endpoint became NaN or the order was lost.
    void validate(const char* what) const
    {
        if (mpfr_nan_p(lo_.get()) || mpfr_nan_p(hi_.get()) || mpfr_cmp(lo_.get(), hi_.get()) > 0) {
            throw DomainError(std::string("undefined interval result in ") + what);
        }
    }

private:
    detail::Mpfr lo_;
    detail::Mpfr hi_;
};

inline unsigned result_bits(const IntervalReal& a, const IntervalReal& b)
{
    return std::max(a.bits(), b.bits());
}

/// Exact rational value of a decimal literal such as "18.1" or "2.5e-3".
inline mpq_class parse_decimal(std::string_view text)
{
    std::string s(text);
    std::size_t pos = 0;
    bool negative = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        negative = s[pos] == '-';
        ++pos;
    }
    std::string digits;
    long scale = 0;
    bool seen_point = false;
    bool any_digit = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            any_digit = true;
            if (seen_point) {
                --scale;
            }
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        ++pos;
        std::size_t used = 0;
        long ex = 0;
        try {
            ex = std::stol(s.substr(pos), &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed decimal literal: " + s);
        }
        pos += used;
        scale += ex;
    }
    if (!any_digit || pos != s.size()) {
        throw std::invalid_argument("malformed decimal literal: " + s);
    }
    mpz_class num(digits, 10);
    if (negative) {
        num = -num;
    }
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    mpq_class q = scale < 0 ? mpq_class(num, ten_pow) : mpq_class(num * ten_pow);
    q.canonicalize();
    return q;
}

inline IntervalReal IntervalReal::from_decimal(std::string_view text, Precision p)
{
    return from_rational(parse_decimal(text), p);
}

// ---------------------------------------------------------------------------
// Arithmetic

inline IntervalReal operator-(const IntervalReal& a)
{
    IntervalReal r(a.precision());
    mpfr_neg(r.lo_mut(), a.hi(), MPFR_RNDD);
    mpfr_neg(r.hi_mut(), a.lo(), MPFR_RNDU);
    return r;
}

inline IntervalReal operator+(const IntervalReal& a, const IntervalReal& b)
{
    IntervalReal r(Precision(result_bits(a, b)));
    mpfr_add(r.lo_mut(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_add(r.hi_mut(), a.hi(), b.hi(), MPFR_RNDU);
    r.validate("addition");
    return r;
}

inline IntervalReal operator-(const IntervalReal& a, const IntervalReal& b)
{
    IntervalReal r(Precision(result_bits(a, b)));
    mpfr_sub(r.lo_mut(), a.lo(), b.hi(), MPFR_RNDD);
    mpfr_sub(r.hi_mut(), a.hi(), b.lo(), MPFR_RNDU);
    r.validate("subtraction");
    return r;
}

namespace detail {

// Product of two endpoints with 0 * inf read as 0, which is the correct
// interval convention.
inline void endpoint_mul(mpfr_ptr out, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd)
{
    if (mpfr_zero_p(x) || mpfr_zero_p(y)) {
        mpfr_set_zero(out, 1);
        return;
    }
    mpfr_mul(out, x, y, rnd);
}

}  // namespace detail

inline IntervalReal operator*(const IntervalReal& a, const IntervalReal& b)
{
    const unsigned bits = result_bits(a, b);
    IntervalReal r{Precision(bits)};
    detail::Mpfr t(bits);
    mpfr_srcptr xs[2] = {a.lo(), a.hi()};
    mpfr_srcptr ys[2] = {b.lo(), b.hi()};
    bool first = true;
    for (auto x : xs) {
        for (auto y : ys) {
            detail::endpoint_mul(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), r.lo()) < 0) {
                mpfr_set(r.lo_mut(), t.get(), MPFR_RNDD);
            }
            detail::endpoint_mul(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), r.hi()) > 0) {
                mpfr_set(r.hi_mut(), t.get(), MPFR_RNDU);
            }
            first = false;
        }
    }
    r.validate("multiplication");
    return r;
}

inline IntervalReal operator/(const IntervalReal& a, const IntervalReal& b)
{
    if (b.contains_zero()) {
        throw DomainError("division by an interval containing zero");
    }
    const unsigned bits = result_bits(a, b);
    IntervalReal r{Precision(bits)};
    detail::Mpfr t(bits);
    mpfr_srcptr xs[2] = {a.lo(), a.hi()};
    mpfr_srcptr ys[2] = {b.lo(), b.hi()};
    bool first = true;
    for (auto x : xs) {
        for (auto y : ys) {
            mpfr_div(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), r.lo()) < 0) {
                mpfr_set(r.lo_mut(), t.get(), MPFR_RNDD);
            }
            mpfr_div(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), r.hi()) > 0) {
                mpfr_set(r.hi_mut(), t.get(), MPFR_RNDU);
            }
            first = false;
        }
    }
    r.validate("division");
    return r;
}

inline IntervalReal& operator+=(IntervalReal& a, const IntervalReal& b) { return a = a + b; }
inline IntervalReal& operator-=(IntervalReal& a, const IntervalReal& b) { return a = a - b; }
inline IntervalReal& operator*=(IntervalReal& a, const IntervalReal& b) { return a = a * b; }
inline IntervalReal& operator/=(IntervalReal& a, const IntervalReal& b) { return a = a / b; }

// ---------------------------------------------------------------------------
// Elementary functions

namespace detail {

template <class F>
IntervalReal monotone_increasing(const IntervalReal& x, F&& f)
{
    IntervalReal r(x.precision());
    f(r.lo_mut(), x.lo(), MPFR_RNDD);
    f(r.hi_mut(), x.hi(), MPFR_RNDU);
    return r;
}

}  // namespace detail

inline IntervalReal abs(const IntervalReal& x)
{
    if (x.certainly_nonnegative()) {
        return x;
    }
    if (mpfr_sgn(x.hi()) <= 0) {
        return -x;
    }
    IntervalReal r(x.precision());
    mpfr_set_zero(r.lo_mut(), 1);
    if (mpfr_cmpabs(x.lo(), x.hi()) > 0) {
        mpfr_neg(r.hi_mut(), x.lo(), MPFR_RNDU);
    } else {
        mpfr_set(r.hi_mut(), x.hi(), MPFR_RNDU);
    }
    return r;
}

inline IntervalReal sqr(const IntervalReal& x)
{
    IntervalReal a = abs(x);
    IntervalReal r(x.precision());
    mpfr_sqr(r.lo_mut(), a.lo(), MPFR_RNDD);
    mpfr_sqr(r.hi_mut(), a.hi(), MPFR_RNDU);
    return r;
}

inline IntervalReal pow(const IntervalReal& x, unsigned long n)
{
    if (n == 0) {
        return IntervalReal::from_integer(1, x.precision());
    }
    if (n % 2 == 0) {
        IntervalReal a = abs(x);
        IntervalReal r(x.precision());
        mpfr_pow_ui(r.lo_mut(), a.lo(), n, MPFR_RNDD);
        mpfr_pow_ui(r.hi_mut(), a.hi(), n, MPFR_RNDU);
        return r;
    }
    return detail::monotone_increasing(x, [n](mpfr_ptr o, mpfr_srcptr v, mpfr_rnd_t rnd) { mpfr_pow_ui(o, v, n, rnd); });
}

inline IntervalReal sqrt(const IntervalReal& x)
{
    if (mpfr_sgn(x.lo()) < 0) {
        throw DomainError("sqrt of an interval with negative points");
    }
    return detail::monotone_increasing(x, [](mpfr_ptr o, mpfr_srcptr v, mpfr_rnd_t rnd) { mpfr_sqrt(o, v, rnd); });
}

inline IntervalReal log(const IntervalReal& x)
{
    if (mpfr_sgn(x.lo()) <= 0) {
        throw DomainError("log of an interval with nonpositive points");
    }
    return detail::monotone_increasing(x, [](mpfr_ptr o, mpfr_srcptr v, mpfr_rnd_t rnd) { mpfr_log(o, v, rnd); });
}

/// log(1 + x), accurate for tiny x.
inline IntervalReal log1p(const IntervalReal& x)
{
    if (mpfr_cmp_si(x.lo(), -1) <= 0) {
        throw DomainError("log1p of an interval reaching -1");
    }
    return detail::monotone_increasing(x, [](mpfr_ptr o, mpfr_srcptr v, mpfr_rnd_t rnd) { mpfr_log1p(o, v, rnd); });
}

inline IntervalReal exp(const IntervalReal& x)
{
    return detail::monotone_increasing(x, [](mpfr_ptr o, mpfr_srcptr v, mpfr_rnd_t rnd) { mpfr_exp(o, v, rnd); });
}

/// x^y for x > 0, via exp(y log x).
inline IntervalReal pow(const IntervalReal& x, const IntervalReal& y)
{
    return exp(y * log(x));
}

inline IntervalReal min(const IntervalReal& a, const IntervalReal& b)
{
    IntervalReal r(Precision(result_bits(a, b)));
    mpfr_min(r.lo_mut(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_min(r.hi_mut(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

inline IntervalReal max(const IntervalReal& a, const IntervalReal& b)
{
    IntervalReal r(Precision(result_bits(a, b)));
    mpfr_max(r.lo_mut(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_max(r.hi_mut(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

/// Intersection; empty intersections are a logic error.
inline IntervalReal intersect(const IntervalReal& a, const IntervalReal& b)
{
    IntervalReal r(Precision(result_bits(a, b)));
    mpfr_max(r.lo_mut(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_min(r.hi_mut(), a.hi(), b.hi(), MPFR_RNDU);
    if (mpfr_cmp(r.lo(), r.hi()) > 0) {
        throw std::logic_error("intersection of disjoint intervals");
    }
    return r;
}

inline IntervalReal pi(Precision p)
{
    IntervalReal r(p);
    mpfr_const_pi(r.lo_mut(), MPFR_RNDD);
    mpfr_const_pi(r.hi_mut(), MPFR_RNDU);
    return r;
}

inline IntervalReal euler_e(Precision p)
{
    IntervalReal r(p);
    mpfr_set_ui(r.lo_mut(), 1, MPFR_RNDN);
    mpfr_set_ui(r.hi_mut(), 1, MPFR_RNDN);
    mpfr_exp(r.lo_mut(), r.lo(), MPFR_RNDD);
    mpfr_exp(r.hi_mut(), r.hi(), MPFR_RNDU);
    return r;
}

enum class Constant { pi, euler_e };

inline IntervalReal enclose_constant(Constant c, Precision p)
{
    switch (c) {
    case Constant::pi:
        return pi(p);
    case Constant::euler_e:
        return euler_e(p);
    }
    throw std::invalid_argument("unknown constant");
}

inline IntervalReal enclose_constant(std::string_view name, Precision p)
{
    if (name == "pi") {
        return pi(p);
    }
    if (name == "euler_e" || name == "e") {
        return euler_e(p);
    }
    throw std::invalid_argument("unknown constant: " + std::string(name));
}

/// Principal atan2(y, x) over a rectangle, in (-pi, pi]. When the rectangle
/// meets the negative real axis away from the origin the image wraps around
/// the branch cut and [-pi, pi] is returned.
inline IntervalReal atan2(const IntervalReal& y, const IntervalReal& x)
{
    const Precision p(result_bits(y, x));
    if (x.contains_zero() && y.contains_zero()) {
        throw DomainError("atan2 of a rectangle containing the origin");
    }
    const bool straddles_cut = mpfr_sgn(x.lo()) < 0 && mpfr_sgn(y.lo()) < 0 && mpfr_sgn(y.hi()) >= 0;
    if (straddles_cut) {
        IntervalReal pi_enc = pi(p);
        return IntervalReal::hull(-pi_enc, pi_enc);
    }
    // The rectangle is convex and avoids the origin and the cut, so the
    // extreme arguments sit at its corners.
    IntervalReal r(p);
    detail::Mpfr t(p.bits());
    mpfr_srcptr ys[2] = {y.lo(), y.hi()};
    mpfr_srcptr xs[2] = {x.lo(), x.hi()};
    bool first = true;
    for (auto yy : ys) {
        for (auto xx : xs) {
            mpfr_atan2(t.get(), yy, xx, MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), r.lo()) < 0) {
                mpfr_set(r.lo_mut(), t.get(), MPFR_RNDD);
            }
            mpfr_atan2(t.get(), yy, xx, MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), r.hi()) > 0) {
                mpfr_set(r.hi_mut(), t.get(), MPFR_RNDU);
            }
            first = false;
        }
    }
    return r;
}

/// floor(x) if it is the same integer for every point of x.
inline std::optional<mpz_class> certified_floor(const IntervalReal& x)
{
    if (mpfr_inf_p(x.lo()) || mpfr_inf_p(x.hi())) {
        return std::nullopt;
    }
    mpz_class lo;
    mpz_class hi;
    mpfr_get_z(lo.get_mpz_t(), x.lo(), MPFR_RNDD);
    mpfr_get_z(hi.get_mpz_t(), x.hi(), MPFR_RNDD);
    if (lo != hi) {
        return std::nullopt;
    }
    return lo;
}

/// Largest integer not exceeding the lower endpoint.
inline mpz_class floor_lower(const IntervalReal& x)
{
    mpz_class lo;
    mpfr_get_z(lo.get_mpz_t(), x.lo(), MPFR_RNDD);
    return lo;
}

// ---------------------------------------------------------------------------
// Certification with precision escalation

enum class Status { verified, failed, indeterminate };

inline const char* to_string(Status s)
{
    switch (s) {
    case Status::verified:
        return "verified";
    case Status::failed:
        return "failed";
    case Status::indeterminate:
        return "indeterminate";
    }
    return "?";
}

struct Certified {
    Status status = Status::indeterminate;
    IntervalReal margin;
    unsigned bits = 0;
};

enum class Strictness { strict, non_strict };

/// Decides `margin > 0` (or `>= 0`) for a margin recomputable at any
/// precision. Starts at `start`, doubles on straddle, stops after `limit`.
/// A DomainError at some precision is treated like a straddle.
template <class MarginFn>
Certified certify_positive(Precision start, MarginFn&& margin_at, Strictness strictness = Strictness::strict,
                           Precision limit = kMaxEscalation)
{
    Certified out;
    Precision p = start;
    for (;;) {
        try {
            IntervalReal m = margin_at(p);
            out.bits = p.bits();
            const bool ok = strictness == Strictness::strict ? mpfr_sgn(m.lo()) > 0 : mpfr_sgn(m.lo()) >= 0;
            const bool bad = strictness == Strictness::strict ? mpfr_sgn(m.hi()) <= 0 : mpfr_sgn(m.hi()) < 0;
            out.margin = std::move(m);
            if (ok) {
                out.status = Status::verified;
                return out;
            }
            if (bad) {
                out.status = Status::failed;
                return out;
            }
        } catch (const DomainError&) {
            out.bits = p.bits();
        } catch (const IndeterminateError&) {
            out.bits = p.bits();
        }
        if (p >= limit) {
            out.status = Status::indeterminate;
            return out;
        }
        p = std::min(p.doubled(), std::max(limit, start));
    }
}

}  // namespace twolog
