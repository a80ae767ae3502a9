#pragma once

#include "twolog/interval.hpp"

namespace twolog {

/// Axis-aligned rectangle re x im enclosing a complex number.
struct ComplexEnclosure {
    IntervalReal re;
    IntervalReal im;

    static ComplexEnclosure point(const IntervalReal& re, const IntervalReal& im) { return {re, im}; }

    unsigned bits() const { return result_bits(re, im); }

    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }

    bool contains(const mpq_class& x, const mpq_class& y) const { return re.contains(x) && im.contains(y); }
};

inline ComplexEnclosure conj(const ComplexEnclosure& z) { return {z.re, -z.im}; }

inline ComplexEnclosure operator+(const ComplexEnclosure& a, const ComplexEnclosure& b)
{
    return {a.re + b.re, a.im + b.im};
}

inline ComplexEnclosure operator-(const ComplexEnclosure& a, const ComplexEnclosure& b)
{
    return {a.re - b.re, a.im - b.im};
}

inline ComplexEnclosure operator-(const ComplexEnclosure& a) { return {-a.re, -a.im}; }

inline ComplexEnclosure operator*(const ComplexEnclosure& a, const ComplexEnclosure& b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline ComplexEnclosure operator*(const IntervalReal& s, const ComplexEnclosure& z) { return {s * z.re, s * z.im}; }

/// |z|^2.
inline IntervalReal norm(const ComplexEnclosure& z) { return sqr(z.re) + sqr(z.im); }

inline IntervalReal abs(const ComplexEnclosure& z) { return sqrt(norm(z)); }

inline ComplexEnclosure inverse(const ComplexEnclosure& z)
{
    if (z.contains_zero()) {
        throw DomainError("inverse of a rectangle containing zero");
    }
    const IntervalReal n = norm(z);
    return {z.re / n, -z.im / n};
}

inline ComplexEnclosure operator/(const ComplexEnclosure& a, const ComplexEnclosure& b) { return a * inverse(b); }

/// Principal argument of every point of the rectangle.
inline IntervalReal arg(const ComplexEnclosure& z) { return atan2(z.im, z.re); }

inline bool intersects(const IntervalReal& a, const IntervalReal& b)
{
    return mpfr_cmp(a.lo(), b.hi()) <= 0 && mpfr_cmp(b.lo(), a.hi()) <= 0;
}

inline bool intersects(const ComplexEnclosure& a, const ComplexEnclosure& b)
{
    return intersects(a.re, b.re) && intersects(a.im, b.im);
}

/// The rectangle grown by r in every direction.
inline ComplexEnclosure inflate(const ComplexEnclosure& z, const IntervalReal& r)
{
    const IntervalReal grow = IntervalReal::hull(-r, r);
    return {z.re + grow, z.im + grow};
}

inline ComplexEnclosure pow(const ComplexEnclosure& z, unsigned long n)
{
    ComplexEnclosure result{IntervalReal(1), IntervalReal(0)};
    ComplexEnclosure base = z;
    while (n > 0) {
        if (n & 1UL) {
            result = result * base;
        }
        n >>= 1;
        if (n > 0) {
            base = base * base;
        }
    }
    return result;
}

}  // namespace twolog
