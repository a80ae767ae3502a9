#pragma once

// Exact integer polynomials. Coefficient vectors run constant term first.

#include "twolog/complex_interval.hpp"

#include <gmpxx.h>

#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace twolog {

using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;

namespace poly {

inline void trim(ZPoly& f)
{
    while (!f.empty() && f.back() == 0) {
        f.pop_back();
    }
}

inline void trim(QPoly& f)
{
    while (!f.empty() && f.back() == 0) {
        f.pop_back();
    }
}

/// Degree, with -1 for the zero polynomial.
template <class P>
int degree(const P& f)
{
    return static_cast<int>(f.size()) - 1;
}

inline mpz_class content(const ZPoly& f)
{
    mpz_class g = 0;
    for (const auto& c : f) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    return g;
}

inline ZPoly primitive_part(ZPoly f)
{
    trim(f);
    if (f.empty()) {
        return f;
    }
    mpz_class g = content(f);
    if (f.back() < 0) {
        g = -g;
    }
    for (auto& c : f) {
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }
    return f;
}

inline QPoly to_rational(const ZPoly& f) { return QPoly(f.begin(), f.end()); }

/// Clears denominators and returns the primitive integer multiple.
inline ZPoly to_primitive_integer(const QPoly& f)
{
    mpz_class l = 1;
    for (const auto& c : f) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    ZPoly out;
    out.reserve(f.size());
    for (const auto& c : f) {
        mpq_class scaled = c * l;
        out.push_back(scaled.get_num());
    }
    return primitive_part(std::move(out));
}

inline ZPoly derivative(const ZPoly& f)
{
    ZPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) {
        d.push_back(f[i] * static_cast<unsigned long>(i));
    }
    trim(d);
    return d;
}

inline ZPoly multiply(const ZPoly& a, const ZPoly& b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    ZPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    trim(out);
    return out;
}

/// Division with remainder over Q; the divisor must be nonzero.
inline std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b)
{
    trim(a);
    QPoly bb = b;
    trim(bb);
    if (bb.empty()) {
        throw std::domain_error("polynomial division by zero");
    }
    if (a.size() < bb.size()) {
        return {QPoly{}, a};
    }
    QPoly q(a.size() - bb.size() + 1, 0);
    const mpq_class lead = bb.back();
    while (a.size() >= bb.size() && !a.empty()) {
        const std::size_t shift = a.size() - bb.size();
        mpq_class factor = a.back() / lead;
        q[shift] = factor;
        for (std::size_t i = 0; i < bb.size(); ++i) {
            a[shift + i] -= factor * bb[i];
        }
        a.pop_back();
        trim(a);
    }
    trim(q);
    return {q, a};
}

inline bool divides(const ZPoly& g, const ZPoly& f)
{
    return divmod(to_rational(f), to_rational(g)).second.empty();
}

/// Primitive gcd over Q (as a primitive integer polynomial).
inline ZPoly gcd(const ZPoly& a, const ZPoly& b)
{
    QPoly x = to_rational(a);
    QPoly y = to_rational(b);
    trim(x);
    trim(y);
    while (!y.empty()) {
        QPoly r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return to_primitive_integer(x);
}

inline ZPoly reversed(const ZPoly& f) { return ZPoly(f.rbegin(), f.rend()); }

/// x^m mod f over Z, for f with leading coefficient +-1.
inline ZPoly power_of_x_mod(unsigned long m, const ZPoly& f)
{
    const std::size_t d = f.size() - 1;
    const int sign = f.back() > 0 ? 1 : -1;
    ZPoly r(d, 0);
    if (d == 0) {
        return r;
    }
    r[0] = 1;
    for (unsigned long step = 0; step < m; ++step) {
        // r <- x * r mod f
        mpz_class top = r[d - 1];
        for (std::size_t i = d - 1; i > 0; --i) {
            r[i] = r[i - 1];
        }
        r[0] = 0;
        if (top != 0) {
            // x^d = -(f_0 + ... + f_{d-1} x^{d-1}) / lead, lead = sign
            for (std::size_t i = 0; i < d; ++i) {
                r[i] -= top * f[i] * sign;
            }
        }
    }
    return r;
}

/// Horner evaluation on a complex rectangle.
inline ComplexEnclosure evaluate(const ZPoly& f, const ComplexEnclosure& z, Precision p)
{
    ComplexEnclosure acc{IntervalReal(p), IntervalReal(p)};
    for (auto it = f.rbegin(); it != f.rend(); ++it) {
        acc = acc * z;
        acc.re = acc.re + IntervalReal::from_integer(*it, p);
    }
    return acc;
}

}  // namespace poly

/// A primitive integer polynomial of degree >= 1 with nonzero leading
/// coefficient. Irreducibility is a property checked elsewhere.
class IntegerPolynomial {
public:
    explicit IntegerPolynomial(ZPoly coefficients) : c_(std::move(coefficients))
    {
        poly::trim(c_);
        if (poly::degree(c_) < 1) {
            throw std::invalid_argument("polynomial must have degree at least 1");
        }
        if (poly::content(c_) != 1) {
            throw std::invalid_argument("polynomial coefficients must have gcd 1");
        }
    }

    /// Parses "c0,c1,...,cd" (constant term first), e.g. "5,-6,5".
    static IntegerPolynomial parse(std::string_view text)
    {
        ZPoly coeffs;
        std::string item;
        std::stringstream ss{std::string(text)};
        while (std::getline(ss, item, ',')) {
            const auto first = item.find_first_not_of(" \t");
            const auto last = item.find_last_not_of(" \t");
            if (first == std::string::npos) {
                throw std::invalid_argument("empty coefficient in polynomial '" + std::string(text) + "'");
            }
            std::string token = item.substr(first, last - first + 1);
            if (!token.empty() && token[0] == '+') {
                token.erase(0, 1);
            }
            mpz_class v;
            if (token.empty() || v.set_str(token, 10) != 0) {
                throw std::invalid_argument("coefficient '" + token + "' is not an integer");
            }
            coeffs.push_back(v);
        }
        return IntegerPolynomial(std::move(coeffs));
    }

    int degree() const { return poly::degree(c_); }
    const ZPoly& coefficients() const { return c_; }
    const mpz_class& leading() const { return c_.back(); }
    const mpz_class& constant_term() const { return c_.front(); }

    IntegerPolynomial reversed() const { return IntegerPolynomial(poly::reversed(c_)); }

    /// f equals +-(its reversal): the root set is closed under z -> 1/z.
    bool is_self_reciprocal() const
    {
        const ZPoly r = poly::reversed(c_);
        if (r == c_) {
            return true;
        }
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] != -r[i]) {
                return false;
            }
        }
        return true;
    }

    std::string to_string() const
    {
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i > 0) {
                out += ",";
            }
            out += c_[i].get_str();
        }
        return out;
    }

    friend bool operator==(const IntegerPolynomial&, const IntegerPolynomial&) = default;

private:
    ZPoly c_;
};

}  // namespace twolog
