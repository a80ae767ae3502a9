#pragma once

// Independent reference computations for the tests. Nothing here uses the
// library's interval layer: plain Boost.Multiprecision binary floats and
// complex numbers at several times the working precision.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <gmpxx.h>

#include <string>
#include <vector>

namespace oracle {

/// About 160 decimal digits, more than 4x the default 128-bit working precision.
using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<160>>;
using Complex = boost::multiprecision::number<
    boost::multiprecision::complex_adaptor<boost::multiprecision::cpp_bin_float<160>>>;

inline Real from_mpz(const mpz_class& z) { return Real(z.get_str()); }

inline Real pi() { return boost::math::constants::pi<Real>(); }

/// sum_{k=2}^{n} log k, term by term.
inline Real log_sum(unsigned long n)
{
    Real s = 0;
    for (unsigned long k = 2; k <= n; ++k) {
        s += log(Real(k));
    }
    return s;
}

/// 2 log(N! N^(1-N) (e^N + (e-1)^N)) / N with log N! summed directly and the
/// exponentials kept in log form.
inline Real epsilon(unsigned long n)
{
    const Real N(n);
    const Real e = boost::math::constants::e<Real>();
    const Real inner = log_sum(n) + (1 - N) * log(N) + N + log1p(exp(N * log(1 - 1 / e)));
    return 2 * inner / N;
}

/// All roots of sum c_i x^i by Durand-Kerner.
inline std::vector<Complex> roots(const std::vector<long>& c)
{
    const std::size_t n = c.size() - 1;
    std::vector<Complex> z(n);
    const Complex seed(Real("0.4"), Real("0.9"));
    Complex w(1);
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = w;
        w *= seed;
    }
    auto eval = [&](const Complex& x) {
        Complex v(0);
        for (std::size_t i = c.size(); i-- > 0;) {
            v = v * x + Complex(Real(c[i]));
        }
        return v;
    };
    const Real lead(c.back());
    for (int iter = 0; iter < 2000; ++iter) {
        Real change = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex d(lead);
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) {
                    d *= z[i] - z[j];
                }
            }
            const Complex step = eval(z[i]) / d;
            z[i] -= step;
            change = std::max(change, Real(abs(step)));
        }
        if (change < Real("1e-140")) {
            break;
        }
    }
    return z;
}

/// log(|a| prod max(1, |root|)) / d.
inline Real height(const std::vector<long>& c)
{
    Real m = log(abs(Real(c.back())));
    for (const auto& z : roots(c)) {
        const Real r = abs(z);
        if (r > 1) {
            m += log(r);
        }
    }
    return m / Real(static_cast<long>(c.size() - 1));
}

/// ((R-1) b2 + (S-1) b1)/2 * (prod_{k=1}^{K-1} k!)^(-2/(K^2-K)) from exact factorials.
inline Real laurent_b(long K, long R, long S, long b1, long b2)
{
    mpz_class prod = 1;
    mpz_class f = 1;
    for (long k = 1; k <= K - 1; ++k) {
        f *= k;
        prod *= f;
    }
    const Real base = Real((R - 1) * b2 + (S - 1) * b1) / 2;
    return base * exp(-2 * log(from_mpz(prod)) / Real(K * K - K));
}

inline double to_double(const Real& x) { return x.convert_to<double>(); }

inline std::string to_string(const Real& x, int digits = 60) { return x.str(digits, std::ios_base::scientific); }

}  // namespace oracle
