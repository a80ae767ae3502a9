#pragma once

// Certified log-factorials and the error functional
//     eps(N) = 2 log(N! N^(1-N) (e^N + (e-1)^N)) / N.

#include "twolog/interval.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace twolog {

/// Below this N, log N! is taken from the exact integer N!.
inline constexpr std::uint64_t kExactFactorialLimit = 1000;

/// Enclosure of log N!.
///
/// Small N use the exact factorial. Larger N use the truncated Stirling
/// series: with S = N log N - N + log(2 pi N)/2,
///     S + 1/(12N) - 1/(360N^3) < log N! < S + 1/(12N) - 1/(360N^3) + 1/(1260N^5),
/// since the remainder of the series has the sign of, and is smaller than,
/// the first omitted term.
inline IntervalReal log_factorial(std::uint64_t n, Precision p = kDefaultPrecision)
{
    if (n == 0) {
        throw std::invalid_argument("log_factorial needs N >= 1");
    }
    if (n < kExactFactorialLimit) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
        return log(IntervalReal::from_integer(f, p));
    }
    const IntervalReal nn = IntervalReal::from_integer(mpz_class(std::to_string(n)), p);
    const IntervalReal ln = log(nn);
    const IntervalReal base = nn * ln - nn + log(IntervalReal(2) * pi(p) * nn) / IntervalReal(2);
    const IntervalReal t1 = IntervalReal(1) / (IntervalReal(12) * nn);
    const IntervalReal t3 = IntervalReal(1) / (IntervalReal(360) * pow(nn, 3));
    const IntervalReal t5 = IntervalReal(1) / (IntervalReal(1260) * pow(nn, 5));
    const IntervalReal lower = base + t1 - t3;
    const IntervalReal upper = lower + t5;
    return IntervalReal::from_bounds(lower.lo(), upper.hi(), p);
}

/// eps(N), evaluated in log domain: log(e^N + (e-1)^N) = N + log1p(exp(N log(1 - 1/e))).
inline IntervalReal epsilon_of_N(std::uint64_t n, Precision p = kDefaultPrecision)
{
    if (n < 2) {
        throw std::invalid_argument("epsilon_of_N needs N >= 2");
    }
    const IntervalReal nn = IntervalReal::from_integer(mpz_class(std::to_string(n)), p);
    const IntervalReal one(1);
    const IntervalReal ratio_log = log(one - one / euler_e(p));
    const IntervalReal log_sum = nn + log1p(exp(nn * ratio_log));
    const IntervalReal inner = log_factorial(n, p) + (one - nn) * log(nn) + log_sum;
    return IntervalReal(2) * inner / nn;
}

namespace detail {

/// sum_{j=from}^{to} w(j) log j with w(j) = weight_base + 1 - j when `weighted`,
/// else 1. Each log is correctly rounded and widened by one ulp.
inline IntervalReal direct_log_sum(std::uint64_t from, std::uint64_t to, std::uint64_t weight_base, bool weighted,
                                   Precision p)
{
    IntervalReal acc(p);
    Mpfr lj(p.bits());
    Mpfr lj_lo(p.bits());
    Mpfr lj_hi(p.bits());
    Mpfr term(p.bits());
    for (std::uint64_t j = std::max<std::uint64_t>(from, 2); j <= to; ++j) {
        const unsigned long weight = weighted ? static_cast<unsigned long>(weight_base + 1 - j) : 1ul;
        mpfr_set_ui(lj.get(), static_cast<unsigned long>(j), MPFR_RNDN);
        mpfr_log(lj.get(), lj.get(), MPFR_RNDN);
        mpfr_set(lj_lo.get(), lj.get(), MPFR_RNDN);
        mpfr_set(lj_hi.get(), lj.get(), MPFR_RNDN);
        mpfr_nextbelow(lj_lo.get());
        mpfr_nextabove(lj_hi.get());
        mpfr_mul_ui(term.get(), lj_lo.get(), weight, MPFR_RNDD);
        mpfr_add(acc.lo_mut(), acc.lo(), term.get(), MPFR_RNDD);
        mpfr_mul_ui(term.get(), lj_hi.get(), weight, MPFR_RNDU);
        mpfr_add(acc.hi_mut(), acc.hi(), term.get(), MPFR_RNDU);
    }
    return acc;
}

/// Bernoulli numbers B_2, B_4, ..., B_20.
inline constexpr std::array<std::pair<long, long>, 10> kBernoulli = {{
    {1, 6}, {-1, 30}, {1, 42}, {-1, 30}, {5, 66}, {-691, 2730}, {7, 6}, {-3617, 510}, {43867, 798}, {-174611, 330},
}};

/// Euler-Maclaurin for sum_{j=a+1}^{b} f(j), given the antiderivative
/// difference, f at both ends and the derivatives f^(r) at both ends:
///     int_a^b f + (f(b) - f(a))/2 + sum_k B_2k/(2k)! (f^(2k-1)(b) - f^(2k-1)(a)) + R,
/// |R| <= 2 zeta(2q)/(2 pi)^(2q) |f^(2q-1)(b) - f^(2q-1)(a)| when f^(2q) has constant sign.
template <class Derivative>
IntervalReal euler_maclaurin(const IntervalReal& integral, const IntervalReal& fa, const IntervalReal& fb,
                             Derivative derivative, Precision p)
{
    IntervalReal acc = integral + (fb - fa) / IntervalReal(2);
    IntervalReal factorial(1);
    const int q = static_cast<int>(kBernoulli.size());
    for (int k = 1; k < q; ++k) {
        factorial = factorial * IntervalReal(2 * k - 1) * IntervalReal(2 * k);
        const IntervalReal bern = IntervalReal::from_rational(mpq_class(kBernoulli[k - 1].first, kBernoulli[k - 1].second), p);
        acc = acc + bern / factorial * derivative(2 * k - 1);
    }
    // zeta(2q) <= 2.
    const IntervalReal tail = IntervalReal(4) / pow(IntervalReal(2) * pi(p), 2 * q) * abs(derivative(2 * q - 1));
    return acc + IntervalReal::from_bounds((-tail).lo(), tail.hi(), p);
}

}  // namespace detail

/// Below this m the factorial product is summed term by term.
inline constexpr std::uint64_t kDirectLogSumLimit = 20000;

/// Enclosure of sum_{k=1}^{m} log k! = (m + 1) log m! - sum_{j=1}^{m} j log j.
///
/// This is the log of the factorial product in Laurent's b, with m = K - 1
/// reaching several hundred thousand. Small m are summed directly; otherwise
/// both sums are summed directly up to a cut and the tails use
/// Euler-Maclaurin with a certified remainder.
inline IntervalReal sum_log_factorials(std::uint64_t m, Precision p = kDefaultPrecision)
{
    if (m <= kDirectLogSumLimit) {
        return detail::direct_log_sum(2, m, m, true, p);
    }
    const std::uint64_t a = std::max<std::uint64_t>(2000, 16 * static_cast<std::uint64_t>(p.bits()));
    const IntervalReal head0 = detail::direct_log_sum(2, a, 0, false, p);
    // sum_{j<=a} j log j = (a+1) sum_{j<=a} log j - sum_{j<=a} (a+1-j) log j.
    const IntervalReal head1 =
        IntervalReal(static_cast<long>(a + 1)) * head0 - detail::direct_log_sum(2, a, a, true, p);
    const IntervalReal A(static_cast<long>(a));
    const IntervalReal B = IntervalReal::from_integer(mpz_class(std::to_string(m)), p);
    const IntervalReal la = log(A + IntervalReal(p));
    const IntervalReal lb = log(B);
    const IntervalReal one(1);
    // f = log x: f^(r) = (-1)^(r-1) (r-1)!/x^r.
    auto d0 = [&](int r) {
        IntervalReal fact(1);
        for (int i = 2; i < r; ++i) {
            fact = fact * IntervalReal(i);
        }
        const IntervalReal diff = fact * (one / pow(B, r) - one / pow(A + IntervalReal(p), r));
        return (r % 2 == 1) ? diff : -diff;
    };
    const IntervalReal tail0 =
        detail::euler_maclaurin((B * lb - B) - (A * la - A), la, lb, d0, p);
    // f = x log x: f' = log x + 1, f^(r) = (-1)^r (r-2)!/x^(r-1) for r >= 2.
    auto d1 = [&](int r) {
        if (r == 1) {
            return lb - la;
        }
        IntervalReal fact(1);
        for (int i = 2; i < r - 1; ++i) {
            fact = fact * IntervalReal(i);
        }
        const IntervalReal diff = fact * (one / pow(B, r - 1) - one / pow(A + IntervalReal(p), r - 1));
        return (r % 2 == 0) ? diff : -diff;
    };
    const IntervalReal two(2);
    const IntervalReal four(4);
    const IntervalReal integral1 = (sqr(B) / two * lb - sqr(B) / four) - (sqr(A) / two * la - sqr(A) / four);
    const IntervalReal tail1 = detail::euler_maclaurin(integral1, A * la, B * lb, d1, p);
    const IntervalReal sum0 = head0 + tail0;
    const IntervalReal sum1 = head1 + tail1;
    return (B + one) * sum0 - sum1;
}

/// sum_log_factorials with a process-wide memo keyed by (m, bits); the
/// verifier and the replay both need it for the same K.
inline IntervalReal cached_sum_log_factorials(std::uint64_t m, Precision p = kDefaultPrecision)
{
    static std::mutex guard;
    static std::map<std::pair<std::uint64_t, unsigned>, IntervalReal> memo;
    const auto key = std::make_pair(m, p.bits());
    {
        std::lock_guard<std::mutex> lock(guard);
        if (auto it = memo.find(key); it != memo.end()) {
            return it->second;
        }
    }
    IntervalReal value = sum_log_factorials(m, p);
    std::lock_guard<std::mutex> lock(guard);
    return memo.emplace(key, value).first->second;
}

}  // namespace twolog
