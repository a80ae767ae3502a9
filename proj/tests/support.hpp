#pragma once

#include "oracles.hpp"
#include "twolog/algebraic.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

namespace testing_support {

inline twolog::detail::Mpfr to_mpfr(const oracle::Real& x)
{
    twolog::detail::Mpfr out(600);
    mpfr_set_str(out.get(), oracle::to_string(x, 170).c_str(), 10, MPFR_RNDN);
    return out;
}

/// Enclosure within `tol` of the reference on both sides.
inline ::testing::AssertionResult near(const twolog::IntervalReal& x, const oracle::Real& ref, const char* tol)
{
    const auto r = to_mpfr(ref);
    twolog::detail::Mpfr t(600);
    mpfr_set_str(t.get(), tol, 10, MPFR_RNDN);
    twolog::detail::Mpfr d(600);
    mpfr_sub(d.get(), x.lo(), r.get(), MPFR_RNDN);
    mpfr_abs(d.get(), d.get(), MPFR_RNDN);
    const bool lo_ok = mpfr_cmp(d.get(), t.get()) <= 0;
    mpfr_sub(d.get(), x.hi(), r.get(), MPFR_RNDN);
    mpfr_abs(d.get(), d.get(), MPFR_RNDN);
    const bool hi_ok = mpfr_cmp(d.get(), t.get()) <= 0;
    if (lo_ok && hi_ok) {
        return ::testing::AssertionSuccess();
    }
    return ::testing::AssertionFailure() << x.to_string(30) << " vs " << oracle::to_string(ref, 30) << " (tol " << tol
                                         << ")";
}

/// Enclosure contains the reference, allowing the reference's own relative error `slack`.
inline ::testing::AssertionResult encloses(const twolog::IntervalReal& x, const oracle::Real& ref,
                                           const char* slack = "1e-100")
{
    const auto r = to_mpfr(ref);
    twolog::detail::Mpfr s(600);
    mpfr_set_str(s.get(), slack, 10, MPFR_RNDN);
    twolog::detail::Mpfr scale(600);
    mpfr_abs(scale.get(), r.get(), MPFR_RNDN);
    if (mpfr_cmp_ui(scale.get(), 1) < 0) {
        mpfr_set_ui(scale.get(), 1, MPFR_RNDN);
    }
    mpfr_mul(s.get(), s.get(), scale.get(), MPFR_RNDU);
    twolog::detail::Mpfr lo(600);
    twolog::detail::Mpfr hi(600);
    mpfr_sub(lo.get(), x.lo(), s.get(), MPFR_RNDD);
    mpfr_add(hi.get(), x.hi(), s.get(), MPFR_RNDU);
    if (mpfr_cmp(lo.get(), r.get()) <= 0 && mpfr_cmp(r.get(), hi.get()) <= 0) {
        return ::testing::AssertionSuccess();
    }
    return ::testing::AssertionFailure() << x.to_string(40) << " does not contain " << oracle::to_string(ref, 40);
}

inline std::string decimal_of(const oracle::Real& x) { return x.str(40, std::ios_base::fixed); }

struct RandomPolynomial {
    std::vector<long> coefficients;
    std::string text;
    std::string root;
};

/// Random primitive irreducible polynomials of degree 1..6 with small coefficients.
inline std::vector<RandomPolynomial> random_irreducibles(std::size_t count, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> deg(1, 6);
    std::uniform_int_distribution<long> coef(-9, 9);
    std::vector<RandomPolynomial> out;
    while (out.size() < count) {
        const int d = deg(rng);
        std::vector<long> c(d + 1);
        for (auto& x : c) {
            x = coef(rng);
        }
        if (c.back() == 0 || c.front() == 0) {
            continue;
        }
        long g = 0;
        for (long x : c) {
            g = std::gcd(g, std::labs(x));
        }
        if (g != 1) {
            continue;
        }
        twolog::ZPoly z;
        std::string text;
        for (std::size_t i = 0; i < c.size(); ++i) {
            z.push_back(c[i]);
            text += (i ? "," : "") + std::to_string(c[i]);
        }
        if (!twolog::is_irreducible(z)) {
            continue;
        }
        const auto roots = oracle::roots(c);
        out.push_back({c, text, decimal_of(real(roots[0])) + "," + decimal_of(imag(roots[0]))});
    }
    return out;
}

inline double width(const twolog::IntervalReal& x) { return x.width_double(); }

}  // namespace testing_support
