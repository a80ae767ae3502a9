#include "support.hpp"
#include "twolog/special.hpp"

#include <random>

using namespace twolog;
using testing_support::encloses;
using testing_support::near;

namespace {

const char* kPi100 =
    "3.141592653589793238462643383279502884197169399375105820974944592307816406286208998628034825342117068";

}  // namespace

TEST(Constants, PiAndEAtSixtyFourBits)
{
    const IntervalReal p = enclose_constant("pi", Precision(64));
    EXPECT_GE(p.lo_double(), 3.141592);
    EXPECT_LE(p.hi_double(), 3.141593);
    const IntervalReal e = enclose_constant("euler_e", Precision(64));
    EXPECT_TRUE(e.contains_double(2.718281828459045) || e.width_double() < 1e-15);
    EXPECT_THROW(enclose_constant("tau", Precision(64)), std::invalid_argument);
}

TEST(Constants, PiAgainstPublishedDigits)
{
    const IntervalReal p = pi(Precision(256));
    EXPECT_LT(p.width_double(), 1e-70);
    EXPECT_TRUE(near(p, oracle::Real(kPi100), "1e-70"));
}

TEST(Elementary, TrivialValues)
{
    const Precision p(128);
    EXPECT_TRUE(log(IntervalReal(1) + IntervalReal(p)).contains_zero());
    EXPECT_LT(log(IntervalReal(1) + IntervalReal(p)).width_double(), 1e-30);
    EXPECT_TRUE(sqrt(IntervalReal(4) + IntervalReal(p)).contains(mpq_class(2)));
}

TEST(Elementary, DomainErrorsAreExplicit)
{
    const Precision p(128);
    EXPECT_THROW(log(IntervalReal(p)), DomainError);
    EXPECT_THROW(log(IntervalReal(-1) + IntervalReal(p)), DomainError);
    EXPECT_THROW(IntervalReal(1) / IntervalReal(p), DomainError);
    EXPECT_THROW(sqrt(IntervalReal(-4) + IntervalReal(p)), DomainError);
}

TEST(Elementary, ExpLogContainment)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-30.0, 30.0);
    const Precision p(128);
    for (int i = 0; i < 1000; ++i) {
        const double v = std::exp(dist(rng));
        const IntervalReal x = IntervalReal::from_rational(mpq_class(v), p);
        EXPECT_TRUE(exp(log(x)).contains(mpq_class(v)));
    }
}

TEST(Elementary, RandomPointsAgainstHighPrecisionOracle)
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(1, 1'000'000);
    const Precision p(128);
    for (int i = 0; i < 200; ++i) {
        const long a = num(rng);
        const long b = num(rng);
        const IntervalReal x = IntervalReal::from_rational(mpq_class(a, b), p);
        const oracle::Real xr = oracle::Real(a) / oracle::Real(b);
        EXPECT_TRUE(encloses(log(x), log(xr), "1e-120"));
        EXPECT_TRUE(encloses(sqrt(x), sqrt(xr), "1e-120"));
        EXPECT_TRUE(encloses(exp(x / IntervalReal(1000)), exp(xr / 1000), "1e-120"));
        EXPECT_TRUE(encloses(x * x - x / (x + IntervalReal(1)), xr * xr - xr / (xr + 1), "1e-120"));
        EXPECT_TRUE(encloses(atan2(x, IntervalReal(1) - x), atan2(xr, 1 - xr), "1e-120"));
    }
}

TEST(Elementary, PrecisionMonotonicity)
{
    for (unsigned bits : {64u, 128u, 256u, 512u}) {
        const Precision p(bits);
        const Precision q = p.doubled();
        const IntervalReal third_p = IntervalReal(1) / (IntervalReal(3) + IntervalReal(p));
        const IntervalReal third_q = IntervalReal(1) / (IntervalReal(3) + IntervalReal(q));
        EXPECT_LE(log(third_q + pi(q)).width_double(), log(third_p + pi(p)).width_double());
        EXPECT_LE(exp(third_q).width_double(), exp(third_p).width_double());
    }
}

TEST(LogFactorial, SmallValues)
{
    EXPECT_TRUE(log_factorial(1).contains_zero());
    EXPECT_TRUE(encloses(log_factorial(5), log(oracle::Real(120)), "1e-100"));
}

TEST(LogFactorial, AgainstDirectLogSum)
{
    for (unsigned long n : {2ul, 10ul, 999ul, 1000ul, 1001ul, 5000ul, 10000ul, 20000ul}) {
        const IntervalReal v = log_factorial(n);
        EXPECT_TRUE(encloses(v, oracle::log_sum(n), "1e-100")) << n;
        if (n <= 10000) {
            EXPECT_LT(v.width_double(), 1e-9) << n;
        }
    }
}

TEST(Epsilon, SmallNAndMonotone)
{
    for (unsigned long n : {2ul, 10ul, 100ul, 1000ul, 5000ul}) {
        const IntervalReal e = epsilon_of_N(n);
        EXPECT_TRUE(encloses(e, oracle::epsilon(n), "1e-100")) << n;
        EXPECT_LT(e.width_double(), 1e-9) << n;
    }
    // N = 2 by hand: log(e^2 + (e-1)^2) - log 2 ... = 2 log(2! 2^-1 (e^2 + (e-1)^2)) / 2.
    const oracle::Real e = boost::math::constants::e<oracle::Real>();
    EXPECT_TRUE(encloses(epsilon_of_N(2), log(e * e + (e - 1) * (e - 1)), "1e-100"));
    IntervalReal prev = epsilon_of_N(100);
    for (unsigned long n : {500ul, 1000ul, 5000ul, 10000ul}) {
        const IntervalReal cur = epsilon_of_N(n);
        EXPECT_LT(mpfr_cmp(cur.hi(), prev.lo()), 0) << n;
        prev = cur;
    }
    EXPECT_LT(epsilon_of_N(10000).hi_double(), 0.004);
    EXPECT_THROW(epsilon_of_N(1), std::invalid_argument);
}

TEST(SumLogFactorials, TailFormulaMatchesDirectSum)
{
    for (std::uint64_t m : {20001ull, 30000ull, 100000ull}) {
        const IntervalReal fast = sum_log_factorials(m);
        const IntervalReal slow = detail::direct_log_sum(2, m, m, true, kDefaultPrecision);
        EXPECT_LE(mpfr_cmp(fast.lo(), slow.hi()), 0) << m;
        EXPECT_LE(mpfr_cmp(slow.lo(), fast.hi()), 0) << m;
        EXPECT_LT(fast.width_double(), 1e-15) << m;
    }
}

TEST(SumLogFactorials, SmallAgainstOracle)
{
    for (unsigned long m : {1ul, 2ul, 7ul, 49ul}) {
        oracle::Real s = 0;
        for (unsigned long k = 1; k <= m; ++k) {
            s += oracle::log_sum(k);
        }
        EXPECT_TRUE(encloses(sum_log_factorials(m), s, "1e-100")) << m;
    }
}

TEST(CertifyPositive, EscalatesUntilTheSignIsDecided)
{
    mpz_class two_300;
    mpz_ui_pow_ui(two_300.get_mpz_t(), 2, 300);
    const mpq_class x = 1 + mpq_class(1, two_300);
    const auto margin_at = [&](Precision q) { return IntervalReal::from_rational(x, q) - IntervalReal::from_int(1, q); };
    const Certified c = certify_positive(kDefaultPrecision, margin_at);
    EXPECT_EQ(c.status, Status::verified);
    EXPECT_EQ(c.bits, 512u);
    EXPECT_GT(mpfr_sgn(c.margin.lo()), 0);

    const auto negated = [&](Precision q) { return -margin_at(q); };
    EXPECT_EQ(certify_positive(kDefaultPrecision, negated).status, Status::failed);
}

TEST(CertifyPositive, StrictnessAtZero)
{
    const auto zero = [](Precision q) { return IntervalReal(q); };
    EXPECT_EQ(certify_positive(kDefaultPrecision, zero).status, Status::failed);
    EXPECT_EQ(certify_positive(kDefaultPrecision, zero, Strictness::non_strict).status, Status::verified);
}

TEST(CertifyPositive, IndeterminateAtTheLimit)
{
    const auto straddle = [](Precision q) { return IntervalReal::entire(q); };
    const Certified c = certify_positive(kDefaultPrecision, straddle);
    EXPECT_EQ(c.status, Status::indeterminate);
    EXPECT_EQ(c.bits, kMaxEscalation.bits());

    const auto domain = [](Precision q) { return log(IntervalReal::entire(q)); };
    EXPECT_EQ(certify_positive(kDefaultPrecision, domain).status, Status::indeterminate);
}
