#pragma once

// Built-in replay grid: D in {1,2,3} times target heights {17, 50, 100, 1000, 10000},
// each run on the main path with b1 = n, b2 = n + 1.

#include "twolog/unit_circle.hpp"

#include <array>
#include <chrono>

namespace twolog {

struct SuiteAlpha {
    int D;
    const char* minpoly;
    const char* root;
};

/// Unit-modulus non-roots of unity of degree 2D.
inline constexpr std::array<SuiteAlpha, 3> kSuiteAlphas = {{
    {1, "5,-6,5", "0.6,0.8"},
    {2, "5,-2,6,-2,5", "0.5583,0.8297"},
    {3, "3,0,6,-1,6,0,3", "0.5686,0.8226"},
}};

inline constexpr std::array<int, 5> kSuiteHeights = {17, 50, 100, 1000, 10000};

struct SuiteEntry {
    int D = 0;
    int target_h = 0;
    /// True when b' > 4h^2 could not be certified and the main path was forced.
    bool forced = false;
    BoundCertificate certificate;
    double seconds = 0;

    bool all_checks_verified() const
    {
        if (certificate.checks.empty()) {
            return false;
        }
        for (const auto& c : certificate.checks) {
            if (c.status != Status::verified) {
                return false;
            }
        }
        return true;
    }
};

/// Smallest n with D(log b' + 2.96) + 0.01 >= target for b1 = n, b2 = n + 1.
inline mpz_class suite_n(const AlgebraicNumber& alpha, int target, Precision p = kDefaultPrecision)
{
    const IntervalReal D = IntervalReal::from_rational(mpq_class(alpha.degree(), 2), p);
    const IntervalReal arc = decimal(constants::arc, p) * pi(p);
    const IntervalReal a = arc + IntervalReal(2) * D * alpha.absolute_log_height(p);
    const IntervalReal log_b = (IntervalReal(target) - decimal(constants::delta0, p)) / D - decimal(constants::shift, p);
    const IntervalReal n = (exp(log_b) - IntervalReal(1) / arc) / (IntervalReal(1) / a + IntervalReal(1) / arc);
    mpz_class out;
    mpfr_get_z(out.get_mpz_t(), n.hi(), MPFR_RNDU);
    return out < 1 ? mpz_class(1) : out;
}

inline SuiteEntry run_suite_entry(const SuiteAlpha& s, int target, Precision p = kDefaultPrecision)
{
    const auto start = std::chrono::steady_clock::now();
    const AlgebraicNumber alpha = AlgebraicNumber::parse(s.minpoly, s.root);
    const mpz_class n = suite_n(alpha, target, p);
    const UnitCircleInputs in = compute_inputs(alpha, n, n + 1, p);
    const Certified decision = certify_positive(p, [&](Precision q) {
        const auto v = in.at(q);
        return v.bprime - IntervalReal(4) * sqr(v.h);
    });
    SuiteEntry e;
    e.D = s.D;
    e.target_h = target;
    e.forced = decision.status != Status::verified;
    e.certificate = main_path(in, p, e.forced);
    e.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return e;
}

inline std::vector<SuiteEntry> run_paper_suite(Precision p = kDefaultPrecision)
{
    std::vector<SuiteEntry> out;
    for (const auto& s : kSuiteAlphas) {
        for (int h : kSuiteHeights) {
            out.push_back(run_suite_entry(s, h, p));
        }
    }
    return out;
}

}  // namespace twolog
