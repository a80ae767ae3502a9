#pragma once

// Verifier for Laurent's lower bound on a linear form in two logarithms
//     Lambda = b2 log alpha2 - b1 log alpha1.
// Given candidate parameters it certifies the three hypotheses (heights,
// multiplicity, main inequality) and turns |Lambda'| > rho^(-mu K L) into a
// lower bound for log|Lambda|.

#include "twolog/algebraic.hpp"
#include "twolog/certificate.hpp"
#include "twolog/special.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <utility>

namespace twolog {

struct TwoLogInstance {
    AlgebraicNumber alpha1;
    AlgebraicNumber alpha2;
    mpz_class b1;
    mpz_class b2;
    /// [Q(alpha1, alpha2) : Q] / [R(alpha1, alpha2) : R].
    mpq_class D;
    /// D came from the caller rather than from a supported shape.
    bool declared_degree = false;

    TwoLogInstance(AlgebraicNumber a1, AlgebraicNumber a2, mpz_class c1, mpz_class c2, mpq_class degree,
                   bool declared)
        : alpha1(std::move(a1)), alpha2(std::move(a2)), b1(std::move(c1)), b2(std::move(c2)), D(std::move(degree)),
          declared_degree(declared)
    {
        if (b1 < 1 || b2 < 1) {
            throw std::invalid_argument("b1 and b2 must be positive integers");
        }
        D.canonicalize();
        if (D <= 0) {
            throw std::invalid_argument("D must be positive");
        }
    }

    /// alpha1 = i, alpha2 = alpha with a non-real root of an even-degree
    /// minimal polynomial; D = deg/2.
    static TwoLogInstance unit_circle_shape(const AlgebraicNumber& alpha, mpz_class b1, mpz_class b2)
    {
        if (alpha.degree() % 2 != 0) {
            throw RejectionError("minimal polynomial of odd degree: alpha is real");
        }
        return TwoLogInstance(AlgebraicNumber::imaginary_unit(), alpha, std::move(b1), std::move(b2),
                              mpq_class(alpha.degree(), 2), false);
    }

    /// Any other shape: the caller vouches for D.
    static TwoLogInstance with_declared_degree(AlgebraicNumber a1, AlgebraicNumber a2, mpz_class b1, mpz_class b2,
                                               mpq_class D)
    {
        return TwoLogInstance(std::move(a1), std::move(a2), std::move(b1), std::move(b2), std::move(D), true);
    }

    bool trusted() const { return declared_degree || alpha1.trusted() || alpha2.trusted(); }

    bool alpha1_is_i() const { return alpha1.minpoly().coefficients() == ZPoly{1, 0, 1} && alpha1.hint_im() > 0; }
};

struct DerivedQuantities {
    std::int64_t R = 0;
    std::int64_t S = 0;
    std::int64_t N = 0;
    IntervalReal g;
    IntervalReal sigma;
    IntervalReal b;
    IntervalReal log_b;
    /// (R-1) b2 + (S-1) b1 = 0, so b = 0 and log b is undefined.
    bool b_vanishes = false;
};

namespace detail {

inline mpz_class to_mpz(std::int64_t v) { return mpz_class(static_cast<long>(v)); }

inline std::int64_t checked_mul(std::int64_t x, std::int64_t y)
{
    std::int64_t out = 0;
    if (__builtin_mul_overflow(x, y, &out)) {
        throw std::overflow_error("parameter product overflows 64 bits");
    }
    return out;
}

}  // namespace detail

inline DerivedQuantities derive_quantities(const LaurentParams& params, const TwoLogInstance& inst,
                                           Precision p = kDefaultPrecision)
{
    params.validate();
    DerivedQuantities dq;
    dq.R = params.R1 + params.R2 - 1;
    dq.S = params.S1 + params.S2 - 1;
    dq.N = detail::checked_mul(params.K, params.L);
    const mpz_class twelve_rs = 12 * detail::to_mpz(dq.R) * detail::to_mpz(dq.S);
    mpq_class g = mpq_class(1, 4) - mpq_class(detail::to_mpz(dq.N), twelve_rs);
    g.canonicalize();
    dq.g = IntervalReal::from_rational(g, p);
    const IntervalReal mu = params.mu_at(p);
    dq.sigma = (IntervalReal(1) + IntervalReal(2) * mu - sqr(mu)) / IntervalReal(2);
    const mpz_class coefficient = detail::to_mpz(dq.R - 1) * inst.b2 + detail::to_mpz(dq.S - 1) * inst.b1;
    if (coefficient == 0) {
        dq.b_vanishes = true;
        dq.b = IntervalReal(p);
        dq.log_b = IntervalReal::entire(p);
        return dq;
    }
    const IntervalReal log_products = cached_sum_log_factorials(static_cast<std::uint64_t>(params.K - 1), p);
    const mpz_class k2 = detail::to_mpz(params.K) * detail::to_mpz(params.K - 1);
    dq.log_b = log(IntervalReal::from_integer(coefficient, p) / IntervalReal(2))
               - IntervalReal(2) * log_products / IntervalReal::from_integer(k2, p);
    dq.b = exp(dq.log_b);
    return dq;
}

/// rho |log alpha| - log|alpha| + 2 D h(alpha): the least admissible a_i.
inline IntervalReal minimal_height_parameter(const AlgebraicNumber& alpha, const mpq_class& rho, const mpq_class& D,
                                             Precision p)
{
    return IntervalReal::from_rational(rho, p) * alpha.abs_log(p) - alpha.log_modulus(p)
           + IntervalReal::from_rational(2 * D, p) * alpha.absolute_log_height(p);
}

/// The value a_i supplied to the verifier.
class HeightParameter {
public:
    using Fn = std::function<IntervalReal(Precision)>;

    /// a_i equal to the least admissible value, so the height condition holds
    /// with equality by definition.
    static HeightParameter minimal() { return HeightParameter(Kind::minimal, nullptr, "minimal"); }

    /// a_i given by an expression recomputable at any precision.
    static HeightParameter expression(Fn fn, std::string label)
    {
        return HeightParameter(Kind::expression, std::move(fn), std::move(label));
    }

    static HeightParameter constant(const mpq_class& v)
    {
        return expression([v](Precision p) { return IntervalReal::from_rational(v, p); }, v.get_str());
    }

    bool is_minimal() const { return kind_ == Kind::minimal; }
    const std::string& label() const { return label_; }

    IntervalReal value(const AlgebraicNumber& alpha, const mpq_class& rho, const mpq_class& D, Precision p) const
    {
        if (kind_ == Kind::minimal) {
            return minimal_height_parameter(alpha, rho, D, p);
        }
        return fn_(p);
    }

private:
    enum class Kind { minimal, expression };
    HeightParameter(Kind kind, Fn fn, std::string label) : kind_(kind), fn_(std::move(fn)), label_(std::move(label)) {}

    Kind kind_;
    Fn fn_;
    std::string label_;
};

namespace detail {

inline Status combine(Status a, Status b)
{
    if (a == Status::failed || b == Status::failed) {
        return Status::failed;
    }
    if (a == Status::indeterminate || b == Status::indeterminate) {
        return Status::indeterminate;
    }
    return Status::verified;
}

}  // namespace detail

/// a_i >= rho |log alpha_i| - log|alpha_i| + 2 D h(alpha_i) for i = 1, 2, and a_i > 0.
inline ConditionResult check_height_condition(const HeightParameter& a1, const HeightParameter& a2,
                                              const TwoLogInstance& inst, const mpq_class& rho,
                                              Precision p = kDefaultPrecision)
{
    ConditionResult out;
    out.status = Status::verified;
    std::string note = "reads -log alpha_i as -log|alpha_i|";
    bool first = true;
    const std::pair<const HeightParameter*, const AlgebraicNumber*> items[2] = {{&a1, &inst.alpha1},
                                                                               {&a2, &inst.alpha2}};
    int index = 0;
    for (const auto& [param, alpha] : items) {
        ++index;
        const auto positive = certify_positive(
            p, [&](Precision q) { return param->value(*alpha, rho, inst.D, q); }, Strictness::strict);
        Certified admissible;
        if (param->is_minimal()) {
            admissible.status = Status::verified;
            admissible.margin = IntervalReal(p);
            admissible.bits = p.bits();
            note += "; a" + std::to_string(index) + " minimal (equality)";
        } else {
            admissible = certify_positive(
                p,
                [&](Precision q) {
                    return param->value(*alpha, rho, inst.D, q) - minimal_height_parameter(*alpha, rho, inst.D, q);
                },
                Strictness::non_strict);
        }
        if (positive.status != Status::verified) {
            note += "; a" + std::to_string(index) + " not certified positive";
        }
        out.status = detail::combine(out.status, detail::combine(positive.status, admissible.status));
        out.bits = std::max({out.bits, positive.bits, admissible.bits});
        out.margin = first ? admissible.margin : min(out.margin, admissible.margin);
        first = false;
    }
    out.note = note;
    return out;
}

/// Brute-force limits for the multiplicity condition.
inline constexpr std::int64_t kProductBruteForceLimit = 10'000;
inline constexpr std::int64_t kIntegerBruteForceLimit = 1'000'000;

/// #{r b2 + s b1 : 0 <= r < R2, 0 <= s < S2} by enumeration.
inline std::int64_t count_integer_combinations(const mpz_class& b1, const mpz_class& b2, std::int64_t R2,
                                               std::int64_t S2)
{
    if (b1.fits_slong_p() && b2.fits_slong_p() && abs(b1) < (1L << 30) && abs(b2) < (1L << 30) && R2 < (1L << 30)
        && S2 < (1L << 30)) {
        const long c1 = b1.get_si();
        const long c2 = b2.get_si();
        std::vector<long> values;
        values.reserve(static_cast<std::size_t>(R2 * S2));
        for (std::int64_t r = 0; r < R2; ++r) {
            for (std::int64_t s = 0; s < S2; ++s) {
                values.push_back(r * c2 + s * c1);
            }
        }
        std::sort(values.begin(), values.end());
        return std::unique(values.begin(), values.end()) - values.begin();
    }
    std::vector<mpz_class> values;
    values.reserve(static_cast<std::size_t>(R2 * S2));
    for (std::int64_t r = 0; r < R2; ++r) {
        for (std::int64_t s = 0; s < S2; ++s) {
            values.push_back(detail::to_mpz(r) * b2 + detail::to_mpz(s) * b1);
        }
    }
    std::sort(values.begin(), values.end());
    return std::unique(values.begin(), values.end()) - values.begin();
}

/// Exact test of x^m y^n = 1.
///
/// beta = x^m y^n - 1 lies in a field of degree <= deg x * deg y and has
/// h(beta) <= |m| h(x) + |n| h(y) + log 2, so beta != 0 forces
/// log|beta| >= -deg * h(beta). An enclosure below that gap proves beta = 0.
inline bool is_multiplicative_relation(const AlgebraicNumber& x, const AlgebraicNumber& y, long m, long n,
                                       Precision p = kDefaultPrecision)
{
    if (m == 0 && n == 0) {
        return true;
    }
    const IntervalReal hx = x.absolute_log_height(p);
    const IntervalReal hy = y.absolute_log_height(p);
    const IntervalReal gap = IntervalReal(static_cast<long>(x.degree()) * y.degree())
                             * (IntervalReal(std::labs(m)) * hx + IntervalReal(std::labs(n)) * hy + log(IntervalReal(2) + IntervalReal(p)));
    const double gap_bits = gap.hi_double() / std::log(2.0);
    Precision q(std::max<unsigned>(p.bits(), static_cast<unsigned>(gap_bits) + 64));
    for (;;) {
        auto power = [&](const AlgebraicNumber& z, long e) {
            ComplexEnclosure box = z.enclosure(q);
            if (e < 0) {
                box = inverse(box);
            }
            return pow(box, static_cast<unsigned long>(std::labs(e)));
        };
        ComplexEnclosure beta = power(x, m) * power(y, n);
        beta.re = beta.re - IntervalReal(1);
        const IntervalReal size = abs(beta);
        if (size.certainly_positive()) {
            return false;
        }
        const IntervalReal threshold = exp(-gap.with_precision(q));
        if (mpfr_cmp(size.hi(), threshold.lo()) < 0) {
            return true;
        }
        if (q >= Precision(1U << 16)) {
            throw IndeterminateError("multiplicative relation test undecided");
        }
        q = q.doubled();
    }
}

/// #{x^r y^s : 0 <= r < R1, 0 <= s < S1} by exact relation tests.
inline std::int64_t count_distinct_products(const AlgebraicNumber& x, const AlgebraicNumber& y, std::int64_t R1,
                                            std::int64_t S1, Precision p = kDefaultPrecision)
{
    // Differences (m, n), lexicographically positive, with x^m y^n = 1.
    std::vector<std::pair<long, long>> relations;
    for (long m = 0; m < R1; ++m) {
        for (long n = (m == 0 ? 1 : -(S1 - 1)); n < S1; ++n) {
            if (is_multiplicative_relation(x, y, m, n, p)) {
                relations.emplace_back(m, n);
            }
        }
    }
    std::int64_t duplicates = 0;
    for (std::int64_t r = 0; r < R1; ++r) {
        for (std::int64_t s = 0; s < S1; ++s) {
            for (const auto& [m, n] : relations) {
                if (r - m >= 0 && s - n >= 0 && s - n < S1) {
                    ++duplicates;
                    break;
                }
            }
        }
    }
    return R1 * S1 - duplicates;
}

/// #{alpha1^r alpha2^s} >= L and #{r b2 + s b1} >= (K-1) L.
inline ConditionResult check_multiplicity_condition(const LaurentParams& params, const TwoLogInstance& inst,
                                                    Precision p = kDefaultPrecision)
{
    params.validate();
    ConditionResult out;
    out.bits = p.bits();
    std::optional<std::int64_t> products;
    std::string how_products;
    const std::int64_t box1 = detail::checked_mul(params.R1, params.S1);
    if (inst.alpha1_is_i() && params.R1 <= 4 && !inst.alpha2.is_root_of_unity()) {
        products = box1;
        how_products = "alpha1 = i, alpha2 not a root of unity, R1 <= 4";
    } else if (box1 <= kProductBruteForceLimit) {
        try {
            products = count_distinct_products(inst.alpha1, inst.alpha2, params.R1, params.S1, p);
            how_products = "exact enumeration";
        } catch (const IndeterminateError&) {
            how_products = "enumeration undecided";
        }
    } else {
        how_products = "too large to enumerate and no shortcut applies";
    }

    std::optional<std::int64_t> sums;
    std::string how_sums;
    const std::int64_t box2 = detail::checked_mul(params.R2, params.S2);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), inst.b1.get_mpz_t(), inst.b2.get_mpz_t());
    if (g == 1 && (params.R2 - 1 < inst.b1 || params.S2 - 1 < inst.b2)) {
        sums = box2;
        how_sums = "gcd(b1, b2) = 1 with R2 - 1 < b1 or S2 - 1 < b2";
    } else if (box2 <= kIntegerBruteForceLimit) {
        sums = count_integer_combinations(inst.b1, inst.b2, params.R2, params.S2);
        how_sums = "exact enumeration";
    } else {
        how_sums = "too large to enumerate and no shortcut applies";
    }

    const std::int64_t need2 = detail::checked_mul(params.K - 1, params.L);
    Status s1 = Status::indeterminate;
    Status s2 = Status::indeterminate;
    std::optional<mpz_class> margin;
    auto fold = [&](const mpz_class& m) { margin = margin ? std::min(*margin, m) : m; };
    if (products) {
        s1 = *products >= params.L ? Status::verified : Status::failed;
        fold(detail::to_mpz(*products - params.L));
    }
    if (sums) {
        s2 = *sums >= need2 ? Status::verified : Status::failed;
        fold(detail::to_mpz(*sums) - detail::to_mpz(need2));
    }
    out.status = detail::combine(s1, s2);
    out.margin = margin ? IntervalReal::from_integer(*margin, p) : IntervalReal::entire(p);
    out.note = "products: " + (products ? std::to_string(*products) : std::string("?")) + " vs L = "
               + std::to_string(params.L) + " (" + how_products + "); sums: "
               + (sums ? std::to_string(*sums) : std::string("?")) + " vs (K-1)L = " + std::to_string(need2) + " ("
               + how_sums + ")";
    return out;
}

/// K(sigma L - 1) log rho - (D+1) log N - D(K-1) log b - g L (R a1 + S a2) - eps(N).
inline IntervalReal main_inequality_margin(const LaurentParams& params, const TwoLogInstance& inst,
                                           const HeightParameter& a1, const HeightParameter& a2, Precision p)
{
    const DerivedQuantities dq = derive_quantities(params, inst, p);
    if (dq.b_vanishes) {
        throw DomainError("b vanishes");
    }
    const IntervalReal K = IntervalReal::from_int(params.K, p);
    const IntervalReal L = IntervalReal::from_int(params.L, p);
    const IntervalReal N = IntervalReal::from_int(dq.N, p);
    const IntervalReal D = IntervalReal::from_rational(inst.D, p);
    const IntervalReal one(1);
    const IntervalReal v1 = a1.value(inst.alpha1, params.rho, inst.D, p);
    const IntervalReal v2 = a2.value(inst.alpha2, params.rho, inst.D, p);
    const IntervalReal lhs = K * (dq.sigma * L - one) * log(params.rho_at(p)) - (D + one) * log(N)
                             - D * (K - one) * dq.log_b - dq.g * L * (IntervalReal(dq.R) * v1 + IntervalReal(dq.S) * v2);
    return lhs - epsilon_of_N(static_cast<std::uint64_t>(dq.N), p);
}

inline ConditionResult check_main_inequality(const LaurentParams& params, const TwoLogInstance& inst,
                                             const HeightParameter& a1, const HeightParameter& a2,
                                             Precision p = kDefaultPrecision)
{
    params.validate();
    ConditionResult out;
    const DerivedQuantities dq = derive_quantities(params, inst, p);
    if (dq.b_vanishes) {
        out.status = Status::failed;
        out.margin = IntervalReal::entire(p);
        out.bits = p.bits();
        out.note = "b = 0: (R-1) b2 + (S-1) b1 vanishes";
        return out;
    }
    const Certified c = certify_positive(
        p, [&](Precision q) { return main_inequality_margin(params, inst, a1, a2, q); }, Strictness::strict);
    out.status = c.status;
    out.margin = c.margin;
    out.bits = c.bits;
    out.note = "N = " + std::to_string(dq.N) + ", R = " + std::to_string(dq.R) + ", S = " + std::to_string(dq.S);
    return out;
}

/// All three hypotheses, in fixed order.
inline VerificationReport verify_conditions(const LaurentParams& params, const TwoLogInstance& inst,
                                            const HeightParameter& a1, const HeightParameter& a2,
                                            Precision p = kDefaultPrecision)
{
    params.validate();
    VerificationReport report;
    report.conditions.push_back({"height_condition", check_height_condition(a1, a2, inst, params.rho, p)});
    report.conditions.push_back({"multiplicity_condition", check_multiplicity_condition(params, inst, p)});
    report.conditions.push_back({"main_inequality", check_main_inequality(params, inst, a1, a2, p)});
    return report;
}

/// log max{LS e^(LS t/(2 b2)) / (2 b2), LR e^(LR t/(2 b1)) / (2 b1)} at |Lambda| = t.
inline IntervalReal log_conversion_factor(const LaurentParams& params, const TwoLogInstance& inst,
                                          const IntervalReal& t, Precision p)
{
    const std::int64_t R = params.R1 + params.R2 - 1;
    const std::int64_t S = params.S1 + params.S2 - 1;
    const IntervalReal LS = IntervalReal::from_integer(detail::to_mpz(params.L) * detail::to_mpz(S), p);
    const IntervalReal LR = IntervalReal::from_integer(detail::to_mpz(params.L) * detail::to_mpz(R), p);
    const IntervalReal two_b2 = IntervalReal(2) * IntervalReal::from_integer(inst.b2, p);
    const IntervalReal two_b1 = IntervalReal(2) * IntervalReal::from_integer(inst.b1, p);
    const IntervalReal first = log(LS / two_b2) + LS * t / two_b2;
    const IntervalReal second = log(LR / two_b1) + LR * t / two_b1;
    return max(first, second);
}

/// -mu K L log rho.
inline IntervalReal engine_exponent(const LaurentParams& params, Precision p)
{
    return -(params.mu_at(p) * IntervalReal(params.K) * IntervalReal(params.L) * log(params.rho_at(p)));
}

/// Converts |Lambda'| > rho^(-mu K L) into a bound on log|Lambda|.
///
/// Assume log|Lambda| < T. The factor is increasing in |Lambda|, so
/// log|Lambda| > -mu K L log rho - log factor(e^T). If that already reaches
/// T the assumption fails and log|Lambda| >= T instead; either way
/// log|Lambda| > min(T, ...). T defaults to -mu K L log rho.
inline BoundCertificate conclude_bound(const LaurentParams& params, const TwoLogInstance& inst,
                                       const VerificationReport& report, Precision p = kDefaultPrecision,
                                       std::optional<IntervalReal> threshold = std::nullopt)
{
    BoundCertificate cert;
    cert.path = "engine";
    cert.b1 = inst.b1;
    cert.b2 = inst.b2;
    cert.D = inst.D;
    cert.params = params;
    cert.report = report;
    cert.precision_bits = p.bits();
    cert.trusted = inst.trusted();
    if (inst.declared_degree) {
        cert.trail.push_back("D declared by the caller");
    }
    if (inst.alpha1.trusted() || inst.alpha2.trusted()) {
        cert.trail.push_back("irreducibility of a minimal polynomial assumed, not checked");
    }
    if (!report.all_verified()) {
        cert.trail.push_back("refused: not every condition is verified");
        return cert;
    }
    const IntervalReal base = engine_exponent(params, p);
    const IntervalReal T = threshold ? threshold->with_precision(p) : base;
    detail::Mpfr t_hi(p.bits());
    mpfr_set(t_hi.get(), T.hi(), MPFR_RNDU);
    const IntervalReal t = exp(IntervalReal::from_bounds(t_hi.get(), t_hi.get(), p));
    const IntervalReal derived = base - log_conversion_factor(params, inst, t, p);
    cert.bound = min(T, derived);
    if (inst.alpha1_is_i() && !inst.alpha2.is_root_of_unity()) {
        cert.trail.push_back("Lambda != 0: alpha2 is not a root of unity");
    } else {
        cert.trail.push_back("Lambda assumed nonzero");
    }
    cert.trail.push_back("self-consistency threshold T = " + T.to_string());
    cert.metadata.push_back({"engine_exponent", base, "-mu K L log rho"});
    cert.metadata.push_back({"conversion_bound", derived, "engine exponent minus log of the conversion factor at e^T"});
    return cert;
}

}  // namespace twolog
