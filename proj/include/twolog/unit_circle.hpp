#pragma once

// Lower bound log|Lambda_1| > -2.7704 a h^2 for Lambda_1 = b2 log alpha - b1 pi i / 2,
// alpha on the unit circle and not a root of unity, obtained from the
// two-logarithm verifier with fixed parameter recipes. Also replays every
// numeric step of the written argument with certified margins.

#include "twolog/laurent.hpp"

#include <functional>
#include <string>
#include <vector>

namespace twolog {

namespace constants {
inline constexpr const char* delta0 = "0.01";
inline constexpr const char* delta1 = "0.044";
inline constexpr const char* mu = "0.59";
inline constexpr const char* rho = "18.1";
inline constexpr const char* arc = "9.05";
inline constexpr const char* shift = "2.96";
inline constexpr const char* height_floor = "17";
inline constexpr const char* threshold = "2.75";
inline constexpr const char* engine_coefficient = "2.7701";
inline constexpr const char* slack_coefficient = "0.0003";
inline constexpr const char* final_coefficient = "2.7704";
}  // namespace constants

inline IntervalReal decimal(const char* text, Precision p) { return IntervalReal::from_decimal(text, p); }

/// Which term of h = max{17, D, D(log b' + 2.96) + 0.01} is active.
enum class HeightBranch { floor, degree, logarithmic, undecided };

inline const char* to_string(HeightBranch b)
{
    switch (b) {
    case HeightBranch::floor:
        return "17";
    case HeightBranch::degree:
        return "D";
    case HeightBranch::logarithmic:
        return "D(log b' + 2.96) + 0.01";
    case HeightBranch::undecided:
        return "undecided";
    }
    return "?";
}

struct UnitCircleInputs {
    AlgebraicNumber alpha;
    mpz_class b1;
    mpz_class b2;
    mpq_class D;
    IntervalReal h_alpha;
    /// 9.05 pi + 2 D h(alpha)
    IntervalReal a;
    /// b1 / a + b2 / (9.05 pi)
    IntervalReal bprime;
    IntervalReal h;
    HeightBranch branch = HeightBranch::undecided;
    unsigned bits = 0;

    /// The same inputs recomputed at precision q.
    UnitCircleInputs at(Precision q) const;
};

namespace detail {

inline UnitCircleInputs evaluate_inputs(const AlgebraicNumber& alpha, const mpz_class& b1, const mpz_class& b2,
                                        Precision p)
{
    mpq_class D(alpha.degree(), 2);
    D.canonicalize();
    const IntervalReal Dq = IntervalReal::from_rational(D, p);
    const IntervalReal h_alpha = alpha.absolute_log_height(p);
    const IntervalReal arc = decimal(constants::arc, p) * pi(p);
    const IntervalReal a = arc + IntervalReal(2) * Dq * h_alpha;
    const IntervalReal bprime = IntervalReal::from_integer(b1, p) / a + IntervalReal::from_integer(b2, p) / arc;
    const IntervalReal floor_term = decimal(constants::height_floor, p);
    const IntervalReal log_term = Dq * (log(bprime) + decimal(constants::shift, p)) + decimal(constants::delta0, p);
    const IntervalReal h = max(max(floor_term, Dq), log_term);
    HeightBranch branch = HeightBranch::undecided;
    const IntervalReal rest = max(floor_term, Dq);
    if (mpfr_cmp(log_term.lo(), rest.hi()) > 0) {
        branch = HeightBranch::logarithmic;
    } else if (mpfr_cmp(log_term.hi(), rest.lo()) < 0) {
        branch = D > 17 ? HeightBranch::degree : HeightBranch::floor;
    }
    return UnitCircleInputs{alpha, b1, b2, D, h_alpha, a, bprime, h, branch, p.bits()};
}

}  // namespace detail

inline UnitCircleInputs UnitCircleInputs::at(Precision q) const { return detail::evaluate_inputs(alpha, b1, b2, q); }

/// (b1/d, b2/d) with d = gcd(b1, b2).
inline std::pair<mpz_class, mpz_class> gcd_reduce(const mpz_class& b1, const mpz_class& b2)
{
    if (b1 < 1 || b2 < 1) {
        throw RejectionError("b1 and b2 must be positive integers");
    }
    mpz_class d;
    mpz_gcd(d.get_mpz_t(), b1.get_mpz_t(), b2.get_mpz_t());
    return {b1 / d, b2 / d};
}

/// Checks the hypotheses on alpha and evaluates b', D, a, h.
inline UnitCircleInputs compute_inputs(const AlgebraicNumber& alpha, const mpz_class& b1, const mpz_class& b2,
                                       Precision p = kDefaultPrecision)
{
    if (b1 < 1 || b2 < 1) {
        throw RejectionError("b1 and b2 must be positive integers");
    }
    if (!alpha.has_unit_modulus()) {
        throw RejectionError("not unit-modulus: |alpha| != 1");
    }
    if (alpha.is_root_of_unity()) {
        throw RejectionError("alpha is a root of unity");
    }
    if (alpha.degree() % 2 != 0) {
        throw RejectionError("minimal polynomial of odd degree");
    }
    UnitCircleInputs in = detail::evaluate_inputs(alpha, b1, b2, p);
    for (Precision q = p; in.branch == HeightBranch::undecided && q < kMaxEscalation;) {
        q = q.doubled();
        in = detail::evaluate_inputs(alpha, b1, b2, q);
    }
    return in;
}

/// Parameters of the main path.
struct PipelineState {
    IntervalReal delta0;
    IntervalReal delta1;
    IntervalReal mu;
    IntervalReal rho;
    IntervalReal a1;
    IntervalReal a2;
    IntervalReal sigma;
    IntervalReal lambda;
    IntervalReal H;
    IntervalReal L0;
    IntervalReal Lplus;
    IntervalReal Lminus;
    IntervalReal v0;
    IntervalReal v1;
    IntervalReal v2;
    IntervalReal sqrt_k;
    IntervalReal k;
    std::int64_t L = 0;
    std::int64_t K = 0;
    std::int64_t R1 = 4;
    std::int64_t S1 = 0;
    std::int64_t R2 = 0;
    std::int64_t S2 = 0;
    unsigned bits = 0;

    LaurentParams params() const
    {
        LaurentParams out;
        out.K = K;
        out.L = L;
        out.R1 = R1;
        out.R2 = R2;
        out.S1 = S1;
        out.S2 = S2;
        out.rho = parse_decimal(constants::rho);
        out.mu = parse_decimal(constants::mu);
        return out;
    }
};

namespace detail {

/// Largest root sqrt(k) of v2 k - v1 sqrt(k) - v0 = 0.
inline IntervalReal quadratic_root(const IntervalReal& v0, const IntervalReal& v1, const IntervalReal& v2)
{
    return (v1 + sqrt(sqr(v1) + IntervalReal(4) * v0 * v2)) / (IntervalReal(2) * v2);
}

/// Interval fields of the state for a given integer L.
inline void fill_continuous(PipelineState& s, const UnitCircleInputs& in, Precision p)
{
    s.delta0 = decimal(constants::delta0, p);
    s.delta1 = decimal(constants::delta1, p);
    s.mu = decimal(constants::mu, p);
    s.rho = decimal(constants::rho, p);
    s.a1 = s.rho * pi(p) / IntervalReal(2);
    s.a2 = in.a;
    const IntervalReal one(1);
    s.sigma = (one + IntervalReal(2) * s.mu - sqr(s.mu)) / IntervalReal(2);
    s.lambda = s.sigma * log(s.rho);
    s.H = in.h / s.lambda + one / s.sigma;
    s.L0 = s.H + sqrt(sqr(s.H) + one / IntervalReal(4));
    const IntervalReal half = one / IntervalReal(2);
    s.Lplus = s.L0 + half;
    s.Lminus = s.L0 - half;
    s.bits = p.bits();
}

inline IntervalReal v0_at(const PipelineState& s, const IntervalReal& x)
{
    const IntervalReal one(1);
    return one / (IntervalReal(4) * s.a1) + IntervalReal(4) / (IntervalReal(3) * s.a2) + x / (IntervalReal(12) * s.a1);
}

inline IntervalReal v1_at(const IntervalReal& x) { return x / IntervalReal(3); }

inline IntervalReal v2_at(const PipelineState& s, const IntervalReal& x) { return s.lambda * (x - s.H); }

inline void fill_quadratic(PipelineState& s)
{
    const IntervalReal L = IntervalReal::from_int(s.L, Precision(s.bits));
    s.v0 = v0_at(s, L);
    s.v1 = v1_at(L);
    s.v2 = v2_at(s, L);
    s.sqrt_k = quadratic_root(s.v0, s.v1, s.v2);
    s.k = sqr(s.sqrt_k);
}

inline std::optional<std::int64_t> floor_int(const IntervalReal& x)
{
    auto f = certified_floor(x);
    if (!f || !f->fits_slong_p()) {
        return std::nullopt;
    }
    return f->get_si();
}

}  // namespace detail

/// L = floor(L0 + 1/2), k from the quadratic, and the integer recipe for
/// K, R1, S1, R2, S2. Floors are certified, escalating precision as needed.
inline PipelineState build_parameters(const UnitCircleInputs& inputs, Precision p = kDefaultPrecision)
{
    for (Precision q = p;; q = q.doubled()) {
        const UnitCircleInputs in = q == Precision(inputs.bits) ? inputs : inputs.at(q);
        PipelineState s;
        detail::fill_continuous(s, in, q);
        const auto L = detail::floor_int(s.L0 + IntervalReal(1) / IntervalReal(2));
        bool ok = L.has_value();
        if (ok) {
            s.L = *L;
            if (!(IntervalReal(s.L) - s.H).certainly_positive()) {
                throw IndeterminateError("L - H is not certifiably positive");
            }
            detail::fill_quadratic(s);
            const IntervalReal Lr = IntervalReal::from_int(s.L, q);
            const auto K = detail::floor_int(s.k * Lr * s.a1 * s.a2);
            ok = K.has_value();
            if (ok) {
                s.K = 1 + *K;
                s.R1 = 4;
                s.S1 = (s.L + 3) / 4;
                const IntervalReal base = IntervalReal(s.K - 1) * Lr;
                const auto r2 = detail::floor_int(sqrt(base * s.a2 / s.a1));
                const auto s2 = detail::floor_int(sqrt(base * s.a1 / s.a2));
                ok = r2 && s2;
                if (ok) {
                    s.R2 = 1 + *r2;
                    s.S2 = 1 + *s2;
                    return s;
                }
            }
        }
        if (q >= kMaxEscalation) {
            throw IndeterminateError("parameter floors undecided up to " + std::to_string(q.bits()) + " bits");
        }
    }
}

/// v2(L) k - v1(L) sqrt(k) - v0(L); encloses 0 by construction.
inline IntervalReal quadratic_residual(const PipelineState& s) { return s.v2 * s.k - s.v1 * s.sqrt_k - s.v0; }

// ---------------------------------------------------------------------------
// Replay of the written argument

namespace detail {

inline Status decide(const IntervalReal& margin, Strictness strictness)
{
    const int lo = mpfr_sgn(margin.lo());
    const int hi = mpfr_sgn(margin.hi());
    if (strictness == Strictness::strict) {
        return lo > 0 ? Status::verified : (hi <= 0 ? Status::failed : Status::indeterminate);
    }
    return lo >= 0 ? Status::verified : (hi < 0 ? Status::failed : Status::indeterminate);
}

/// claim "lhs < rhs" (or <=).
inline CheckPart less(std::string claim, const IntervalReal& lhs, const IntervalReal& rhs,
                      Strictness strictness = Strictness::strict)
{
    IntervalReal m = rhs - lhs;
    return CheckPart{std::move(claim), decide(m, strictness), std::move(m), {}};
}

/// An exact identity: verified iff the enclosed difference can be zero.
inline CheckPart identity(std::string claim, const IntervalReal& lhs, const IntervalReal& rhs)
{
    IntervalReal m = lhs - rhs;
    const Status s = m.contains_zero() ? Status::verified : Status::failed;
    return CheckPart{std::move(claim), s, std::move(m), {}};
}

inline Check make_check(std::string name, std::vector<CheckPart> parts, std::vector<CheckPart> links,
                        unsigned bits, std::string note = {})
{
    Check c;
    c.name = std::move(name);
    c.status = parts.empty() ? Status::indeterminate : Status::verified;
    bool first = true;
    for (const auto& part : parts) {
        c.status = combine(c.status, part.status);
        if (first || mpfr_cmp(part.margin.lo(), c.margin.lo()) < 0) {
            c.margin = part.margin;
            first = false;
        }
    }
    for (auto& link : links) {
        if (link.status == Status::failed) {
            link.annotation = "paper-chain-discrepancy";
        }
    }
    c.parts = std::move(parts);
    c.links = std::move(links);
    c.bits = bits;
    c.note = std::move(note);
    return c;
}

inline IntervalReal f1_of(const IntervalReal& x)
{
    const IntervalReal one(1);
    const IntervalReal ratio = log(x / (x - one));
    return ratio / IntervalReal(2) + log(x) / (IntervalReal(6) * x * (x - one)) + ratio / (x - one);
}

/// Everything the replay reads, evaluated at one precision.
struct ReplayValues {
    UnitCircleInputs in;
    PipelineState s;
    DerivedQuantities dq;
    IntervalReal D, h, a, bprime;
    IntervalReal L, K, R, S, N;
    IntervalReal eps_N, eps_10000;
    IntervalReal f1_K, f1_600, f2_K;
    IntervalReal log_2pi_sqrt_e;
    IntervalReal theta, theta0, theta1, phi;
    IntervalReal lhs;
    IntervalReal gl;
    IntervalReal T;
    std::optional<IntervalReal> engine_bound;
    unsigned bits = 0;

    explicit ReplayValues(UnitCircleInputs inputs) : in(std::move(inputs)) {}
};

inline ReplayValues replay_values(const PipelineState& integers, const UnitCircleInputs& inputs,
                                  std::optional<IntervalReal> engine_bound, Precision p)
{
    ReplayValues v(inputs.at(p));
    v.s = integers;
    v.engine_bound = std::move(engine_bound);
    v.bits = p.bits();
    fill_continuous(v.s, v.in, p);
    fill_quadratic(v.s);
    const TwoLogInstance inst = TwoLogInstance::unit_circle_shape(v.in.alpha, v.in.b1, v.in.b2);
    const LaurentParams params = integers.params();
    v.dq = derive_quantities(params, inst, p);
    const IntervalReal one(1);
    v.D = IntervalReal::from_rational(v.in.D, p);
    v.h = v.in.h;
    v.a = v.in.a;
    v.bprime = v.in.bprime;
    v.L = IntervalReal::from_int(integers.L, p);
    v.K = IntervalReal::from_int(integers.K, p);
    v.R = IntervalReal::from_int(v.dq.R, p);
    v.S = IntervalReal::from_int(v.dq.S, p);
    v.N = IntervalReal::from_int(v.dq.N, p);
    v.eps_N = epsilon_of_N(static_cast<std::uint64_t>(v.dq.N), p);
    v.eps_10000 = epsilon_of_N(10000, p);
    v.f1_K = f1_of(v.K);
    v.f1_600 = f1_of(IntervalReal(600) + IntervalReal(p));
    v.f2_K = v.f1_K + IntervalReal(3) / IntervalReal(2) + log((one + v.s.delta1) / (IntervalReal(2) * v.s.sqrt_k));
    v.log_2pi_sqrt_e = log(IntervalReal(2) * pi(p)) - one / IntervalReal(2);
    v.theta = v.s.delta0 * (v.K - one) + v.h + v.D * (log(v.K) + v.log_2pi_sqrt_e) - (v.D + one) * log(v.N);
    v.theta0 = log(v.bprime) + v.f2_K - log(v.L) + v.log_2pi_sqrt_e;
    v.theta1 = v.s.delta0 * v.K - log(v.K) - IntervalReal(2) * log(v.L) + log(v.bprime) + v.f2_K + v.log_2pi_sqrt_e;
    v.phi = quadratic_residual(v.s);
    v.gl = v.dq.g * v.L * (v.R * v.s.a1 + v.S * v.s.a2);
    v.lhs = v.K * (v.dq.sigma * v.L - one) * log(v.s.rho) - (v.D + one) * log(v.N) - v.D * (v.K - one) * v.dq.log_b
            - v.gl;
    v.T = -(decimal(constants::threshold, p) * v.a * sqr(v.h));
    return v;
}

inline std::vector<Check> replay_checks(const ReplayValues& v)
{
    const Precision p(v.bits);
    const PipelineState& s = v.s;
    const IntervalReal one(1);
    const IntervalReal two(2);
    const IntervalReal three(3);
    const IntervalReal four(4);
    const IntervalReal& L = v.L;
    const IntervalReal& K = v.K;
    const IntervalReal& a1 = s.a1;
    const IntervalReal& a2 = s.a2;
    const IntervalReal ah2 = v.a * sqr(v.h);
    auto dec = [&](const char* text) { return decimal(text, p); };
    auto ratio_bound = [&](const IntervalReal& x) { return x / (three * s.lambda * (x - s.H)); };
    auto cube_bound = [&](const IntervalReal& x) { return pow(x, 3) / sqr(three * s.lambda * (x - s.H)); };
    std::vector<Check> out;

    // L^2/(L-H) <= (L+-)^2/(L+- - H) = 2 L0.
    {
        const IntervalReal two_L0 = two * s.L0;
        out.push_back(make_check(
            "l_envelope", {less("L^2/(L-H) <= 2 L0", sqr(L) / (L - s.H), two_L0, Strictness::non_strict)},
            {identity("(L+)^2/(L+ - H) = 2 L0", sqr(s.Lplus) / (s.Lplus - s.H), two_L0),
             identity("(L-)^2/(L- - H) = 2 L0", sqr(s.Lminus) / (s.Lminus - s.H), two_L0),
             less("L - 1/2 <= L0", L - one / two, s.L0, Strictness::non_strict),
             less("L0 <= L + 1/2", s.L0, L + one / two, Strictness::non_strict)},
            v.bits));
    }
    // sqrt(k) > v1/v2 = L/(3 lambda (L-H)) > L+/(3 lambda (L+ - H)) > 0.2432.
    {
        const IntervalReal ratio = s.v1 / s.v2;
        out.push_back(make_check("sqrt_k_lower_0.2432", {less("0.2432 < sqrt(k)", dec("0.2432"), s.sqrt_k)},
                                 {less("v1/v2 < sqrt(k)", ratio, s.sqrt_k),
                                  identity("v1/v2 = L/(3 lambda (L-H))", ratio, ratio_bound(L)),
                                  less("L+/(3 lambda (L+ - H)) < L/(3 lambda (L-H))", ratio_bound(s.Lplus),
                                       ratio_bound(L)),
                                  less("0.2432 < L+/(3 lambda (L+ - H))", dec("0.2432"), ratio_bound(s.Lplus))},
                                 v.bits));
    }
    // sqrt(k) < root at L- < 0.279.
    {
        const IntervalReal root_minus =
            quadratic_root(v0_at(s, s.Lminus), v1_at(s.Lminus), v2_at(s, s.Lminus));
        out.push_back(make_check("sqrt_k_upper_0.279", {less("sqrt(k) < 0.279", s.sqrt_k, dec("0.279"))},
                                 {less("sqrt(k) < root of the quadratic at L-", s.sqrt_k, root_minus),
                                  less("root of the quadratic at L- < 0.279", root_minus, dec("0.279"))},
                                 v.bits));
    }
    // H > 7.5, 15 <= L <= L0 + 1/2 < 0.92h, 0.91 < kL < 0.99, K > kLa1a2 > 700.
    {
        const IntervalReal kL = s.k * L;
        out.push_back(make_check(
            "parameter_ranges",
            {less("H > 7.5", dec("7.5"), s.H), less("15 <= L", IntervalReal(15), L, Strictness::non_strict),
             less("L <= L0 + 1/2", L, s.Lplus, Strictness::non_strict),
             less("L0 + 1/2 < 0.92 h", s.Lplus, dec("0.92") * v.h), less("0.91 < kL", dec("0.91"), kL),
             less("kL < 0.99", kL, dec("0.99")), less("K > 700", IntervalReal(700), K)},
            {less("0.91 < (L+)^3/(3 lambda (L+ - H))^2", dec("0.91"), cube_bound(s.Lplus)),
             less("(L+)^3/(3 lambda (L+ - H))^2 < kL", cube_bound(s.Lplus), kL),
             less("kL < (L-)^3/(3 lambda (L- - H))^2", kL, cube_bound(s.Lminus)),
             less("(L-)^3/(3 lambda (L- - H))^2 < 0.99", cube_bound(s.Lminus), dec("0.99")),
             less("k L a1 a2 < K", kL * a1 * a2, K), less("700 < k L a1 a2", IntervalReal(700), kL * a1 * a2)},
            v.bits));
    }
    // sqrt(k) L < 0.239 h via the L0 envelope.
    {
        const IntervalReal sqrtkL = s.sqrt_k * L;
        const IntervalReal inner = IntervalReal(4) / (three * a2) + one / (four * a1) + s.Lplus / (IntervalReal(12) * a1);
        const IntervalReal tail = two * s.L0 / s.lambda * inner;
        const IntervalReal printed_head = two * s.L0 / (three * s.lambda);
        const IntervalReal printed = printed_head + sqrt(sqr(printed_head) + tail);
        const IntervalReal corrected_head = s.L0 / (three * s.lambda);
        const IntervalReal corrected = corrected_head + sqrt(sqr(corrected_head) + tail);
        const IntervalReal target = dec("0.239") * v.h;
        out.push_back(make_check(
            "sqrt_k_L_0.239h", {less("sqrt(k) L < 0.239 h", sqrtkL, target)},
            {less("sqrt(k) L <= 2L0/(3 lambda) + sqrt((2L0/(3 lambda))^2 + ...)", sqrtkL, printed,
                  Strictness::non_strict),
             less("2L0/(3 lambda) + sqrt((2L0/(3 lambda))^2 + ...) < 0.239 h", printed, target),
             less("sqrt(k) L <= L0/(3 lambda) + sqrt((L0/(3 lambda))^2 + ...)", sqrtkL, corrected,
                  Strictness::non_strict),
             less("L0/(3 lambda) + sqrt((L0/(3 lambda))^2 + ...) < 0.239 h", corrected, target)},
            v.bits, "the printed envelope doubles the leading term; the halved form is the one that follows from L^2/(L-H) <= 2L0"));
    }
    // g L (R a1 + S a2) against the successive upper bounds.
    {
        const IntervalReal R1(s.R1);
        const IntervalReal S1(s.S1);
        const IntervalReal Km1 = K - one;
        const IntervalReal L32 = L * sqrt(L);
        const IntervalReal root_r = sqrt(Km1 * L * a2 / a1);
        const IntervalReal root_s = sqrt(Km1 * L * a1 / a2);
        const IntervalReal quoted = L / four * (R1 * a1 + S1 * a2) + L32 * sqrt(Km1 * a1 * a2) / two
                                    - K * sqr(L) / IntervalReal(12) * (a1 / v.S + a2 / v.R);
        const IntervalReal second = L / three * (R1 * a1 + S1 * a2) + L32 * sqrt(Km1 * a1 * a2) / three
                                    - a2 * L * sqr(S1) / (S1 + root_s) - IntervalReal(16) * a1 * L / (four + root_r);
        const IntervalReal third = L / three * (four * a1 + a2 * (L + three) / four)
                                   + s.sqrt_k * sqr(L) * a1 * a2 / three
                                   - a2 * sqr(L) / (IntervalReal(48) + IntervalReal(192) * a1 * s.sqrt_k)
                                   - four * a1 * L / (IntervalReal(12) + three * a2 * L * s.sqrt_k);
        const IntervalReal group = (four / three * a1 + a2 / four) * L;
        const IntervalReal final_bound = (s.sqrt_k / three + one / (IntervalReal(12) * a1)) * a1 * a2 * sqr(L) + group;
        out.push_back(make_check(
            "gl_chain", {less("g L (R a1 + S a2) < final envelope", v.gl, final_bound)},
            {less("g L (R a1 + S a2) <= quoted envelope", v.gl, quoted, Strictness::non_strict),
             less("g L (R a1 + S a2) < second envelope", v.gl, second),
             less("g L (R a1 + S a2) < third envelope", v.gl, third),
             less("third envelope < final envelope", third, final_bound),
             less("g L (R a1 + S a2) < final envelope with the linear group subtracted", v.gl,
                  final_bound - two * group)},
            v.bits, "g L (R a1 + S a2) evaluated exactly from g = 1/4 - N/(12RS)"));
    }
    // (R1-1)/(R2-1) < 3/(sqrt((K-1)La2/a1) - 1) < 0.03 < delta1.
    {
        const IntervalReal lhs = IntervalReal::from_int(s.R1 - 1, p) / IntervalReal(s.R2 - 1);
        const IntervalReal mid = three / (sqrt((K - one) * L * a2 / a1) - one);
        out.push_back(make_check("ratio_R_delta1", {less("(R1-1)/(R2-1) < delta1", lhs, s.delta1)},
                                 {less("(R1-1)/(R2-1) < 3/(sqrt((K-1)L a2/a1) - 1)", lhs, mid),
                                  less("3/(sqrt((K-1)L a2/a1) - 1) < 0.03", mid, dec("0.03")),
                                  less("0.03 < delta1", dec("0.03"), s.delta1)},
                                 v.bits));
    }
    // (S1-1)/(S2-1) < S1/S2 < (1+3/L)/(4 a1 sqrt(k)) sqrt(K/(K-1)) < 0.044.
    {
        const IntervalReal lhs = IntervalReal::from_int(s.S1 - 1, p) / IntervalReal(s.S2 - 1);
        const IntervalReal plain = IntervalReal::from_int(s.S1, p) / IntervalReal(s.S2);
        const IntervalReal envelope = (one + three / L) / (four * a1 * s.sqrt_k) * sqrt(K / (K - one));
        out.push_back(make_check("ratio_S_delta1", {less("(S1-1)/(S2-1) < delta1", lhs, s.delta1)},
                                 {less("(S1-1)/(S2-1) < S1/S2", lhs, plain),
                                  less("S1/S2 < (1+3/L)/(4 a1 sqrt(k)) sqrt(K/(K-1))", plain, envelope),
                                  less("(1+3/L)/(4 a1 sqrt(k)) sqrt(K/(K-1)) < 0.044", envelope, dec("0.044"))},
                                 v.bits));
    }
    out.push_back(make_check("f1_at_600", {less("f1(600) < 0.00084", v.f1_600, dec("0.00084"))},
                             {less("K > 600", IntervalReal(600), K), less("f1(K) < f1(600)", v.f1_K, v.f1_600)},
                             v.bits));
    out.push_back(make_check("f2_bound", {less("f2(K) < 2.96", v.f2_K, dec(constants::shift))}, {}, v.bits));
    // log b < (h - delta0)/D - log(2 pi K/sqrt(e))/(K-1).
    {
        const IntervalReal correction = (log(two * pi(p) * K) - one / two) / (K - one);
        const IntervalReal target = (v.h - s.delta0) / v.D - correction;
        const IntervalReal intermediate = log(v.bprime) + three / two
                                          + log((one + s.delta1) / (two * s.sqrt_k)) + v.f1_K - correction;
        out.push_back(make_check("log_b_bound", {less("log b < (h - delta0)/D - log(2 pi K/sqrt(e))/(K-1)", v.dq.log_b, target)},
                                 {less("log b < log b' + 3/2 + log((1+delta1)/(2 sqrt(k))) + f1(K) - ...", v.dq.log_b,
                                       intermediate),
                                  less("log b' + f2(K) <= (h - delta0)/D", log(v.bprime) + v.f2_K,
                                       (v.h - s.delta0) / v.D, Strictness::non_strict)},
                                 v.bits));
    }
    // Theta against its decomposition.
    {
        const IntervalReal decomposition = (v.D - one) * v.theta0 + v.theta1;
        const IntervalReal lower_display = v.phi * L * a1 * a2 + v.theta;
        std::vector<CheckPart> links = {
            less("left side of the main inequality >= Phi L a1 a2 + Theta", lower_display, v.lhs,
                 Strictness::non_strict),
            identity("Phi = 0", v.phi, IntervalReal(p))};
        if (v.in.branch == HeightBranch::logarithmic) {
            links.push_back(identity("Theta = (D-1) Theta0 + Theta1", v.theta, decomposition));
            out.push_back(make_check(
                "theta_decomposition",
                {less("Theta >= (D-1) Theta0 + Theta1", decomposition, v.theta, Strictness::non_strict)},
                std::move(links), v.bits,
                "Theta - (D-1) Theta0 - Theta1 = D (2.96 - f2(K)) >= 0, so the decomposition is a lower bound"));
        } else {
            out.push_back(make_check("theta_decomposition", {less("Theta > eps(N)", v.eps_N, v.theta)},
                                     std::move(links), v.bits,
                                     std::string("height branch ") + to_string(v.in.branch)
                                         + " active; Theta compared with eps(N) directly"));
        }
    }
    // Theta0 > log(4h) + f2(K) + log(2 pi/sqrt(e)) > 0.
    {
        const IntervalReal envelope = log(four * v.h) + v.f2_K + v.log_2pi_sqrt_e;
        out.push_back(make_check("theta0_positive", {less("Theta0 > 0", IntervalReal(p), v.theta0)},
                                 {less("Theta0 > log(4h) + f2(K) + log(2 pi/sqrt(e))", envelope, v.theta0),
                                  less("log(4h) + f2(K) + log(2 pi/sqrt(e)) > 0", IntervalReal(p), envelope),
                                  less("b' > 4 h^2", four * sqr(v.h), v.bprime), less("L < h", L, v.h)},
                                 v.bits));
    }
    // Theta1 > log 4 + delta0 K - log K + f2 + log(2 pi/sqrt(e)) > delta0 K - log K > 0.004.
    {
        const IntervalReal core = s.delta0 * K - log(K);
        const IntervalReal envelope = log(four) + core + v.f2_K + v.log_2pi_sqrt_e;
        out.push_back(make_check("theta1_above_0.004", {less("Theta1 > 0.004", dec("0.004"), v.theta1)},
                                 {less("Theta1 > log 4 + delta0 K - log K + f2(K) + log(2 pi/sqrt(e))", envelope,
                                       v.theta1),
                                  less("log 4 + ... > delta0 K - log K", core, envelope),
                                  less("delta0 K - log K > 0.004", dec("0.004"), core)},
                                 v.bits));
    }
    out.push_back(make_check("epsilon_below_0.004", {less("eps(N) < 0.004", v.eps_N, dec("0.004"))},
                             {less("N > 10000", IntervalReal(10000), v.N),
                              less("eps(N) < eps(10000)", v.eps_N, v.eps_10000),
                              less("eps(10000) < 0.004", v.eps_10000, dec("0.004"))},
                             v.bits));
    // KL < L(1 + kLa1a2) = kL^2 a1 a2 (1 + 1/(kLa1a2)) < 1.00126 kL^2 a1 a2.
    {
        const IntervalReal q = s.k * L * a1 * a2;
        const IntervalReal KL = K * L;
        const IntervalReal target = dec("1.00126") * s.k * sqr(L) * a1 * a2;
        out.push_back(make_check("KL_factor_1.00126", {less("KL < 1.00126 k L^2 a1 a2", KL, target)},
                                 {less("KL < L(1 + k L a1 a2)", KL, L * (one + q)),
                                  less("1/(k L a1 a2) < 0.00126", one / q, dec("0.00126"))},
                                 v.bits));
    }
    {
        const IntervalReal lhs = s.mu * K * L * log(s.rho);
        const IntervalReal target = dec(constants::engine_coefficient) * ah2;
        const IntervalReal envelope =
            s.mu * dec("1.00126") * sqr(dec("0.239") * v.h) * a1 * log(s.rho) * a2;
        out.push_back(make_check("muKLlogrho_2.7701", {less("mu K L log rho < 2.7701 a h^2", lhs, target)},
                                 {less("mu 1.00126 (0.239h)^2 a1 a2 log rho < 2.7701 a h^2", envelope, target)},
                                 v.bits));
    }
    {
        const IntervalReal sqrtkL = s.sqrt_k * L;
        const IntervalReal first = (L + three) / four + sqrtkL * a2;
        const IntervalReal second = dec("0.75") + dec("0.92") * v.h + dec("0.257") * v.h * a2;
        const IntervalReal target = dec("0.291") * v.h * a2;
        out.push_back(make_check("R_bound_0.291", {less("R < 0.291 h a2", v.R, target)},
                                 {less("R < (L+3)/4 + sqrt(k) L a2", v.R, first),
                                  less("(L+3)/4 + sqrt(k) L a2 < 0.75 + 0.92h + 0.257 h a2", first, second),
                                  less("0.75 + 0.92h + 0.257 h a2 < 0.291 h a2", second, target),
                                  less("0.291 h a2 <= 0.291 a h", target, dec("0.291") * v.a * v.h,
                                       Strictness::non_strict)},
                                 v.bits));
    }
    {
        const IntervalReal first = four + s.sqrt_k * L * a1;
        const IntervalReal second = four + dec("0.257") * v.h * a1;
        const IntervalReal target = dec("0.266") * v.a * v.h;
        out.push_back(make_check("S_bound_0.266", {less("S < 0.266 a h", v.S, target)},
                                 {less("S < 4 + sqrt(k) L a1", v.S, first),
                                  less("4 + sqrt(k) L a1 < 4 + 0.257 h a1", first, second),
                                  less("4 + 0.257 h a1 < 0.266 a h", second, target)},
                                 v.bits));
    }
    out.push_back(make_check("logah2_0.0011", {less("log(a h^2)/(a h^2) < 0.0011", log(ah2) / ah2, dec("0.0011"))}, {},
                             v.bits));
    out.push_back(make_check("RLSL_0.268",
                             {less("RL < 0.268 a h^2", v.R * L, dec("0.268") * ah2),
                              less("SL < 0.268 a h^2", v.S * L, dec("0.268") * ah2)},
                             {}, v.bits));
    // e^(-2.749 a h^2) + log(0.268 a h^2) < 0.0003 a h^2.
    {
        const IntervalReal written = exp(-(dec("2.749") * ah2)) + log(dec("0.268") * ah2);
        const IntervalReal lam = exp(v.T);
        const IntervalReal actual = max(L * v.R * lam + log(L * v.R), L * v.S * lam + log(L * v.S));
        const IntervalReal target = dec(constants::slack_coefficient) * ah2;
        out.push_back(make_check("slack_0.0003",
                                 {less("e^(-2.749 a h^2) + log(0.268 a h^2) < 0.0003 a h^2", written, target)},
                                 {less("max{LR|Lambda| + log LR, LS|Lambda| + log LS} < 0.0003 a h^2", actual, target)},
                                 v.bits));
    }
    {
        // Decimal arithmetic, decided exactly.
        const mpq_class exact_sum =
            parse_decimal(constants::engine_coefficient) + parse_decimal(constants::slack_coefficient);
        std::vector<CheckPart> links;
        const IntervalReal actual = s.mu * K * L * log(s.rho)
                                    + max(L * v.R * exp(v.T) + log(L * v.R), L * v.S * exp(v.T) + log(L * v.S));
        links.push_back(less("mu K L log rho + actual slack < 2.7704 a h^2", actual,
                             dec(constants::final_coefficient) * ah2));
        if (v.engine_bound) {
            links.push_back(less("engine bound > -2.7704 a h^2", -(dec(constants::final_coefficient) * ah2),
                                 *v.engine_bound));
        }
        out.push_back(make_check("final_2.7704",
                                 {less("2.7701 + 0.0003 <= 2.7704", IntervalReal(p),
                                       IntervalReal::from_rational(
                                           parse_decimal(constants::final_coefficient) - exact_sum, p),
                                       Strictness::non_strict)},
                                 std::move(links), v.bits));
    }
    return out;
}

inline bool undecided(const Check& c)
{
    for (const auto& part : c.parts) {
        if (part.status == Status::indeterminate) {
            return true;
        }
    }
    return false;
}

}  // namespace detail

/// Every numeric step of the main-path argument, with certified margins.
/// Checks whose headline straddles are recomputed at doubled precision.
inline std::vector<Check> replay_inequalities(const PipelineState& state, const UnitCircleInputs& inputs,
                                              Precision p = kDefaultPrecision,
                                              std::optional<IntervalReal> engine_bound = std::nullopt)
{
    std::vector<Check> checks = detail::replay_checks(detail::replay_values(state, inputs, engine_bound, p));
    for (Precision q = p; q < kMaxEscalation;) {
        if (std::none_of(checks.begin(), checks.end(), detail::undecided)) {
            break;
        }
        q = q.doubled();
        const std::vector<Check> finer = detail::replay_checks(detail::replay_values(state, inputs, engine_bound, q));
        for (std::size_t i = 0; i < checks.size(); ++i) {
            if (detail::undecided(checks[i])) {
                checks[i] = finer[i];
            }
        }
    }
    return checks;
}

/// -2.7704 a h^2.
inline IntervalReal final_bound(const UnitCircleInputs& in, Precision p)
{
    return -(decimal(constants::final_coefficient, p) * in.a * sqr(in.h));
}

namespace detail {

inline void fill_common(BoundCertificate& cert, const UnitCircleInputs& in, Precision p)
{
    cert.statement = "log|Lambda_1|";
    cert.b1 = in.b1;
    cert.b2 = in.b2;
    cert.D = in.D;
    cert.a = in.a;
    cert.h = in.h;
    cert.precision_bits = p.bits();
    cert.trusted = in.alpha.trusted();
    cert.metadata.push_back({"h_alpha", in.h_alpha, "absolute logarithmic height of alpha"});
    cert.metadata.push_back({"bprime", in.bprime, "b1/a + b2/(9.05 pi)"});
    cert.metadata.push_back({"height_branch", std::nullopt, to_string(in.branch)});
}

}  // namespace detail

/// Elementary bound for b' <= 4h^2: log|Lambda_1| >= -b' D h(alpha) - D log 2.
inline BoundCertificate liouville_fallback(const UnitCircleInputs& in, Precision p = kDefaultPrecision)
{
    const auto main_applies = certify_positive(
        p, [&](Precision q) { const auto v = in.at(q); return v.bprime - IntervalReal(4) * sqr(v.h); });
    if (main_applies.status == Status::verified) {
        throw std::invalid_argument("the elementary bound is only used when b' <= 4 h^2");
    }
    BoundCertificate cert;
    cert.path = "liouville";
    detail::fill_common(cert, in, p);
    cert.trail.push_back("b' <= 4 h^2: elementary lower bound for a nonzero algebraic number");
    auto margin_at = [&](Precision q) {
        const auto v = in.at(q);
        const IntervalReal D = IntervalReal::from_rational(v.D, q);
        return -(v.bprime * D * v.h_alpha) - D * log(IntervalReal(2) + IntervalReal(q)) - final_bound(v, q);
    };
    const Certified chain = certify_positive(p, margin_at);
    const IntervalReal D = IntervalReal::from_rational(in.D, p);
    const IntervalReal intermediate = -(in.bprime * D * in.h_alpha) - D * log(IntervalReal(2) + IntervalReal(p));
    const IntervalReal ah2 = in.a * sqr(in.h);
    cert.metadata.push_back({"liouville_intermediate", intermediate, "-b' D h(alpha) - D log 2"});
    std::vector<CheckPart> parts = {
        CheckPart{"-b' D h(alpha) - D log 2 > -2.7704 a h^2", chain.status, chain.margin, {}}};
    std::vector<CheckPart> links = {
        detail::less("b' D h(alpha) < 2 a h^2", in.bprime * D * in.h_alpha, IntervalReal(2) * ah2),
        detail::less("-2 a h^2 - D log 2 > -2.7704 a h^2", -(decimal(constants::final_coefficient, p) * ah2),
                     -(IntervalReal(2) * ah2) - D * log(IntervalReal(2) + IntervalReal(p)))};
    cert.checks.push_back(detail::make_check("liouville_chain", std::move(parts), std::move(links), chain.bits));
    if (chain.status == Status::verified) {
        cert.bound = final_bound(in, p);
    } else {
        cert.trail.push_back("elementary bound does not reach -2.7704 a h^2: no bound emitted");
    }
    return cert;
}

/// Main path: build parameters, verify the three hypotheses, conclude with
/// T = -2.75 a h^2 and confirm the result exceeds -2.7704 a h^2.
/// With `forced`, runs even when b' > 4 h^2 is not certified.
inline BoundCertificate main_path(const UnitCircleInputs& in, Precision p = kDefaultPrecision, bool forced = false)
{
    BoundCertificate cert;
    cert.path = "main";
    detail::fill_common(cert, in, p);
    cert.trail.push_back(forced ? "main path forced without b' > 4 h^2" : "b' > 4 h^2 (certified)");
    const PipelineState state = build_parameters(in, p);
    const LaurentParams params = state.params();
    cert.params = params;
    const TwoLogInstance inst = TwoLogInstance::unit_circle_shape(in.alpha, in.b1, in.b2);
    const HeightParameter a1 = HeightParameter::minimal();
    const UnitCircleInputs captured = in;
    const HeightParameter a2 = HeightParameter::expression(
        [captured](Precision q) { return captured.at(q).a; }, "9.05 pi + 2 D h(alpha)");
    cert.report = verify_conditions(params, inst, a1, a2, p);
    const IntervalReal T = -(decimal(constants::threshold, p) * in.a * sqr(in.h));
    const BoundCertificate engine = conclude_bound(params, inst, cert.report, p, T);
    cert.trail.push_back("alpha1 = i, alpha2 = alpha, D = [Q(alpha):Q]/2");
    cert.trail.push_back("a1 = rho pi/2 (height condition with equality), a2 = a");
    cert.trail.push_back("-log alpha_i read as -log|alpha_i|");
    cert.trail.push_back("L = floor(L0 + 1/2), the integer nearest L0");
    for (const auto& t : engine.trail) {
        cert.trail.push_back(t);
    }
    for (const auto& m : engine.metadata) {
        cert.metadata.push_back(m);
    }
    cert.metadata.push_back({"quadratic_residual", quadratic_residual(state), "v2 k - v1 sqrt(k) - v0"});
    cert.checks = replay_inequalities(state, in, p, engine.bound);
    if (!engine.bound) {
        return cert;
    }
    cert.metadata.push_back({"engine_bound", *engine.bound, "log|Lambda_1| > lower end"});
    const Certified reaches = certify_positive(p, [&](Precision q) {
        const auto v = in.at(q);
        return engine.bound->with_precision(q) - final_bound(v, q);
    });
    if (reaches.status == Status::verified) {
        cert.bound = final_bound(in, p);
    } else {
        cert.trail.push_back("engine bound does not reach -2.7704 a h^2: no bound emitted");
    }
    return cert;
}

/// log|Lambda_1| > -2.7704 a h^2 for Lambda_1 = b2 log alpha - b1 pi i/2.
inline BoundCertificate unit_circle_bound(const AlgebraicNumber& alpha, const mpz_class& b1, const mpz_class& b2,
                                          Precision p = kDefaultPrecision)
{
    const auto [c1, c2] = gcd_reduce(b1, b2);
    const UnitCircleInputs in = compute_inputs(alpha, c1, c2, p);
    const Certified decision = certify_positive(p, [&](Precision q) {
        const auto v = in.at(q);
        return v.bprime - IntervalReal(4) * sqr(v.h);
    });
    BoundCertificate cert;
    if (decision.status == Status::verified) {
        cert = main_path(in, p);
    } else if (decision.status == Status::failed) {
        cert = liouville_fallback(in, p);
    } else {
        cert.path = "undecided";
        detail::fill_common(cert, in, p);
        cert.trail.push_back("cannot decide b' > 4 h^2");
    }
    if (c1 != b1) {
        cert.trail.insert(cert.trail.begin(), "gcd reduced: (" + b1.get_str() + ", " + b2.get_str() + ") -> ("
                                                  + c1.get_str() + ", " + c2.get_str() + ")");
    }
    return cert;
}

/// log|arg(alpha^n)| > -2.7704 a h^2 with b2 = n and b1 the integer nearest
/// 2n|arg alpha|/pi.
inline BoundCertificate arg_power_bound(const AlgebraicNumber& alpha, const mpz_class& n,
                                        Precision p = kDefaultPrecision)
{
    if (n < 1) {
        throw RejectionError("n must be a positive integer");
    }
    if (!alpha.has_unit_modulus()) {
        throw RejectionError("not unit-modulus: |alpha| != 1");
    }
    if (alpha.is_root_of_unity()) {
        throw RejectionError("alpha is a root of unity");
    }
    // arg alpha / pi is irrational here, so 2n|arg alpha|/pi is never a
    // half-integer and escalation terminates.
    const Precision limit(std::max(65536u, p.bits()));
    for (Precision q = p;; q = q.doubled()) {
        const IntervalReal theta = alpha.principal_argument(q);
        const bool negative = theta.certainly_negative();
        if (negative || theta.certainly_positive()) {
            const IntervalReal t = IntervalReal(2) * IntervalReal::from_integer(n, q) * abs(theta) / pi(q);
            if (auto b1 = certified_floor(t + IntervalReal(1) / IntervalReal(2))) {
                if (*b1 == 0) {
                    throw RejectionError("b1 = round(2n|arg alpha|/pi) is 0; the bound needs a positive b1");
                }
                const AlgebraicNumber chosen = negative ? alpha.conjugate() : alpha;
                BoundCertificate cert = unit_circle_bound(chosen, *b1, n, p);
                cert.statement = "log|arg(alpha^n)|";
                cert.trail.insert(cert.trail.begin(), "|arg(alpha^n)| >= |n arg alpha - b1 pi/2| = |Lambda_1|");
                cert.trail.insert(cert.trail.begin(), "b1 = round(2n|arg alpha|/pi) = " + b1->get_str()
                                                          + " (certified; no tie possible)");
                if (negative) {
                    cert.trail.insert(cert.trail.begin(), "arg alpha < 0: replaced alpha by its conjugate");
                }
                cert.metadata.push_back({"two_n_arg_over_pi", t, "2n|arg alpha|/pi"});
                return cert;
            }
        }
        if (q >= limit) {
            throw IndeterminateError("cannot round 2n|arg alpha|/pi");
        }
    }
}

/// The earlier bound's formula, evaluated for comparison, reading its
/// conclusion on the log scale.
struct LmnComparison {
    IntervalReal a;
    IntervalReal h;
    IntervalReal value;
};

inline LmnComparison lmn_comparison(const AlgebraicNumber& alpha, const mpz_class& b1, const mpz_class& b2,
                                    Precision p = kDefaultPrecision)
{
    const IntervalReal D = IntervalReal::from_rational(mpq_class(alpha.degree(), 2), p);
    const IntervalReal two(2);
    const IntervalReal a = max(IntervalReal(20), decimal("10.98", p) * alpha.abs_log(p)
                                                     + two * D * alpha.absolute_log_height(p));
    const IntervalReal inner = IntervalReal::from_integer(b1, p) / (two * a)
                               + IntervalReal::from_integer(b2, p) / decimal("68.9", p);
    const IntervalReal h = max(max(IntervalReal(17), sqrt(D) / IntervalReal(10)),
                               D * (log(inner) + decimal("2.35", p)) + decimal("5.03", p));
    return {a, h, -(decimal("8.87", p) * a * sqr(h))};
}

}  // namespace twolog
