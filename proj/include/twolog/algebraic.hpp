#pragma once

// Algebraic numbers given by a minimal polynomial and a root selector.

#include "twolog/roots.hpp"

#include <functional>
#include <numeric>
#include <string>
#include <vector>

namespace twolog {

/// The root hint does not clearly single out one root.
class AmbiguousRootError : public std::invalid_argument {
public:
    AmbiguousRootError(const std::string& what, std::vector<ComplexEnclosure> candidates)
        : std::invalid_argument(what), candidates_(std::move(candidates))
    {
    }
    const std::vector<ComplexEnclosure>& candidates() const noexcept { return candidates_; }

private:
    std::vector<ComplexEnclosure> candidates_;
};

class ReducibleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Largest degree for which irreducibility is checked by default.
inline constexpr int kIrreducibilityDegreeLimit = 16;

namespace detail {

inline unsigned long euler_phi(unsigned long m)
{
    unsigned long result = m;
    for (unsigned long q = 2; q * q <= m; ++q) {
        if (m % q == 0) {
            while (m % q == 0) {
                m /= q;
            }
            result -= result / q;
        }
    }
    if (m > 1) {
        result -= result / m;
    }
    return result;
}

/// Index j of the root inside `image`, provided exactly one box meets it.
inline std::optional<std::size_t> locate(const RootIsolation& iso, const ComplexEnclosure& image)
{
    return iso.unique_meeting(image);
}

/// For a self-reciprocal f: is root i exactly on the unit circle? That holds
/// iff conj(alpha_i) and 1/alpha_i are the same root. nullopt if the boxes are
/// too coarse to tell.
inline std::optional<bool> on_unit_circle(const RootIsolation& iso, std::size_t i)
{
    const ComplexEnclosure& box = iso.boxes[i];
    if (box.contains_zero()) {
        return std::nullopt;
    }
    const auto j = locate(iso, conj(box));
    const auto k = locate(iso, inverse(box));
    if (!j || !k) {
        return std::nullopt;
    }
    return *j == *k;
}

/// Is root i real? For real f, iff conj(alpha_i) is alpha_i.
inline std::optional<bool> is_real_root(const RootIsolation& iso, std::size_t i)
{
    const auto j = locate(iso, conj(iso.boxes[i]));
    if (!j) {
        return std::nullopt;
    }
    return *j == i;
}

/// The unique integer in x, or nullopt; sets `wide` when x holds several.
inline std::optional<mpz_class> unique_integer(const IntervalReal& x, bool& wide)
{
    mpz_class lo;
    mpz_class hi;
    mpfr_get_z(lo.get_mpz_t(), x.lo(), MPFR_RNDU);
    mpfr_get_z(hi.get_mpz_t(), x.hi(), MPFR_RNDD);
    if (lo > hi) {
        return std::nullopt;
    }
    if (lo < hi) {
        wide = true;
        return std::nullopt;
    }
    return lo;
}

}  // namespace detail

/// Decides irreducibility over Q for f of degree at most `degree_limit`.
///
/// Any factor g of f has lc(f)/lc(g) * g = lc(f) * prod_{S}(x - alpha) for a
/// subset S of the roots. Every subset of size <= deg/2 is enclosed; when all
/// coefficients pin down a unique integer the candidate is tested by exact
/// division.
inline bool is_irreducible(const ZPoly& f_in, Precision p = kDefaultPrecision,
                           int degree_limit = kIrreducibilityDegreeLimit)
{
    ZPoly f = poly::primitive_part(f_in);
    const int d = poly::degree(f);
    if (d < 1) {
        throw std::invalid_argument("irreducibility of a constant");
    }
    if (d == 1) {
        return true;
    }
    if (poly::degree(poly::gcd(f, poly::derivative(f))) > 0) {
        return false;
    }
    if (d > degree_limit) {
        throw std::invalid_argument("irreducibility check is limited to degree " + std::to_string(degree_limit)
                                    + "; mark the polynomial as trusted to skip it");
    }
    for (Precision q = p;; q = q.doubled()) {
        const RootIsolation iso = isolate_roots(f, q);
        bool wide = false;
        bool reducible = false;
        std::vector<ComplexEnclosure> product;
        product.push_back({IntervalReal::from_integer(f.back(), q), IntervalReal(q)});
        std::function<void(std::size_t)> extend = [&](std::size_t start) {
            for (std::size_t i = start; i < iso.boxes.size() && !reducible; ++i) {
                // product <- product * (x - alpha_i)
                std::vector<ComplexEnclosure> next(product.size() + 1, ComplexEnclosure{IntervalReal(q), IntervalReal(q)});
                for (std::size_t c = 0; c < product.size(); ++c) {
                    next[c + 1] = next[c + 1] + product[c];
                    next[c] = next[c] - product[c] * iso.boxes[i];
                }
                std::vector<ComplexEnclosure> saved = std::move(product);
                product = std::move(next);
                const int size = static_cast<int>(product.size()) - 1;
                bool candidate_ok = true;
                ZPoly candidate;
                for (const auto& c : product) {
                    if (!c.im.contains_zero()) {
                        candidate_ok = false;
                        break;
                    }
                    auto v = detail::unique_integer(c.re, wide);
                    if (!v) {
                        candidate_ok = false;
                        break;
                    }
                    candidate.push_back(*v);
                }
                if (candidate_ok) {
                    ZPoly g = poly::primitive_part(candidate);
                    if (poly::degree(g) >= 1 && poly::degree(g) < d && poly::divides(g, f)) {
                        reducible = true;
                    }
                }
                if (2 * (size + 1) <= d) {
                    extend(i + 1);
                }
                product = std::move(saved);
            }
        };
        extend(0);
        if (reducible) {
            return false;
        }
        if (!wide) {
            return true;
        }
        if (q >= Precision(8192)) {
            throw IndeterminateError("irreducibility undecided up to 8192 bits");
        }
    }
}

/// A root of an irreducible integer polynomial, selected by a rational hint
/// and a radius whose disk contains exactly that root.
class AlgebraicNumber {
public:
    /// Certifies the selection. Without a radius, the hint must be less than
    /// half as far from its nearest root as from every other root.
    AlgebraicNumber(IntegerPolynomial minpoly, mpq_class hint_re, mpq_class hint_im,
                    std::optional<mpq_class> radius = std::nullopt, bool trusted = false)
        : f_(std::move(minpoly)), re_(std::move(hint_re)), im_(std::move(hint_im)), trusted_(trusted)
    {
        re_.canonicalize();
        im_.canonicalize();
        if (!trusted_ && !is_irreducible(f_.coefficients())) {
            throw ReducibleError("polynomial " + f_.to_string() + " is reducible over Q");
        }
        if (radius) {
            if (*radius <= 0) {
                throw std::invalid_argument("isolation radius must be positive");
            }
            radius_ = *radius;
            certify_given_radius();
        } else {
            choose_radius();
        }
    }

    /// Parses "c0,c1,..." and "re,im".
    static AlgebraicNumber parse(std::string_view minpoly, std::string_view root, bool trusted = false)
    {
        const auto comma = root.find(',');
        if (comma == std::string_view::npos) {
            throw std::invalid_argument("root hint must be 're,im'");
        }
        auto strip = [](std::string_view s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
                s.remove_prefix(1);
            }
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
                s.remove_suffix(1);
            }
            return s;
        };
        return AlgebraicNumber(IntegerPolynomial::parse(minpoly), parse_decimal(strip(root.substr(0, comma))),
                               parse_decimal(strip(root.substr(comma + 1))), std::nullopt, trusted);
    }

    static AlgebraicNumber rational(const mpq_class& q)
    {
        mpq_class v = q;
        v.canonicalize();
        return AlgebraicNumber(IntegerPolynomial(ZPoly{-v.get_num(), v.get_den()}), v, 0);
    }

    static AlgebraicNumber imaginary_unit() { return AlgebraicNumber(IntegerPolynomial(ZPoly{1, 0, 1}), 0, 1); }

    const IntegerPolynomial& minpoly() const noexcept { return f_; }
    int degree() const { return f_.degree(); }
    const mpq_class& hint_re() const noexcept { return re_; }
    const mpq_class& hint_im() const noexcept { return im_; }
    const mpq_class& isolation_radius() const noexcept { return radius_; }
    /// Irreducibility was assumed, not checked.
    bool trusted() const noexcept { return trusted_; }

    /// The complex conjugate root.
    AlgebraicNumber conjugate() const { return AlgebraicNumber(f_, re_, -im_, radius_, true, trusted_); }

    /// Enclosures of all conjugates, pairwise disjoint.
    std::vector<ComplexEnclosure> conjugate_enclosures(Precision p = kDefaultPrecision) const
    {
        return isolate_roots(f_.coefficients(), p).boxes;
    }

    /// Enclosure of this root.
    ComplexEnclosure enclosure(Precision p = kDefaultPrecision) const
    {
        auto [iso, index] = select(p);
        return iso.boxes[index];
    }

    /// h(alpha) = (log|a| + sum log max(1, |alpha_i|)) / d.
    IntervalReal absolute_log_height(Precision p = kDefaultPrecision) const
    {
        const bool reciprocal = f_.is_self_reciprocal();
        for (Precision q = p;; q = q.doubled()) {
            const RootIsolation iso = isolate_roots(f_.coefficients(), q);
            IntervalReal sum = log(abs(IntervalReal::from_integer(f_.leading(), q)));
            bool resolved = true;
            for (std::size_t i = 0; i < iso.boxes.size() && resolved; ++i) {
                const IntervalReal m = abs(iso.boxes[i]);
                if (mpfr_cmp_ui(m.hi(), 1) <= 0) {
                    continue;
                }
                if (mpfr_cmp_ui(m.lo(), 1) >= 0) {
                    sum += log(m);
                    continue;
                }
                if (reciprocal && detail::on_unit_circle(iso, i).value_or(false)) {
                    continue;
                }
                resolved = false;
            }
            if (resolved) {
                IntervalReal h = sum / IntervalReal(degree());
                if (mpfr_sgn(h.lo()) < 0) {
                    mpfr_set_zero(h.lo_mut(), 1);
                }
                return h;
            }
            if (q >= kMaxEscalation) {
                throw IndeterminateError("a conjugate of " + f_.to_string() + " straddles the unit circle");
            }
        }
    }

    /// |alpha| = 1 exactly.
    bool has_unit_modulus() const
    {
        if (!f_.is_self_reciprocal()) {
            return false;
        }
        for (Precision q = kDefaultPrecision;; q = q.doubled()) {
            auto [iso, index] = select(q);
            if (auto on = detail::on_unit_circle(iso, index)) {
                return *on;
            }
            if (q >= kMaxEscalation) {
                throw IndeterminateError("cannot decide whether the root of " + f_.to_string()
                                         + " lies on the unit circle");
            }
        }
    }

    /// alpha^m = 1 for some m >= 1: the minimal polynomial is cyclotomic.
    bool is_root_of_unity() const
    {
        const ZPoly& c = f_.coefficients();
        if (abs(c.back()) != 1 || abs(c.front()) != 1) {
            return false;
        }
        const unsigned long d = static_cast<unsigned long>(degree());
        ZPoly one(d, 0);
        one[0] = 1;
        // phi(m) >= sqrt(m/2), so a root of unity of degree d has order <= 2d^2.
        for (unsigned long m = 1; m <= 2 * d * d; ++m) {
            if (detail::euler_phi(m) == d && poly::power_of_x_mod(m, c) == one) {
                return true;
            }
        }
        return false;
    }

    /// Principal argument in (-pi, pi]; exactly 0 or pi for real roots.
    IntervalReal principal_argument(Precision p = kDefaultPrecision) const
    {
        for (Precision q = p;; q = q.doubled()) {
            auto [iso, index] = select(q);
            const ComplexEnclosure& box = iso.boxes[index];
            const auto real = detail::is_real_root(iso, index);
            if (real && *real) {
                if (box.re.certainly_positive()) {
                    return IntervalReal(q);
                }
                if (box.re.certainly_negative()) {
                    return pi(q);
                }
                throw DomainError("argument of zero");
            }
            const bool straddles_cut = mpfr_sgn(box.re.lo()) < 0 && box.im.contains_zero();
            if (real && !straddles_cut && !box.contains_zero()) {
                return arg(box);
            }
            if (q >= Precision(std::max(8192u, p.bits()))) {
                throw IndeterminateError("argument of the selected root straddles the branch cut");
            }
        }
    }

    /// log|alpha|; exactly 0 on the unit circle.
    IntervalReal log_modulus(Precision p = kDefaultPrecision) const
    {
        if (has_unit_modulus()) {
            return IntervalReal(p);
        }
        for (Precision q = p;; q = q.doubled()) {
            const ComplexEnclosure box = enclosure(q);
            if (!box.contains_zero()) {
                return log(abs(box));
            }
            if (q >= kMaxEscalation) {
                throw DomainError("log of zero");
            }
        }
    }

    /// |log alpha| for the principal logarithm.
    IntervalReal abs_log(Precision p = kDefaultPrecision) const
    {
        const IntervalReal a = principal_argument(p);
        const IntervalReal m = log_modulus(p);
        if (m.is_point() && mpfr_zero_p(m.lo())) {
            return abs(a);
        }
        return sqrt(sqr(m) + sqr(a));
    }

    std::string to_string() const
    {
        return "root of [" + f_.to_string() + "] near (" + re_.get_str() + ", " + im_.get_str() + ")";
    }

private:
    // Internal constructor for values derived from an already certified number.
    AlgebraicNumber(IntegerPolynomial f, mpq_class re, mpq_class im, mpq_class radius, bool, bool trusted)
        : f_(std::move(f)), re_(std::move(re)), im_(std::move(im)), radius_(std::move(radius)), trusted_(trusted)
    {
    }

    IntervalReal distance(const ComplexEnclosure& box, Precision q) const
    {
        const ComplexEnclosure hint{IntervalReal::from_rational(re_, q), IntervalReal::from_rational(im_, q)};
        return abs(box - hint);
    }

    struct Selection {
        RootIsolation iso;
        std::size_t index;
    };

    Selection select(Precision p) const
    {
        for (Precision q = p;; q = q.doubled()) {
            RootIsolation iso = isolate_roots(f_.coefficients(), q);
            const IntervalReal r = IntervalReal::from_rational(radius_, q);
            std::optional<std::size_t> hit;
            bool ambiguous = false;
            for (std::size_t i = 0; i < iso.boxes.size(); ++i) {
                if (mpfr_cmp(distance(iso.boxes[i], q).lo(), r.hi()) <= 0) {
                    ambiguous = ambiguous || hit.has_value();
                    hit = i;
                }
            }
            if (hit && !ambiguous) {
                return {std::move(iso), *hit};
            }
            if (q >= Precision(8192)) {
                throw IndeterminateError("cannot single out the selected root of " + f_.to_string());
            }
        }
    }

    void certify_given_radius()
    {
        for (Precision q = kDefaultPrecision;; q = q.doubled()) {
            const RootIsolation iso = isolate_roots(f_.coefficients(), q);
            const IntervalReal r = IntervalReal::from_rational(radius_, q);
            int inside = 0;
            int undecided = 0;
            for (const auto& box : iso.boxes) {
                const IntervalReal dist = distance(box, q);
                if (mpfr_cmp(dist.hi(), r.lo()) < 0) {
                    ++inside;
                } else if (mpfr_cmp(dist.lo(), r.hi()) <= 0) {
                    ++undecided;
                }
            }
            if (undecided == 0) {
                if (inside != 1) {
                    throw AmbiguousRootError("the disk around the hint holds " + std::to_string(inside) + " roots",
                                             iso.boxes);
                }
                return;
            }
            if (q >= kMaxEscalation) {
                throw AmbiguousRootError("a root lies on the boundary of the isolation disk", iso.boxes);
            }
        }
    }

    void choose_radius()
    {
        for (Precision q = kDefaultPrecision;; q = q.doubled()) {
            const RootIsolation iso = isolate_roots(f_.coefficients(), q);
            std::vector<IntervalReal> dist;
            for (const auto& box : iso.boxes) {
                dist.push_back(distance(box, q));
            }
            std::vector<std::size_t> order(dist.size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) { return mpfr_cmp(dist[a].lo(), dist[b].lo()) < 0; });
            const IntervalReal& nearest = dist[order[0]];
            detail::Mpfr cut(q.bits() + 8);
            if (order.size() == 1) {
                mpfr_mul_ui(cut.get(), nearest.hi(), 2, MPFR_RNDU);
                mpfr_add_ui(cut.get(), cut.get(), 1, MPFR_RNDU);
            } else {
                // Nearest root clearly closer: 2 * d1 < d2 for every other root.
                const IntervalReal& second = dist[order[1]];
                detail::Mpfr twice(q.bits() + 8);
                mpfr_mul_ui(twice.get(), nearest.hi(), 2, MPFR_RNDU);
                if (mpfr_cmp(twice.get(), second.lo()) >= 0) {
                    if (q >= kMaxEscalation) {
                        throw AmbiguousRootError("root hint is ambiguous between several roots of " + f_.to_string(),
                                                 iso.boxes);
                    }
                    continue;
                }
                mpfr_add(cut.get(), nearest.hi(), second.lo(), MPFR_RNDN);
                mpfr_div_2ui(cut.get(), cut.get(), 1, MPFR_RNDN);
            }
            mpq_class r;
            mpfr_get_q(r.get_mpq_t(), cut.get());
            radius_ = r;
            certify_given_radius();
            return;
        }
    }

    IntegerPolynomial f_;
    mpq_class re_;
    mpq_class im_;
    mpq_class radius_;
    bool trusted_ = false;
};

}  // namespace twolog
