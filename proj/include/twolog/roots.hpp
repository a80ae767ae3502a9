#pragma once

// Certified isolation of all complex roots of a squarefree integer polynomial.
//
// Approximations come from Aberth-Ehrlich iteration in plain MPFR arithmetic.
// They are then certified with the Weierstrass corrections
//     W_i = f(z_i) / (lc * prod_{j != i} (z_i - z_j)):
// the monic f is the characteristic polynomial of diag(z) - 1 W^T, so by
// Gerschgorin on columns every root lies in some disk D(z_i - W_i, (n-1)|W_i|)
// and a disk disjoint from all others holds exactly one root.

#include "twolog/polynomial.hpp"

#include <cmath>
#include <vector>

namespace twolog {

struct RootIsolation {
    /// One rectangle per root; pairwise disjoint, each holding exactly one root.
    std::vector<ComplexEnclosure> boxes;
    unsigned bits = 0;

    /// Index of the unique box meeting z, if exactly one does.
    std::optional<std::size_t> unique_meeting(const ComplexEnclosure& z) const
    {
        std::optional<std::size_t> hit;
        for (std::size_t i = 0; i < boxes.size(); ++i) {
            if (intersects(boxes[i], z)) {
                if (hit) {
                    return std::nullopt;
                }
                hit = i;
            }
        }
        return hit;
    }
};

namespace detail {

// Round-to-nearest complex arithmetic for the approximation phase only.
struct ApproxComplex {
    Mpfr re;
    Mpfr im;
    explicit ApproxComplex(mpfr_prec_t bits) : re(bits), im(bits) {}
};

class AberthSolver {
public:
    AberthSolver(const ZPoly& f, mpfr_prec_t bits) : f_(f), bits_(bits), t1_(bits), t2_(bits), t3_(bits) {}

    std::vector<ApproxComplex> solve(int max_iterations)
    {
        const std::size_t n = f_.size() - 1;
        std::vector<ApproxComplex> z;
        z.reserve(n);
        // Start on a circle of radius |c0/cn|^(1/n), rotated off the axes.
        const double c0 = std::fabs(mpz_get_d(f_.front().get_mpz_t()));
        const double cn = std::fabs(mpz_get_d(f_.back().get_mpz_t()));
        double radius = (c0 > 0 && cn > 0) ? std::pow(c0 / cn, 1.0 / static_cast<double>(n)) : 1.0;
        if (!std::isfinite(radius) || radius <= 0) {
            radius = 1.0;
        }
        for (std::size_t k = 0; k < n; ++k) {
            const double angle = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n) + 0.4;
            ApproxComplex c(bits_);
            mpfr_set_d(c.re.get(), radius * std::cos(angle), MPFR_RNDN);
            mpfr_set_d(c.im.get(), radius * std::sin(angle), MPFR_RNDN);
            z.push_back(std::move(c));
        }
        ApproxComplex val(bits_), der(bits_), ratio(bits_), sum(bits_), diff(bits_), corr(bits_), tmp(bits_);
        Mpfr tol(bits_);
        mpfr_set_ui_2exp(tol.get(), 1, -static_cast<long>(bits_) + 8, MPFR_RNDN);
        for (int iter = 0; iter < max_iterations; ++iter) {
            bool converged = true;
            for (std::size_t i = 0; i < n; ++i) {
                horner(z[i], val, der);
                if (mpfr_zero_p(val.re.get()) && mpfr_zero_p(val.im.get())) {
                    continue;
                }
                // ratio = f/f'
                div(ratio, val, der);
                // sum = sum_{j != i} 1/(z_i - z_j)
                mpfr_set_zero(sum.re.get(), 1);
                mpfr_set_zero(sum.im.get(), 1);
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == i) {
                        continue;
                    }
                    mpfr_sub(diff.re.get(), z[i].re.get(), z[j].re.get(), MPFR_RNDN);
                    mpfr_sub(diff.im.get(), z[i].im.get(), z[j].im.get(), MPFR_RNDN);
                    inv(tmp, diff);
                    mpfr_add(sum.re.get(), sum.re.get(), tmp.re.get(), MPFR_RNDN);
                    mpfr_add(sum.im.get(), sum.im.get(), tmp.im.get(), MPFR_RNDN);
                }
                // corr = ratio / (1 - ratio * sum)
                mul(tmp, ratio, sum);
                mpfr_ui_sub(tmp.re.get(), 1, tmp.re.get(), MPFR_RNDN);
                mpfr_neg(tmp.im.get(), tmp.im.get(), MPFR_RNDN);
                div(corr, ratio, tmp);
                mpfr_sub(z[i].re.get(), z[i].re.get(), corr.re.get(), MPFR_RNDN);
                mpfr_sub(z[i].im.get(), z[i].im.get(), corr.im.get(), MPFR_RNDN);
                // Relative size of the step.
                mpfr_hypot(t1_.get(), corr.re.get(), corr.im.get(), MPFR_RNDN);
                mpfr_hypot(t2_.get(), z[i].re.get(), z[i].im.get(), MPFR_RNDN);
                mpfr_max(t2_.get(), t2_.get(), one(), MPFR_RNDN);
                mpfr_mul(t2_.get(), t2_.get(), tol.get(), MPFR_RNDN);
                if (mpfr_cmp(t1_.get(), t2_.get()) > 0 || !mpfr_number_p(t1_.get())) {
                    converged = false;
                }
            }
            if (converged) {
                break;
            }
        }
        return z;
    }

private:
    mpfr_srcptr one()
    {
        mpfr_set_ui(t3_.get(), 1, MPFR_RNDN);
        return t3_.get();
    }

    void horner(const ApproxComplex& z, ApproxComplex& val, ApproxComplex& der)
    {
        mpfr_set_zero(val.re.get(), 1);
        mpfr_set_zero(val.im.get(), 1);
        mpfr_set_zero(der.re.get(), 1);
        mpfr_set_zero(der.im.get(), 1);
        ApproxComplex tmp(bits_);
        for (auto it = f_.rbegin(); it != f_.rend(); ++it) {
            // der = der * z + val
            mul(tmp, der, z);
            mpfr_add(der.re.get(), tmp.re.get(), val.re.get(), MPFR_RNDN);
            mpfr_add(der.im.get(), tmp.im.get(), val.im.get(), MPFR_RNDN);
            // val = val * z + c
            mul(tmp, val, z);
            mpfr_add_z(val.re.get(), tmp.re.get(), it->get_mpz_t(), MPFR_RNDN);
            mpfr_set(val.im.get(), tmp.im.get(), MPFR_RNDN);
        }
    }

    void mul(ApproxComplex& out, const ApproxComplex& a, const ApproxComplex& b)
    {
        mpfr_mul(t1_.get(), a.re.get(), b.re.get(), MPFR_RNDN);
        mpfr_mul(t2_.get(), a.im.get(), b.im.get(), MPFR_RNDN);
        mpfr_mul(t3_.get(), a.re.get(), b.im.get(), MPFR_RNDN);
        mpfr_sub(out.re.get(), t1_.get(), t2_.get(), MPFR_RNDN);
        mpfr_mul(t1_.get(), a.im.get(), b.re.get(), MPFR_RNDN);
        mpfr_add(out.im.get(), t3_.get(), t1_.get(), MPFR_RNDN);
    }

    void inv(ApproxComplex& out, const ApproxComplex& a)
    {
        mpfr_sqr(t1_.get(), a.re.get(), MPFR_RNDN);
        mpfr_sqr(t2_.get(), a.im.get(), MPFR_RNDN);
        mpfr_add(t1_.get(), t1_.get(), t2_.get(), MPFR_RNDN);
        mpfr_div(out.re.get(), a.re.get(), t1_.get(), MPFR_RNDN);
        mpfr_div(out.im.get(), a.im.get(), t1_.get(), MPFR_RNDN);
        mpfr_neg(out.im.get(), out.im.get(), MPFR_RNDN);
    }

    void div(ApproxComplex& out, const ApproxComplex& a, const ApproxComplex& b)
    {
        ApproxComplex ib(bits_);
        inv(ib, b);
        ApproxComplex a_copy = a;
        mul(out, a_copy, ib);
    }

    const ZPoly& f_;
    mpfr_prec_t bits_;
    Mpfr t1_, t2_, t3_;
};

inline std::optional<RootIsolation> try_isolate(const ZPoly& f, Precision p)
{
    const std::size_t n = f.size() - 1;
    RootIsolation out;
    out.bits = p.bits();
    if (n == 1) {
        // Linear: the root -c0/c1 is rational.
        const mpq_class root(-f[0], f[1]);
        mpq_class r = root;
        r.canonicalize();
        out.boxes.push_back({IntervalReal::from_rational(r, p), IntervalReal(p)});
        return out;
    }
    AberthSolver solver(f, p.bits() + 32);
    const auto approx = solver.solve(200 + 20 * static_cast<int>(n));
    std::vector<ComplexEnclosure> centers;
    centers.reserve(n);
    for (const auto& z : approx) {
        if (!mpfr_number_p(z.re.get()) || !mpfr_number_p(z.im.get())) {
            return std::nullopt;
        }
        centers.push_back({IntervalReal::from_bounds(z.re.get(), z.re.get(), Precision(p.bits() + 32)),
                           IntervalReal::from_bounds(z.im.get(), z.im.get(), Precision(p.bits() + 32))});
    }
    const IntervalReal lead = IntervalReal::from_integer(f.back(), p);
    const IntervalReal spread(static_cast<long>(n - 1));
    try {
        for (std::size_t i = 0; i < n; ++i) {
            ComplexEnclosure denom{lead, IntervalReal(p)};
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) {
                    denom = denom * (centers[i] - centers[j]);
                }
            }
            const ComplexEnclosure w = poly::evaluate(f, centers[i], p) / denom;
            const IntervalReal radius = spread * abs(w);
            ComplexEnclosure region = inflate(centers[i] - w, IntervalReal::from_bounds(radius.hi(), radius.hi(), p));
            out.boxes.push_back(std::move(region));
        }
    } catch (const DomainError&) {
        return std::nullopt;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (intersects(out.boxes[i], out.boxes[j])) {
                return std::nullopt;
            }
        }
    }
    return out;
}

}  // namespace detail

/// Isolates every root of the squarefree polynomial f, escalating precision
/// from p up to `limit`. Throws IndeterminateError if isolation never succeeds.
inline RootIsolation isolate_roots(const ZPoly& f, Precision p, Precision limit = Precision(8192))
{
    ZPoly g = f;
    poly::trim(g);
    if (poly::degree(g) < 1) {
        throw std::invalid_argument("cannot isolate roots of a constant");
    }
    for (Precision q = p;; q = q.doubled()) {
        if (auto iso = detail::try_isolate(g, q)) {
            return *iso;
        }
        if (q >= limit) {
            throw IndeterminateError("root isolation failed up to " + std::to_string(q.bits()) + " bits");
        }
    }
}

}  // namespace twolog
