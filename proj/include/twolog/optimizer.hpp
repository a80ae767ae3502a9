#pragma once

// Grid search over (rho, mu, L, R1) for the two-logarithm verifier. K, S1,
// R2, S2 follow the fixed recipe for each candidate; every candidate is
// certified before it can win.

#include "twolog/unit_circle.hpp"

#include <tuple>

namespace twolog {

struct IntegerRange {
    std::int64_t lo = 1;
    std::int64_t hi = 1;
};

struct SearchConfig {
    std::vector<mpq_class> rho_grid;
    std::vector<mpq_class> mu_grid;
    /// Empty range: centred on the fixed recipe's L for each (rho, mu).
    std::optional<IntegerRange> L_range;
    IntegerRange R1_range{4, 4};
    std::size_t max_candidates = 2000;
    Precision precision = kDefaultPrecision;

    void validate() const
    {
        if (rho_grid.empty() || mu_grid.empty()) {
            throw std::invalid_argument("search grids must be nonempty");
        }
        for (const auto& r : rho_grid) {
            if (r <= 1) {
                throw std::invalid_argument("every rho must exceed 1");
            }
        }
        for (const auto& m : mu_grid) {
            if (m < mpq_class(1, 3) || m > 1) {
                throw std::invalid_argument("every mu must lie in [1/3, 1]");
            }
        }
        if ((L_range && (L_range->lo < 1 || L_range->lo > L_range->hi)) || R1_range.lo < 1
            || R1_range.lo > R1_range.hi) {
            throw std::invalid_argument("search ranges must be nonempty and positive");
        }
        if (max_candidates < 1) {
            throw std::invalid_argument("max_candidates must be at least 1");
        }
    }

    /// rho in {14, 16, 18.1, 20, 22}, mu in {0.5, 0.59, 0.7}, L within 3 of the recipe, R1 in {3, 4}.
    static SearchConfig standard(Precision p = kDefaultPrecision)
    {
        SearchConfig cfg;
        for (const char* r : {"14", "16", "18.1", "20", "22"}) {
            cfg.rho_grid.push_back(parse_decimal(r));
        }
        for (const char* m : {"0.5", "0.59", "0.7"}) {
            cfg.mu_grid.push_back(parse_decimal(m));
        }
        cfg.R1_range = {3, 4};
        cfg.precision = p;
        return cfg;
    }
};

/// A candidate that did not certify, with its weakest condition.
struct CandidateFailure {
    LaurentParams params;
    std::string condition;
    Status status = Status::indeterminate;
    std::optional<IntervalReal> margin;
};

class NoCertifiedCandidate : public std::runtime_error {
public:
    NoCertifiedCandidate(std::string what, std::vector<CandidateFailure> best)
        : std::runtime_error(std::move(what)), best_(std::move(best))
    {
    }
    const std::vector<CandidateFailure>& best_failures() const noexcept { return best_; }

private:
    std::vector<CandidateFailure> best_;
};

namespace detail {

/// The parameter recipe for given (rho, mu, L, R1), or nothing if L <= H or
/// a floor is undecided.
inline std::optional<LaurentParams> recipe(const TwoLogInstance& inst, const mpq_class& rho, const mpq_class& mu,
                                           std::int64_t L, std::int64_t R1, const IntervalReal& a1,
                                           const IntervalReal& a2, const IntervalReal& H, const IntervalReal& lambda)
{
    const IntervalReal Lr = IntervalReal::from_int(L, a1.precision());
    const IntervalReal gap = Lr - H;
    if (!gap.certainly_positive()) {
        return std::nullopt;
    }
    const IntervalReal one(1);
    const IntervalReal v0 = one / (IntervalReal(4) * a1) + IntervalReal(4) / (IntervalReal(3) * a2)
                            + Lr / (IntervalReal(12) * a1);
    const IntervalReal v1 = Lr / IntervalReal(3);
    const IntervalReal v2 = lambda * gap;
    const IntervalReal k = sqr(quadratic_root(v0, v1, v2));
    const auto Kf = floor_int(k * Lr * a1 * a2);
    if (!Kf) {
        return std::nullopt;
    }
    LaurentParams out;
    out.K = 1 + *Kf;
    out.L = L;
    out.R1 = R1;
    out.S1 = (L + R1 - 1) / R1;
    const IntervalReal base = IntervalReal(out.K - 1) * Lr;
    const auto r2 = floor_int(sqrt(base * a2 / a1));
    const auto s2 = floor_int(sqrt(base * a1 / a2));
    if (!r2 || !s2) {
        return std::nullopt;
    }
    out.R2 = 1 + *r2;
    out.S2 = 1 + *s2;
    out.rho = rho;
    out.mu = mu;
    (void)inst;
    return out;
}

/// h for b' = b1/a2 + b2/a1 with the same shape as the unit-circle bound.
inline IntervalReal search_height(const TwoLogInstance& inst, const IntervalReal& a1, const IntervalReal& a2,
                                  Precision p)
{
    const IntervalReal D = IntervalReal::from_rational(inst.D, p);
    const IntervalReal bprime = IntervalReal::from_integer(inst.b1, p) / a2 + IntervalReal::from_integer(inst.b2, p) / a1;
    return max(max(IntervalReal(17), D), D * (log(bprime) + decimal(constants::shift, p)) + decimal(constants::delta0, p));
}

inline std::string describe(const LaurentParams& q)
{
    return "K=" + std::to_string(q.K) + " L=" + std::to_string(q.L) + " R1=" + std::to_string(q.R1)
           + " S1=" + std::to_string(q.S1) + " R2=" + std::to_string(q.R2) + " S2=" + std::to_string(q.S2)
           + " rho=" + q.rho.get_str() + " mu=" + q.mu.get_str();
}

}  // namespace detail

/// Best certified bound over the grid; ties go to the smallest (K, L, rho, mu).
inline BoundCertificate optimize(const TwoLogInstance& inst, const SearchConfig& cfg)
{
    cfg.validate();
    const Precision p = cfg.precision;
    const HeightParameter minimal = HeightParameter::minimal();
    std::optional<BoundCertificate> best;
    std::vector<CandidateFailure> failures;
    std::size_t evaluated = 0;
    for (const auto& rho : cfg.rho_grid) {
        const IntervalReal a1 = minimal_height_parameter(inst.alpha1, rho, inst.D, p);
        const IntervalReal a2 = minimal_height_parameter(inst.alpha2, rho, inst.D, p);
        if (!a1.certainly_positive() || !a2.certainly_positive()) {
            continue;
        }
        const IntervalReal h = detail::search_height(inst, a1, a2, p);
        for (const auto& mu : cfg.mu_grid) {
            const IntervalReal m = IntervalReal::from_rational(mu, p);
            const IntervalReal sigma = (IntervalReal(1) + IntervalReal(2) * m - sqr(m)) / IntervalReal(2);
            const IntervalReal lambda = sigma * log(IntervalReal::from_rational(rho, p));
            const IntervalReal H = h / lambda + IntervalReal(1) / sigma;
            IntegerRange Ls;
            if (cfg.L_range) {
                Ls = *cfg.L_range;
            } else {
                const IntervalReal L0 = H + sqrt(sqr(H) + IntervalReal(1) / IntervalReal(4));
                const std::int64_t centre = floor_lower(L0 + IntervalReal(1) / IntervalReal(2)).get_si();
                Ls = {std::max<std::int64_t>(1, centre - 3), centre + 3};
            }
            for (std::int64_t L = Ls.lo; L <= Ls.hi; ++L) {
                for (std::int64_t R1 = cfg.R1_range.lo; R1 <= cfg.R1_range.hi; ++R1) {
                    if (evaluated >= cfg.max_candidates) {
                        break;
                    }
                    const auto params = detail::recipe(inst, rho, mu, L, R1, a1, a2, H, lambda);
                    if (!params) {
                        continue;
                    }
                    ++evaluated;
                    const VerificationReport report = verify_conditions(*params, inst, minimal, minimal, p);
                    if (!report.all_verified()) {
                        CandidateFailure f{*params, {}, Status::verified, std::nullopt};
                        for (const auto& c : report.conditions) {
                            if (c.result.status != Status::verified) {
                                f.condition = c.name;
                                f.status = c.result.status;
                                f.margin = c.result.margin;
                                break;
                            }
                        }
                        failures.push_back(std::move(f));
                        continue;
                    }
                    BoundCertificate cert = conclude_bound(*params, inst, report, p);
                    if (!cert.bound) {
                        continue;
                    }
                    auto key = [](const BoundCertificate& c) {
                        return std::make_tuple(c.params->K, c.params->L, c.params->rho, c.params->mu);
                    };
                    bool better = !best;
                    if (best) {
                        const int cmp = mpfr_cmp(cert.bound->lo(), best->bound->lo());
                        better = cmp > 0 || (cmp == 0 && key(cert) < key(*best));
                    }
                    if (better) {
                        best = std::move(cert);
                    }
                }
            }
        }
    }
    if (!best) {
        // Keep the failures with the largest margins for diagnostics.
        std::stable_sort(failures.begin(), failures.end(), [](const CandidateFailure& x, const CandidateFailure& y) {
            if (!x.margin || !y.margin) {
                return x.margin.has_value() && !y.margin.has_value();
            }
            return mpfr_cmp(x.margin->lo(), y.margin->lo()) > 0;
        });
        if (failures.size() > 5) {
            failures.resize(5);
        }
        throw NoCertifiedCandidate("no candidate certified among " + std::to_string(evaluated) + " evaluated",
                                   std::move(failures));
    }
    best->path = "optimizer";
    best->trail.push_back("grid search: " + std::to_string(evaluated) + " candidates, a1 and a2 minimal");
    best->trail.push_back("selected " + detail::describe(*best->params));
    return *best;
}

/// Re-checks an optimizer certificate from scratch at doubled precision.
/// True when every condition verifies again and the new bound overlaps the old one.
inline bool reverify(const BoundCertificate& cert, const TwoLogInstance& inst)
{
    if (!cert.bound || !cert.params) {
        return false;
    }
    const Precision q = Precision(cert.precision_bits).doubled();
    const HeightParameter minimal = HeightParameter::minimal();
    const VerificationReport report = verify_conditions(*cert.params, inst, minimal, minimal, q);
    if (!report.all_verified()) {
        return false;
    }
    const BoundCertificate again = conclude_bound(*cert.params, inst, report, q);
    if (!again.bound) {
        return false;
    }
    return mpfr_cmp(again.bound->lo(), cert.bound->hi()) <= 0 && mpfr_cmp(cert.bound->lo(), again.bound->hi()) <= 0;
}

}  // namespace twolog
