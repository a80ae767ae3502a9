#pragma once

// Records produced by the verifier: condition outcomes, replay checks and
// the bound certificate itself.

#include "twolog/interval.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace twolog {

/// Input rejected before any verification (root of unity, |alpha| != 1, ...).
class RejectionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct LaurentParams {
    std::int64_t K = 2;
    std::int64_t L = 1;
    std::int64_t R1 = 1;
    std::int64_t R2 = 1;
    std::int64_t S1 = 1;
    std::int64_t S2 = 1;
    /// Exact rationals; enclosed at whatever precision a check runs at.
    mpq_class rho = 2;
    mpq_class mu = mpq_class(1, 2);

    IntervalReal rho_at(Precision p) const { return IntervalReal::from_rational(rho, p); }
    IntervalReal mu_at(Precision p) const { return IntervalReal::from_rational(mu, p); }

    void validate() const
    {
        if (K < 2) {
            throw std::invalid_argument("K must be at least 2");
        }
        if (L < 1 || R1 < 1 || R2 < 1 || S1 < 1 || S2 < 1) {
            throw std::invalid_argument("L, R1, R2, S1, S2 must be positive");
        }
        if (rho <= 1) {
            throw std::invalid_argument("rho must exceed 1");
        }
        if (mu < mpq_class(1, 3) || mu > 1) {
            throw std::invalid_argument("mu must lie in [1/3, 1]");
        }
    }

    friend bool operator==(const LaurentParams&, const LaurentParams&) = default;
};

struct ConditionResult {
    Status status = Status::indeterminate;
    IntervalReal margin;
    unsigned bits = 0;
    std::string note;
};

struct NamedCondition {
    std::string name;
    ConditionResult result;
};

struct VerificationReport {
    std::vector<NamedCondition> conditions;

    bool all_verified() const
    {
        if (conditions.empty()) {
            return false;
        }
        for (const auto& c : conditions) {
            if (c.result.status != Status::verified) {
                return false;
            }
        }
        return true;
    }

    const ConditionResult* find(std::string_view name) const
    {
        for (const auto& c : conditions) {
            if (c.name == name) {
                return &c.result;
            }
        }
        return nullptr;
    }

    /// failed beats indeterminate beats verified.
    Status overall() const
    {
        Status s = Status::verified;
        for (const auto& c : conditions) {
            if (c.result.status == Status::failed) {
                return Status::failed;
            }
            if (c.result.status == Status::indeterminate) {
                s = Status::indeterminate;
            }
        }
        return conditions.empty() ? Status::indeterminate : s;
    }
};

/// One inequality inside a replay check.
struct CheckPart {
    std::string claim;
    Status status = Status::indeterminate;
    IntervalReal margin;
    /// Set on intermediate steps whose failure does not affect the headline.
    std::string annotation;
};

/// A replayed inequality: headline parts decide the status; links are the
/// intermediate steps of the written argument.
struct Check {
    std::string name;
    Status status = Status::indeterminate;
    IntervalReal margin;
    unsigned bits = 0;
    std::vector<CheckPart> parts;
    std::vector<CheckPart> links;
    std::string note;
};

struct MetadataEntry {
    std::string name;
    std::optional<IntervalReal> value;
    std::string text;
};

struct BoundCertificate {
    /// The certified statement is log|Lambda| > bound.lo (absent if refused).
    std::optional<IntervalReal> bound;
    std::string statement = "log|Lambda|";
    /// "engine", "main", "liouville" or "optimizer".
    std::string path = "engine";
    mpz_class b1;
    mpz_class b2;
    mpq_class D;
    std::optional<IntervalReal> a;
    std::optional<IntervalReal> h;
    std::optional<LaurentParams> params;
    VerificationReport report;
    std::vector<Check> checks;
    std::vector<std::string> trail;
    std::vector<MetadataEntry> metadata;
    unsigned precision_bits = 0;
    bool trusted = false;

    bool has_bound() const { return bound.has_value(); }

    const Check* find_check(std::string_view name) const
    {
        for (const auto& c : checks) {
            if (c.name == name) {
                return &c;
            }
        }
        return nullptr;
    }

    const MetadataEntry* find_metadata(std::string_view name) const
    {
        for (const auto& m : metadata) {
            if (m.name == name) {
                return &m;
            }
        }
        return nullptr;
    }
};

}  // namespace twolog
