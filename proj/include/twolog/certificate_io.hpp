#pragma once

// Versioned JSON and plain-text forms of a BoundCertificate. Every real is
// written as its enclosure endpoints, rounded outward to `digits` significant
// digits.

#include "twolog/certificate.hpp"

#include <json.hpp>

#include <sstream>

namespace twolog {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "v1";

namespace io {

inline Json interval(const IntervalReal& x, int digits)
{
    return Json{{"lo", x.lo_string(digits)}, {"hi", x.hi_string(digits)}};
}

inline Json optional_interval(const std::optional<IntervalReal>& x, int digits)
{
    return x ? interval(*x, digits) : Json(nullptr);
}

/// Reads endpoints back toward the interior of the printed decimals, so that
/// printing again at the same digit count reproduces them exactly.
inline IntervalReal read_interval(const Json& j, Precision p = Precision(256))
{
    detail::Mpfr lo(p.bits());
    detail::Mpfr hi(p.bits());
    const std::string ls = j.at("lo").get<std::string>();
    const std::string hs = j.at("hi").get<std::string>();
    const int bad_lo = mpfr_set_str(lo.get(), ls.c_str(), 10, MPFR_RNDU);
    const int bad_hi = mpfr_set_str(hi.get(), hs.c_str(), 10, MPFR_RNDD);
    if (bad_lo != 0 || bad_hi != 0 || mpfr_nan_p(lo.get()) || mpfr_nan_p(hi.get())) {
        throw std::invalid_argument("malformed interval endpoint");
    }
    return IntervalReal::from_bounds(lo.get(), hi.get(), p);
}

inline std::optional<IntervalReal> read_optional_interval(const Json& j)
{
    if (j.is_null()) {
        return std::nullopt;
    }
    return read_interval(j);
}

inline Status read_status(const std::string& s)
{
    if (s == "verified") {
        return Status::verified;
    }
    if (s == "failed") {
        return Status::failed;
    }
    if (s == "indeterminate") {
        return Status::indeterminate;
    }
    throw std::invalid_argument("unknown status: " + s);
}

inline Json part(const CheckPart& c, int digits)
{
    Json j{{"claim", c.claim}, {"status", to_string(c.status)}, {"margin", interval(c.margin, digits)}};
    if (!c.annotation.empty()) {
        j["annotation"] = c.annotation;
    }
    return j;
}

inline CheckPart read_part(const Json& j)
{
    CheckPart c;
    c.claim = j.at("claim").get<std::string>();
    c.status = read_status(j.at("status").get<std::string>());
    c.margin = read_interval(j.at("margin"));
    if (j.contains("annotation")) {
        c.annotation = j.at("annotation").get<std::string>();
    }
    return c;
}

}  // namespace io

inline Json params_to_json(const LaurentParams& q)
{
    return Json{{"K", q.K},   {"L", q.L},   {"R1", q.R1},           {"R2", q.R2},
                {"S1", q.S1}, {"S2", q.S2}, {"rho", q.rho.get_str()}, {"mu", q.mu.get_str()}};
}

inline LaurentParams params_from_json(const Json& j)
{
    LaurentParams q;
    q.K = j.at("K").get<std::int64_t>();
    q.L = j.at("L").get<std::int64_t>();
    q.R1 = j.at("R1").get<std::int64_t>();
    q.R2 = j.at("R2").get<std::int64_t>();
    q.S1 = j.at("S1").get<std::int64_t>();
    q.S2 = j.at("S2").get<std::int64_t>();
    q.rho = mpq_class(j.at("rho").get<std::string>());
    q.mu = mpq_class(j.at("mu").get<std::string>());
    q.rho.canonicalize();
    q.mu.canonicalize();
    return q;
}

inline Json check_to_json(const Check& c, int digits)
{
    Json parts = Json::array();
    for (const auto& p : c.parts) {
        parts.push_back(io::part(p, digits));
    }
    Json links = Json::array();
    for (const auto& p : c.links) {
        links.push_back(io::part(p, digits));
    }
    return Json{{"status", to_string(c.status)},
                {"margin_lo", c.margin.lo_string(digits)},
                {"margin_hi", c.margin.hi_string(digits)},
                {"bits", c.bits},
                {"parts", std::move(parts)},
                {"links", std::move(links)},
                {"note", c.note}};
}

inline Json certificate_to_json(const BoundCertificate& c, int digits = 15)
{
    Json j;
    j["version"] = kSchemaVersion;
    j["statement"] = c.statement;
    j["path"] = c.path;
    j["bound"] = io::optional_interval(c.bound, digits);
    j["a"] = io::optional_interval(c.a, digits);
    j["h"] = io::optional_interval(c.h, digits);
    j["D"] = c.D.get_str();
    j["b1"] = c.b1.get_str();
    j["b2"] = c.b2.get_str();
    j["params"] = c.params ? params_to_json(*c.params) : Json(nullptr);
    Json conditions = Json::array();
    for (const auto& n : c.report.conditions) {
        conditions.push_back(Json{{"name", n.name},
                                  {"status", to_string(n.result.status)},
                                  {"margin_lo", n.result.margin.lo_string(digits)},
                                  {"margin_hi", n.result.margin.hi_string(digits)},
                                  {"bits", n.result.bits},
                                  {"note", n.result.note}});
    }
    j["conditions"] = std::move(conditions);
    Json checks = Json::object();
    for (const auto& ch : c.checks) {
        checks[ch.name] = check_to_json(ch, digits);
    }
    j["checks"] = std::move(checks);
    j["assumption_trail"] = c.trail;
    Json metadata = Json::array();
    for (const auto& m : c.metadata) {
        metadata.push_back(Json{{"name", m.name}, {"value", io::optional_interval(m.value, digits)}, {"text", m.text}});
    }
    j["metadata"] = std::move(metadata);
    j["precision_bits"] = c.precision_bits;
    j["trusted"] = c.trusted;
    return j;
}

inline BoundCertificate certificate_from_json(const Json& j)
{
    if (j.at("version").get<std::string>() != kSchemaVersion) {
        throw std::invalid_argument("unsupported certificate version");
    }
    BoundCertificate c;
    c.statement = j.at("statement").get<std::string>();
    c.path = j.at("path").get<std::string>();
    c.bound = io::read_optional_interval(j.at("bound"));
    c.a = io::read_optional_interval(j.at("a"));
    c.h = io::read_optional_interval(j.at("h"));
    c.D = mpq_class(j.at("D").get<std::string>());
    c.D.canonicalize();
    c.b1 = mpz_class(j.at("b1").get<std::string>());
    c.b2 = mpz_class(j.at("b2").get<std::string>());
    if (!j.at("params").is_null()) {
        c.params = params_from_json(j.at("params"));
    }
    for (const auto& n : j.at("conditions")) {
        ConditionResult r;
        r.status = io::read_status(n.at("status").get<std::string>());
        r.margin = io::read_interval(Json{{"lo", n.at("margin_lo")}, {"hi", n.at("margin_hi")}});
        r.bits = n.at("bits").get<unsigned>();
        r.note = n.at("note").get<std::string>();
        c.report.conditions.push_back({n.at("name").get<std::string>(), std::move(r)});
    }
    for (const auto& [name, v] : j.at("checks").items()) {
        Check ch;
        ch.name = name;
        ch.status = io::read_status(v.at("status").get<std::string>());
        ch.margin = io::read_interval(Json{{"lo", v.at("margin_lo")}, {"hi", v.at("margin_hi")}});
        ch.bits = v.at("bits").get<unsigned>();
        for (const auto& p : v.at("parts")) {
            ch.parts.push_back(io::read_part(p));
        }
        for (const auto& p : v.at("links")) {
            ch.links.push_back(io::read_part(p));
        }
        ch.note = v.at("note").get<std::string>();
        c.checks.push_back(std::move(ch));
    }
    c.trail = j.at("assumption_trail").get<std::vector<std::string>>();
    for (const auto& m : j.at("metadata")) {
        c.metadata.push_back(
            {m.at("name").get<std::string>(), io::read_optional_interval(m.at("value")), m.at("text").get<std::string>()});
    }
    c.precision_bits = j.at("precision_bits").get<unsigned>();
    c.trusted = j.at("trusted").get<bool>();
    return c;
}

inline std::string certificate_to_text(const BoundCertificate& c, int digits = 15)
{
    std::ostringstream out;
    out << "twolog certificate " << kSchemaVersion << "\n";
    out << "statement: " << c.statement << " > bound.lo\n";
    out << "path: " << c.path << "\n";
    out << "bound: " << (c.bound ? c.bound->to_string(digits) : std::string("none")) << "\n";
    if (c.a) {
        out << "a: " << c.a->to_string(digits) << "\n";
    }
    if (c.h) {
        out << "h: " << c.h->to_string(digits) << "\n";
    }
    out << "D: " << c.D.get_str() << "\n";
    out << "b1: " << c.b1.get_str() << "\n";
    out << "b2: " << c.b2.get_str() << "\n";
    if (c.params) {
        const auto& q = *c.params;
        out << "params: K=" << q.K << " L=" << q.L << " R1=" << q.R1 << " R2=" << q.R2 << " S1=" << q.S1
            << " S2=" << q.S2 << " rho=" << q.rho.get_str() << " mu=" << q.mu.get_str() << "\n";
    }
    for (const auto& n : c.report.conditions) {
        out << "condition " << n.name << ": " << to_string(n.result.status) << " margin "
            << n.result.margin.to_string(digits) << " at " << n.result.bits << " bits";
        if (!n.result.note.empty()) {
            out << " (" << n.result.note << ")";
        }
        out << "\n";
    }
    for (const auto& ch : c.checks) {
        out << "check " << ch.name << ": " << to_string(ch.status) << " margin " << ch.margin.to_string(digits)
            << " at " << ch.bits << " bits\n";
        for (const auto& p : ch.parts) {
            out << "    " << p.claim << ": " << to_string(p.status) << " " << p.margin.to_string(digits) << "\n";
        }
        for (const auto& p : ch.links) {
            out << "    step " << p.claim << ": " << to_string(p.status) << " " << p.margin.to_string(digits);
            if (!p.annotation.empty()) {
                out << " [" << p.annotation << "]";
            }
            out << "\n";
        }
        if (!ch.note.empty()) {
            out << "    note: " << ch.note << "\n";
        }
    }
    for (const auto& t : c.trail) {
        out << "assumption: " << t << "\n";
    }
    for (const auto& m : c.metadata) {
        out << "metadata " << m.name << ": " << (m.value ? m.value->to_string(digits) : std::string("-"));
        if (!m.text.empty()) {
            out << " (" << m.text << ")";
        }
        out << "\n";
    }
    out << "precision_bits: " << c.precision_bits << "\n";
    out << "trusted: " << (c.trusted ? "yes" : "no") << "\n";
    return out.str();
}

}  // namespace twolog
