#pragma once

#include "dyadic.hpp"
#include "series.hpp"
#include "verifier.hpp"

#include <json.hpp>

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace ml {

using Json = nlohmann::ordered_json;

// Dyadic object form: {"num": "<odd integer>", "exp": q}; zero is {"num": "0", "exp": 0}.
inline Json dyadic_to_json(const Dyadic &d)
{
    return Json{{"num", d.numerator().get_str()}, {"exp", d.exponent()}};
}

inline Dyadic dyadic_from_json(const Json &j)
{
    const std::string num = j.at("num").get<std::string>();
    const std::int64_t exp = j.at("exp").get<std::int64_t>();
    mpz_class k;
    if (k.set_str(num, 10) != 0) {
        throw std::invalid_argument("dyadic_from_json: bad numerator \"" + num + "\"");
    }
    if (sgn(k) == 0) {
        if (exp != 0) {
            throw std::invalid_argument("dyadic_from_json: zero must carry exp 0");
        }
        return Dyadic();
    }
    if (mpz_even_p(k.get_mpz_t())) {
        throw std::invalid_argument("dyadic_from_json: numerator must be odd");
    }
    return Dyadic(std::move(k), exp);
}

/// {"truncation": L, "coeffs": ["K/2^q", ...]}
inline Json series_to_json(const MonicSeries &s)
{
    Json coeffs = Json::array();
    for (const Dyadic &c : s.coeffs()) {
        coeffs.push_back(c.to_string());
    }
    return Json{{"truncation", s.truncation()}, {"coeffs", std::move(coeffs)}};
}

inline MonicSeries series_from_json(const Json &j)
{
    const auto truncation = j.at("truncation").get<std::size_t>();
    const auto &coeffs = j.at("coeffs");
    if (!coeffs.is_array() || coeffs.size() != truncation + 1) {
        throw std::invalid_argument("series_from_json: expected truncation + 1 coefficients");
    }
    std::vector<Dyadic> out;
    out.reserve(coeffs.size());
    for (const auto &c : coeffs) {
        out.push_back(Dyadic::parse(c.get<std::string>()));
    }
    return MonicSeries(std::move(out));
}

inline Json order_to_json(const Order &o)
{
    if (o.is_infinite()) {
        return "inf";
    }
    return o.value();
}

inline Json report_to_json(const VerificationReport &r)
{
    Json records = Json::array();
    for (const auto &rec : r.records) {
        records.push_back(Json{{"ell", rec.ell},
                               {"expected_p", rec.expected_p},
                               {"observed_ord", order_to_json(rec.observed_ord)},
                               {"is_zero", rec.is_zero},
                               {"classification", std::string(to_string(rec.classification))}});
    }
    Json steps = Json::array();
    for (const auto &s : r.steps) {
        steps.push_back(Json{{"ell", s.ell},
                             {"step", s.step},
                             {"observed_ord", order_to_json(s.observed)},
                             {"reference_ord", order_to_json(s.reference)},
                             {"relation", s.relation},
                             {"holds", s.holds}});
    }
    Json out{{"theorem", r.theorem},
             {"range", Json::array({r.first, r.last})},
             {"passed", r.passed},
             {"violations", r.violations().size() + r.failed_steps().size()}};
    if (auto f = r.first_failure()) {
        out["first_failure"] = *f;
    }
    out["records"] = std::move(records);
    if (!r.steps.empty()) {
        out["steps"] = std::move(steps);
    }
    if (r.theorem == "theorem2") {
        out["unforced_zeros"] = r.unforced_zeros;
    }
    return out;
}

/// CSV columns: ell,expected_p,observed_ord,is_zero,classification
inline void write_records_csv(std::ostream &os, const VerificationReport &r)
{
    os << "ell,expected_p,observed_ord,is_zero,classification\n";
    for (const auto &rec : r.records) {
        os << rec.ell << ',' << rec.expected_p << ',' << rec.observed_ord.to_string() << ','
           << (rec.is_zero ? "true" : "false") << ',' << to_string(rec.classification) << '\n';
    }
}

/// CSV columns: ell,step,observed_ord,reference_ord,relation,holds
inline void write_steps_csv(std::ostream &os, const VerificationReport &r)
{
    os << "ell,step,observed_ord,reference_ord,relation,holds\n";
    for (const auto &s : r.steps) {
        os << s.ell << ',' << s.step << ',' << s.observed.to_string() << ',' << s.reference.to_string() << ','
           << s.relation << ',' << (s.holds ? "true" : "false") << '\n';
    }
}

inline void write_report_csv(std::ostream &os, const VerificationReport &r)
{
    if (r.steps.empty()) {
        write_records_csv(os, r);
    } else {
        write_steps_csv(os, r);
    }
}

/// One-line human summary, free of timings so output is reproducible.
inline std::string summarize(const VerificationReport &r)
{
    std::ostringstream os;
    os << (r.passed ? "PASS " : "FAIL ") << r.theorem << " ell=" << r.first << ".." << r.last;
    if (!r.steps.empty()) {
        os << " checks=" << r.steps.size();
    } else {
        os << " records=" << r.records.size();
    }
    if (r.theorem == "theorem2") {
        if (r.records.empty()) {
            os << " (forced-zero set is empty)";
        }
        os << " unforced_zeros=" << r.unforced_zeros.size();
    }
    if (auto f = r.first_failure()) {
        os << " first_failure=" << *f;
    }
    return os.str();
}

} // namespace ml
