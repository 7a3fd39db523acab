#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "coeff_seq.hpp"
#include "colouring.hpp"
#include "error.hpp"
#include "generator.hpp"
#include "pbw.hpp"
#include "series.hpp"
#include "verma.hpp"

// JSON documents for every exchanged value. Readers validate the full shape and
// raise InputSchemaError with the JSON path of the first offending node.
// Writers emit keys in sorted order (nlohmann::json's default object type), so
// serialisation is byte-stable.

namespace ckm::json {

using Json = nlohmann::json;

namespace detail {

[[noreturn]] inline void fail(std::string_view path, const std::string& what)
{
    throw Error(ErrorCode::InputSchemaError, std::string(path) + ": " + what);
}

inline void expect_object(const Json& j, std::string_view path, std::initializer_list<std::string_view> required,
                          std::initializer_list<std::string_view> optional = {})
{
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    for (auto key : required) {
        if (!j.contains(key)) {
            fail(path, "missing key \"" + std::string(key) + "\"");
        }
    }
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (auto k : required) {
            known = known || key == k;
        }
        for (auto k : optional) {
            known = known || key == k;
        }
        if (!known) {
            fail(path, "unexpected key \"" + key + "\"");
        }
    }
}

inline const Json& expect_array(const Json& j, std::string_view path)
{
    if (!j.is_array()) {
        fail(path, "expected an array");
    }
    return j;
}

inline long read_int(const Json& j, std::string_view path)
{
    if (!j.is_number_integer()) {
        fail(path, "expected an integer");
    }
    return j.get<long>();
}

inline int read_order(const Json& j, std::string_view path)
{
    const long m = read_int(j, path);
    if (m < 0 || m > 64) {
        fail(path, "order must lie in 0..64");
    }
    return static_cast<int>(m);
}

inline std::string at(std::string_view path, std::string_view key) { return std::string(path) + "." + std::string(key); }
inline std::string at(std::string_view path, std::size_t i) { return std::string(path) + "[" + std::to_string(i) + "]"; }

} // namespace detail

// ---------------------------------------------------------------------------
// Scalars, polynomials, series

inline Json to_json(const Rational& r) { return r.str(); }

/// "p/q" or "p" strings; plain JSON integers are accepted as well.
inline Rational rational_from_json(const Json& j, std::string_view path = "$")
{
    if (j.is_number_integer()) {
        return Rational(j.get<long>());
    }
    if (!j.is_string()) {
        detail::fail(path, "expected a rational string \"p/q\"");
    }
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const Error& e) {
        detail::fail(path, e.what());
    }
}

inline Json to_json(const PolyN& p)
{
    Json out = Json::array();
    for (const auto& c : p.coefficients()) {
        out.push_back(c.str());
    }
    return out;
}

inline PolyN poly_from_json(const Json& j, std::string_view path = "$")
{
    detail::expect_array(j, path);
    std::vector<Rational> c;
    for (std::size_t i = 0; i < j.size(); ++i) {
        c.push_back(rational_from_json(j[i], detail::at(path, i)));
    }
    return PolyN(std::move(c));
}

inline Json to_json(const PolyKN& p)
{
    Json out = Json::array();
    for (const auto& [e, c] : p.terms()) {
        out.push_back({{"kpow", e.first}, {"npow", e.second}, {"coeff", c.str()}});
    }
    return out;
}

inline PolyKN bipoly_from_json(const Json& j, std::string_view path = "$")
{
    detail::expect_array(j, path);
    PolyKN p;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string here = detail::at(path, i);
        detail::expect_object(j[i], here, {"kpow", "npow", "coeff"});
        const long kp = detail::read_int(j[i]["kpow"], detail::at(here, "kpow"));
        const long np = detail::read_int(j[i]["npow"], detail::at(here, "npow"));
        if (kp < 0 || np < 0) {
            detail::fail(here, "negative exponent");
        }
        p.add_term(static_cast<int>(kp), static_cast<int>(np), rational_from_json(j[i]["coeff"], detail::at(here, "coeff")));
    }
    return p;
}

template <CoefficientRing R>
Json to_json(const SeriesH<R>& s)
{
    Json coeffs = Json::array();
    for (const auto& c : s.coeffs()) {
        coeffs.push_back(to_json(c));
    }
    return {{"order", s.order()}, {"coeffs", coeffs}};
}

inline SeriesQ series_q_from_json(const Json& j, std::string_view path = "$")
{
    detail::expect_object(j, path, {"order", "coeffs"});
    const int order = detail::read_order(j["order"], detail::at(path, "order"));
    const Json& cs = detail::expect_array(j["coeffs"], detail::at(path, "coeffs"));
    if (cs.size() > static_cast<std::size_t>(order) + 1) {
        detail::fail(path, "more coefficients than order+1");
    }
    std::vector<Rational> c;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        c.push_back(rational_from_json(cs[i], detail::at(detail::at(path, "coeffs"), i)));
    }
    return SeriesQ(order, std::move(c));
}

inline SeriesN series_n_from_json(const Json& j, std::string_view path = "$")
{
    detail::expect_object(j, path, {"order", "coeffs"});
    const int order = detail::read_order(j["order"], detail::at(path, "order"));
    const Json& cs = detail::expect_array(j["coeffs"], detail::at(path, "coeffs"));
    if (cs.size() > static_cast<std::size_t>(order) + 1) {
        detail::fail(path, "more coefficients than order+1");
    }
    std::vector<PolyN> c;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        c.push_back(poly_from_json(cs[i], detail::at(detail::at(path, "coeffs"), i)));
    }
    return SeriesN(order, std::move(c));
}

// ---------------------------------------------------------------------------
// Colourings and perturbations

inline Json to_json(const Colouring& psi)
{
    if (psi.is_closed_form()) {
        Json hc = Json::array();
        for (const auto& p : psi.closed().hcoeffs) {
            hc.push_back(to_json(p));
        }
        return {{"order", psi.order()}, {"kind", "closed"}, {"hcoeffs", hc}};
    }
    const auto& t = psi.table();
    Json values = Json::array();
    for (const auto& [kn, s] : t.values) {
        values.push_back({{"k", kn.first}, {"n", kn.second}, {"series", to_json(s)}});
    }
    return {{"order", psi.order()}, {"kind", "tabulated"}, {"kmax", t.kmax},
            {"nmin", t.nmin},       {"nmax", t.nmax},      {"values", values}};
}

/// Parses without certifying; the caller decides when to run the axiom check.
inline Colouring colouring_from_json(const Json& j, std::string_view path = "$")
{
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        detail::fail(path, "colouring needs a string \"kind\"");
    }
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "closed") {
        detail::expect_object(j, path, {"order", "kind", "hcoeffs"});
        const int order = detail::read_order(j["order"], detail::at(path, "order"));
        const Json& hj = detail::expect_array(j["hcoeffs"], detail::at(path, "hcoeffs"));
        if (hj.size() != static_cast<std::size_t>(order) + 1) {
            detail::fail(path, "hcoeffs must have order+1 entries");
        }
        std::vector<PolyKN> hc;
        for (std::size_t i = 0; i < hj.size(); ++i) {
            hc.push_back(bipoly_from_json(hj[i], detail::at(detail::at(path, "hcoeffs"), i)));
        }
        return Colouring::closed_form(std::move(hc));
    }
    if (kind == "tabulated") {
        detail::expect_object(j, path, {"order", "kind", "kmax", "nmin", "nmax", "values"});
        const int order = detail::read_order(j["order"], detail::at(path, "order"));
        Colouring::Tabulated t;
        t.kmax = detail::read_int(j["kmax"], detail::at(path, "kmax"));
        t.nmin = detail::read_int(j["nmin"], detail::at(path, "nmin"));
        t.nmax = detail::read_int(j["nmax"], detail::at(path, "nmax"));
        const Json& vs = detail::expect_array(j["values"], detail::at(path, "values"));
        for (std::size_t i = 0; i < vs.size(); ++i) {
            const std::string here = detail::at(detail::at(path, "values"), i);
            detail::expect_object(vs[i], here, {"k", "n", "series"});
            const long k = detail::read_int(vs[i]["k"], detail::at(here, "k"));
            const long n = detail::read_int(vs[i]["n"], detail::at(here, "n"));
            if (!t.values.emplace(std::make_pair(k, n), series_q_from_json(vs[i]["series"], detail::at(here, "series"))).second) {
                detail::fail(here, "duplicate entry");
            }
        }
        try {
            return Colouring::tabulated(order, std::move(t));
        } catch (const Error& e) {
            detail::fail(path, e.what());
        }
    }
    detail::fail(detail::at(path, "kind"), "expected \"closed\" or \"tabulated\"");
}

inline Json to_json(const Perturbation& p)
{
    Json terms = Json::array();
    for (const auto& [e, s] : p.terms) {
        terms.push_back({{"cpow", e.first}, {"wpow", e.second}, {"series", to_json(s)}});
    }
    return {{"order", p.order}, {"terms", terms}};
}

inline Perturbation perturbation_from_json(const Json& j, std::string_view path = "$")
{
    detail::expect_object(j, path, {"order", "terms"});
    Perturbation p;
    p.order = detail::read_order(j["order"], detail::at(path, "order"));
    const Json& ts = detail::expect_array(j["terms"], detail::at(path, "terms"));
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const std::string here = detail::at(detail::at(path, "terms"), i);
        detail::expect_object(ts[i], here, {"cpow", "wpow", "series"});
        const long c = detail::read_int(ts[i]["cpow"], detail::at(here, "cpow"));
        const long w = detail::read_int(ts[i]["wpow"], detail::at(here, "wpow"));
        if (c < 0 || w < 0) {
            detail::fail(here, "negative exponent");
        }
        SeriesQ s = series_q_from_json(ts[i]["series"], detail::at(here, "series"));
        if (s.order() != p.order) {
            detail::fail(here, "series order differs from the perturbation order");
        }
        if (!p.terms.emplace(std::make_pair(static_cast<int>(c), static_cast<int>(w)), std::move(s)).second) {
            detail::fail(here, "duplicate (cpow, wpow)");
        }
    }
    return p;
}

inline Json to_json(const AxiomReport& r)
{
    Json vs = Json::array();
    for (const auto& v : r.violations) {
        vs.push_back({{"axiom", std::string(to_string(v.axiom))}, {"k", v.k}, {"n", v.n}, {"horder", v.horder}});
    }
    return {{"passed", r.passed()}, {"symbolic", r.symbolic}, {"violations", vs}};
}

// ---------------------------------------------------------------------------
// Coefficient sequences

inline Json to_json(const CoeffSeq& f)
{
    Json entries = Json::array();
    for (const auto& e : f.entries) {
        entries.push_back(to_json(e));
    }
    return {{"d", f.d},
            {"order", f.order},
            {"kmax", f.kmax()},
            {"entries", entries},
            {"cutoff", f.cutoff ? Json(*f.cutoff) : Json(nullptr)},
            {"flags",
             {{"verma_type", f.flags.verma_type_verified},
              {"summable", f.flags.summable_verified},
              {"regular", f.flags.regular_verified}}}};
}

inline CoeffSeq coeff_seq_from_json(const Json& j, std::string_view path = "$")
{
    detail::expect_object(j, path, {"d", "order", "entries"}, {"kmax", "cutoff", "flags"});
    const long d = detail::read_int(j["d"], detail::at(path, "d"));
    if (d < 0) {
        detail::fail(detail::at(path, "d"), "must be non-negative");
    }
    const int order = detail::read_order(j["order"], detail::at(path, "order"));
    const Json& es = detail::expect_array(j["entries"], detail::at(path, "entries"));
    std::vector<SeriesN> entries;
    for (std::size_t i = 0; i < es.size(); ++i) {
        const std::string here = detail::at(detail::at(path, "entries"), i);
        SeriesN s = series_n_from_json(es[i], here);
        if (s.order() != order) {
            detail::fail(here, "entry order differs from the sequence order");
        }
        entries.push_back(std::move(s));
    }
    CoeffSeq f(static_cast<int>(d), order, std::move(entries));
    if (j.contains("kmax") && detail::read_int(j["kmax"], detail::at(path, "kmax")) != f.kmax()) {
        detail::fail(detail::at(path, "kmax"), "does not match d + (number of entries) - 1");
    }
    if (j.contains("cutoff") && !j["cutoff"].is_null()) {
        f.cutoff = static_cast<int>(detail::read_int(j["cutoff"], detail::at(path, "cutoff")));
    }
    if (j.contains("flags")) {
        const std::string fp = detail::at(path, "flags");
        detail::expect_object(j["flags"], fp, {}, {"verma_type", "summable", "regular"});
        const auto flag = [&](const char* key) {
            if (!j["flags"].contains(key)) {
                return false;
            }
            if (!j["flags"][key].is_boolean()) {
                detail::fail(detail::at(fp, key), "expected a boolean");
            }
            return j["flags"][key].get<bool>();
        };
        f.flags.verma_type_verified = flag("verma_type");
        f.flags.summable_verified = flag("summable");
        f.flags.regular_verified = flag("regular");
    }
    return f;
}

// ---------------------------------------------------------------------------
// Verma vectors, words and algebra elements

inline Json to_json(const VermaVector& v)
{
    Json terms = Json::array();
    for (const auto& [k, c] : v.terms) {
        terms.push_back({{"k", k}, {"coeff", to_json(c)}});
    }
    return {{"weight", v.weight ? Json(*v.weight) : Json("symbolic")}, {"order", v.order}, {"terms", terms}};
}

inline VermaVector verma_vector_from_json(const Json& j, std::string_view path = "$")
{
    detail::expect_object(j, path, {"weight", "order", "terms"});
    std::optional<long> weight;
    if (j["weight"].is_string()) {
        if (j["weight"].get<std::string>() != "symbolic") {
            detail::fail(detail::at(path, "weight"), "expected \"symbolic\" or an integer");
        }
    } else {
        weight = detail::read_int(j["weight"], detail::at(path, "weight"));
    }
    VermaVector v(weight, detail::read_order(j["order"], detail::at(path, "order")));
    const Json& ts = detail::expect_array(j["terms"], detail::at(path, "terms"));
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const std::string here = detail::at(detail::at(path, "terms"), i);
        detail::expect_object(ts[i], here, {"k", "coeff"});
        const long k = detail::read_int(ts[i]["k"], detail::at(here, "k"));
        if (k < 0) {
            detail::fail(detail::at(here, "k"), "negative basis index");
        }
        SeriesN c = series_n_from_json(ts[i]["coeff"], detail::at(here, "coeff"));
        if (c.order() != v.order) {
            detail::fail(here, "coefficient order differs from the vector order");
        }
        if (weight && !c.is_zero()) {
            for (int m = 0; m <= c.order(); ++m) {
                if (!c[m].is_constant()) {
                    detail::fail(here, "a concrete-weight vector needs constant coefficients");
                }
            }
        }
        v.add(static_cast<int>(k), c);
    }
    return v;
}

inline Json to_json(const Word& w)
{
    Json out = Json::array();
    for (Generator g : w) {
        out.push_back(std::string(to_string(g)));
    }
    return out;
}

inline Word word_from_json(const Json& j, std::string_view path = "$")
{
    detail::expect_array(j, path);
    Word w;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string()) {
            detail::fail(detail::at(path, i), "expected a generator name");
        }
        try {
            w.push_back(parse_generator(j[i].get<std::string>()));
        } catch (const Error& e) {
            detail::fail(detail::at(path, i), e.what());
        }
    }
    return w;
}

/// colouring: a built-in name ("natural", "q") or an inline colouring document.
inline Json to_json(const AlgebraElement& x, const Json& colouring)
{
    Json terms = Json::array();
    for (const auto& [key, p] : x.terms()) {
        terms.push_back({{"a", key.first}, {"b", key.second}, {"poly_series", to_json(p)}});
    }
    return {{"order", x.order()}, {"colouring", colouring}, {"terms", terms}};
}

/// The element's terms; the colouring field is returned raw for the caller to resolve.
inline std::pair<AlgebraElement, Json> algebra_element_from_json(const Json& j, std::string_view path = "$")
{
    detail::expect_object(j, path, {"order", "colouring", "terms"});
    AlgebraElement x(detail::read_order(j["order"], detail::at(path, "order")));
    const Json& ts = detail::expect_array(j["terms"], detail::at(path, "terms"));
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const std::string here = detail::at(detail::at(path, "terms"), i);
        detail::expect_object(ts[i], here, {"a", "b", "poly_series"});
        const long a = detail::read_int(ts[i]["a"], detail::at(here, "a"));
        const long b = detail::read_int(ts[i]["b"], detail::at(here, "b"));
        if (a < 0 || b < 0) {
            detail::fail(here, "negative exponent");
        }
        SeriesN p = series_n_from_json(ts[i]["poly_series"], detail::at(here, "poly_series"));
        if (p.order() != x.order()) {
            detail::fail(here, "series order differs from the element order");
        }
        x.add(static_cast<int>(a), static_cast<int>(b), p);
    }
    return {std::move(x), j["colouring"]};
}

/// Canonical text: two-space indentation, sorted keys, trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

} // namespace ckm::json
