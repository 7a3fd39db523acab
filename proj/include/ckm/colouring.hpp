#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "bipoly.hpp"
#include "error.hpp"
#include "series.hpp"

namespace ckm {

/// A deformation psi^k(n) of the classical coefficients k(n-k+1) of the X+
/// action on Verma modules.
///
/// Regular colourings are held in closed form: one polynomial in (k, n) per
/// h-order. Arbitrary colourings are held as a table of series on a finite
/// (k, n) window; those can be checked but not solved against.
class Colouring {
public:
    struct ClosedForm {
        std::vector<PolyKN> hcoeffs;
    };
    struct Tabulated {
        long kmax = 1;
        long nmin = 0;
        long nmax = 0;
        std::map<std::pair<long, long>, SeriesQ> values;
    };

    /// Rejects any h^0 layer other than k(n-k+1).
    static Colouring closed_form(std::vector<PolyKN> hcoeffs)
    {
        if (hcoeffs.empty()) {
            throw Error(ErrorCode::InputSchemaError, "closed-form colouring needs at least the h^0 layer");
        }
        if (!(hcoeffs[0] == classical())) {
            throw Error(ErrorCode::AxiomViolation,
                        "C1: h^0 layer is " + hcoeffs[0].str() + ", expected k(n-k+1)");
        }
        Colouring c;
        c.order_ = static_cast<int>(hcoeffs.size()) - 1;
        c.data_ = ClosedForm{std::move(hcoeffs)};
        return c;
    }

    /// Every (k, n) with 1 <= k <= kmax and nmin <= n <= nmax must be present.
    static Colouring tabulated(int order, Tabulated table)
    {
        if (table.kmax < 1 || table.nmin > table.nmax) {
            throw Error(ErrorCode::InputSchemaError, "empty tabulation window");
        }
        for (long k = 1; k <= table.kmax; ++k) {
            for (long n = table.nmin; n <= table.nmax; ++n) {
                auto it = table.values.find({k, n});
                if (it == table.values.end()) {
                    throw Error(ErrorCode::InputSchemaError, "tabulated colouring misses (k=" + std::to_string(k) +
                                                                 ", n=" + std::to_string(n) + ")");
                }
                if (it->second.order() != order) {
                    throw Error(ErrorCode::OrderMismatch, "tabulated value at (k=" + std::to_string(k) +
                                                              ", n=" + std::to_string(n) + ") has order " +
                                                              std::to_string(it->second.order()));
                }
            }
        }
        Colouring c;
        c.order_ = order;
        c.data_ = std::move(table);
        return c;
    }

    /// k(n-k+1)
    static PolyKN classical()
    {
        static const PolyKN c = PolyKN::k() * (PolyKN::n() - PolyKN::k() + PolyKN(1));
        return c;
    }

    int order() const { return order_; }
    bool is_closed_form() const { return std::holds_alternative<ClosedForm>(data_); }
    const ClosedForm& closed() const
    {
        if (const auto* c = std::get_if<ClosedForm>(&data_)) {
            return *c;
        }
        throw Error(ErrorCode::SymbolicUnsupported, "colouring is tabulated, not closed form");
    }
    const Tabulated& table() const { return std::get<Tabulated>(data_); }

    /// Set only by certify() after a passing axiom check.
    bool axioms_verified() const { return verified_; }

    friend Colouring certify(Colouring psi, long kmax, long nmin, long nmax);

    friend bool operator==(const Colouring& a, const Colouring& b)
    {
        if (a.order_ != b.order_ || a.data_.index() != b.data_.index()) {
            return false;
        }
        if (a.is_closed_form()) {
            return a.closed().hcoeffs == b.closed().hcoeffs;
        }
        const auto& ta = a.table();
        const auto& tb = b.table();
        return ta.kmax == tb.kmax && ta.nmin == tb.nmin && ta.nmax == tb.nmax && ta.values == tb.values;
    }

private:
    Colouring() = default;

    int order_ = 0;
    std::variant<ClosedForm, Tabulated> data_;
    bool verified_ = false;
};

/// Returns psi marked as axiom-verified, or throws AxiomViolation. The window
/// only matters for tabulated colourings.
inline Colouring certify(Colouring psi, long kmax = 12, long nmin = -12, long nmax = 12);

/// psi^k(n) at a concrete n.
inline SeriesQ evaluate(const Colouring& psi, long k, long n)
{
    if (psi.is_closed_form()) {
        const auto& hc = psi.closed().hcoeffs;
        SeriesQ out(psi.order());
        const Rational kr(k), nr(n);
        for (int m = 0; m <= psi.order(); ++m) {
            out.set(m, hc[static_cast<std::size_t>(m)].eval(kr, nr));
        }
        return out;
    }
    const auto& t = psi.table();
    auto it = t.values.find({k, n});
    if (it == t.values.end()) {
        throw Error(ErrorCode::OutOfWindow, "(k=" + std::to_string(k) + ", n=" + std::to_string(n) +
                                                ") outside the tabulated window k<=" + std::to_string(t.kmax) +
                                                ", " + std::to_string(t.nmin) + "<=n<=" + std::to_string(t.nmax));
    }
    return it->second;
}

/// psi^k(n) with n left symbolic: a series over Q[n].
inline SeriesN evaluate(const Colouring& psi, long k, symbolic_t)
{
    if (!psi.is_closed_form()) {
        throw Error(ErrorCode::SymbolicUnsupported, "symbolic n on a tabulated colouring");
    }
    const auto& hc = psi.closed().hcoeffs;
    SeriesN out(psi.order());
    for (int m = 0; m <= psi.order(); ++m) {
        out.set(m, hc[static_cast<std::size_t>(m)].eval_k(k));
    }
    return out;
}

inline Colouring natural_colouring(int order)
{
    std::vector<PolyKN> hc(static_cast<std::size_t>(order) + 1);
    hc[0] = Colouring::classical();
    return certify(Colouring::closed_form(std::move(hc)));
}

/// psi^k(n) = [k]_q [n-k+1]_q with q = exp(h).
inline Colouring q_colouring(int order)
{
    const SeriesN q = qnumber(symbolic, order);
    const PolyKN k = PolyKN::k();
    const PolyKN m = PolyKN::n() - PolyKN::k() + PolyKN(1);
    std::vector<PolyKN> qk, qm;
    for (int i = 0; i <= order; ++i) {
        qk.push_back(compose(q[i], k));
        qm.push_back(compose(q[i], m));
    }
    std::vector<PolyKN> hc(static_cast<std::size_t>(order) + 1);
    for (int i = 0; i <= order; ++i) {
        for (int j = 0; i + j <= order; ++j) {
            if (!qk[static_cast<std::size_t>(i)].is_zero() && !qm[static_cast<std::size_t>(j)].is_zero()) {
                hc[static_cast<std::size_t>(i + j)] += qk[static_cast<std::size_t>(i)] * qm[static_cast<std::size_t>(j)];
            }
        }
    }
    return certify(Colouring::closed_form(std::move(hc)));
}

/// A polynomial P(c, w) with Q[[h]] coefficients, in the two Verma-invariant
/// slots c = k(n-k+1) and w = n-2k.
struct Perturbation {
    int order = 0;
    std::map<std::pair<int, int>, SeriesQ> terms; // (c-power, w-power) -> coefficient
};

/// A reproducible random perturbation of total (c, w)-degree <= degree. Every
/// coefficient is p/q with -3 <= p <= 3 and 1 <= q <= 3, drawn from the raw
/// mt19937_64 stream so the result is identical on every platform.
inline Perturbation random_perturbation(std::uint64_t seed, int order, int degree = 2)
{
    std::mt19937_64 rng(seed);
    Perturbation p;
    p.order = order;
    for (int i = 0; i <= degree; ++i) {
        for (int j = 0; i + j <= degree; ++j) {
            SeriesQ s(order);
            for (int m = 0; m < order; ++m) {
                const long num = static_cast<long>(rng() % 7) - 3;
                const long den = static_cast<long>(rng() % 3) + 1;
                s.set(m, Rational(num, den));
            }
            if (!s.is_zero()) {
                p.terms.emplace(std::make_pair(i, j), std::move(s));
            }
        }
    }
    return p;
}

// ---------------------------------------------------------------------------
// Axiom checks

enum class Axiom { C1, C2, C3 };

constexpr std::string_view to_string(Axiom a) noexcept
{
    switch (a) {
        case Axiom::C1: return "C1";
        case Axiom::C2: return "C2";
        case Axiom::C3: return "C3";
    }
    return "?";
}

struct AxiomViolation {
    Axiom axiom;
    long k;     // the axiom's own k (for C2 this is n+1)
    long n;
    int horder; // first h-order at which the identity fails

    friend bool operator==(const AxiomViolation&, const AxiomViolation&) = default;
};

struct AxiomReport {
    bool symbolic = false; // true when checked as polynomial identities
    std::vector<AxiomViolation> violations;

    bool passed() const { return violations.empty(); }
    bool has(Axiom a, long k, long n) const
    {
        return std::any_of(violations.begin(), violations.end(),
                           [&](const AxiomViolation& v) { return v.axiom == a && v.k == k && v.n == n; });
    }
};

namespace detail {

// Finds (k >= kmin, n >= 0) where the nonzero polynomial p does not vanish.
// A nonzero polynomial cannot vanish on a grid wider than its degrees.
inline std::pair<long, long> nonvanishing_point(const PolyKN& p, long kmin)
{
    const long dk = std::max(p.degree_k(), 0);
    const long dn = std::max(p.degree_n(), 0);
    for (long n = 0; n <= dn; ++n) {
        for (long k = kmin; k <= kmin + dk; ++k) {
            if (!p.eval(Rational(k), Rational(n)).is_zero()) {
                return {k, n};
            }
        }
    }
    return {kmin, 0};
}

inline AxiomReport check_closed_form(const Colouring& psi)
{
    AxiomReport report;
    report.symbolic = true;
    const auto& hc = psi.closed().hcoeffs;
    const PolyKN k = PolyKN::k();
    const PolyKN n = PolyKN::n();
    if (!(hc[0] == Colouring::classical())) {
        auto [wk, wn] = nonvanishing_point(hc[0] - Colouring::classical(), 1);
        report.violations.push_back({Axiom::C1, wk, wn, 0});
    }
    // C2: substituting k -> n+1 must give the zero polynomial.
    for (int m = 0; m <= psi.order(); ++m) {
        PolyKN c2 = hc[static_cast<std::size_t>(m)].substitute(n + PolyKN(1), n);
        if (!c2.is_zero()) {
            auto [wk, wn] = nonvanishing_point(c2, 1);
            report.violations.push_back({Axiom::C2, wn + 1, wn, m});
            break;
        }
    }
    // C3: psi^{n+k+1}(n) = psi^k(-n-2) as polynomials in (k, n).
    for (int m = 0; m <= psi.order(); ++m) {
        const PolyKN& p = hc[static_cast<std::size_t>(m)];
        PolyKN diff = p.substitute(n + k + PolyKN(1), n) - p.substitute(k, -n - PolyKN(2));
        if (!diff.is_zero()) {
            auto [wk, wn] = nonvanishing_point(diff, 1);
            report.violations.push_back({Axiom::C3, wk, wn, m});
            break;
        }
    }
    return report;
}

inline AxiomReport check_tabulated(const Colouring& psi, long kmax, long nmin, long nmax)
{
    AxiomReport report;
    const auto& t = psi.table();
    const long klim = std::min(kmax, t.kmax);
    const long nlo = std::max(nmin, t.nmin);
    const long nhi = std::min(nmax, t.nmax);
    auto in_window = [&](long k, long n) { return k >= 1 && k <= klim && n >= nlo && n <= nhi; };
    auto first_diff = [](const SeriesQ& a, const SeriesQ& b) {
        for (int m = 0; m <= a.order(); ++m) {
            if (!(a[m] == b[m])) {
                return m;
            }
        }
        return -1;
    };
    for (long k = 1; k <= klim; ++k) {
        for (long n = nlo; n <= nhi; ++n) {
            const Rational expected = Colouring::classical().eval(Rational(k), Rational(n));
            if (!(t.values.at({k, n})[0] == expected)) {
                report.violations.push_back({Axiom::C1, k, n, 0});
            }
        }
    }
    for (long n = std::max(nlo, 0L); n <= nhi; ++n) {
        if (!in_window(n + 1, n)) {
            continue;
        }
        const SeriesQ& v = t.values.at({n + 1, n});
        if (!v.is_zero()) {
            report.violations.push_back({Axiom::C2, n + 1, n, v.valuation()});
        }
    }
    for (long n = std::max(nlo, 0L); n <= nhi; ++n) {
        for (long k = 1; k <= klim; ++k) {
            if (!in_window(n + k + 1, n) || !in_window(k, -n - 2)) {
                continue;
            }
            int m = first_diff(t.values.at({n + k + 1, n}), t.values.at({k, -n - 2}));
            if (m >= 0) {
                report.violations.push_back({Axiom::C3, k, n, m});
            }
        }
    }
    return report;
}

} // namespace detail

/// Closed forms are checked as polynomial identities, hence for all (k, n) at
/// once; the window only bounds tabulated checks.
inline AxiomReport check_axioms(const Colouring& psi, long kmax, long nmin, long nmax)
{
    if (psi.is_closed_form()) {
        return detail::check_closed_form(psi);
    }
    return detail::check_tabulated(psi, kmax, nmin, nmax);
}

inline Colouring certify(Colouring psi, long kmax, long nmin, long nmax)
{
    AxiomReport r = check_axioms(psi, kmax, nmin, nmax);
    if (!r.passed()) {
        const auto& v = r.violations.front();
        throw Error(ErrorCode::AxiomViolation, std::string(to_string(v.axiom)) + " fails at (k=" +
                                                   std::to_string(v.k) + ", n=" + std::to_string(v.n) +
                                                   ") from h^" + std::to_string(v.horder));
    }
    psi.verified_ = true;
    return psi;
}

/// psi^k(n) = c * (1 + h * P(c, w)). Both c and w are invariant under the two
/// Verma substitutions, so C2 and C3 hold identically; certify() re-checks it.
inline Colouring perturbed_colouring(const Perturbation& p)
{
    const int order = p.order;
    const PolyKN c = Colouring::classical();
    const PolyKN w = PolyKN::n() - PolyKN(2) * PolyKN::k();
    std::vector<PolyKN> cpow{PolyKN(1)}, wpow{PolyKN(1)};
    std::vector<PolyKN> hc(static_cast<std::size_t>(order) + 1);
    hc[0] = c;
    for (const auto& [e, series] : p.terms) {
        if (series.order() != order) {
            throw Error(ErrorCode::OrderMismatch, "perturbation coefficient of order " +
                                                      std::to_string(series.order()) + ", expected " +
                                                      std::to_string(order));
        }
        while (static_cast<int>(cpow.size()) <= e.first) {
            cpow.push_back(cpow.back() * c);
        }
        while (static_cast<int>(wpow.size()) <= e.second) {
            wpow.push_back(wpow.back() * w);
        }
        const PolyKN mono = c * cpow[static_cast<std::size_t>(e.first)] * wpow[static_cast<std::size_t>(e.second)];
        for (int m = 1; m <= order; ++m) {
            hc[static_cast<std::size_t>(m)] += mono * series[m - 1];
        }
    }
    return certify(Colouring::closed_form(std::move(hc)));
}

} // namespace ckm
