#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "coeff_seq.hpp"
#include "colouring.hpp"
#include "error.hpp"
#include "generator.hpp"
#include "pbw.hpp"
#include "series.hpp"

namespace ckm {

/// A finitely supported vector sum_k c_k b_k. With a concrete weight the
/// coefficients are constant polynomials; with a symbolic weight they are
/// polynomials in n.
struct VermaVector {
    std::optional<long> weight; // nullopt: symbolic highest weight n
    int order = 0;
    std::map<int, SeriesN> terms;

    VermaVector() = default;
    VermaVector(std::optional<long> w, int ord) : weight(w), order(ord) {}

    static VermaVector basis(int k, std::optional<long> w, int ord)
    {
        VermaVector v(w, ord);
        v.add(k, SeriesN::one(ord));
        return v;
    }

    bool symbolic() const { return !weight.has_value(); }
    bool is_zero() const { return terms.empty(); }

    void add(int k, const SeriesN& c)
    {
        if (k < 0) {
            throw Error(ErrorCode::OutOfWindow, "negative basis index");
        }
        if (c.order() != order) {
            throw Error(ErrorCode::OrderMismatch, "coefficient of order " + std::to_string(c.order()) +
                                                      " in a vector of order " + std::to_string(order));
        }
        if (c.is_zero()) {
            return;
        }
        auto [it, inserted] = terms.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                terms.erase(it);
            }
        }
    }

    VermaVector& operator+=(const VermaVector& o)
    {
        if (o.weight != weight || o.order != order) {
            throw Error(ErrorCode::OrderMismatch, "adding vectors of different modules");
        }
        for (const auto& [k, c] : o.terms) {
            add(k, c);
        }
        return *this;
    }
    VermaVector& operator*=(const Rational& s)
    {
        std::map<int, SeriesN> out;
        for (auto& [k, c] : terms) {
            SeriesN t = c * s;
            if (!t.is_zero()) {
                out.emplace(k, std::move(t));
            }
        }
        terms = std::move(out);
        return *this;
    }
    friend VermaVector operator+(VermaVector a, const VermaVector& b) { return a += b; }
    friend VermaVector operator*(const Rational& s, VermaVector a) { return a *= s; }

    friend bool operator==(const VermaVector&, const VermaVector&) = default;
};

/// V_h(n, psi).
struct DeformedVerma {
    Colouring psi;
    std::optional<long> n;
};
/// The finite-dimensional simple module S(n), n >= 0, basis b_0..b_n.
struct SimpleModule {
    long n = 0;
};
/// V(n) with the classical coefficients k(n-k+1).
struct ClassicalVerma {
    std::optional<long> n;
};

using ModuleSpec = std::variant<DeformedVerma, SimpleModule, ClassicalVerma>;

inline std::optional<long> module_weight(const ModuleSpec& m)
{
    return std::visit([](const auto& s) -> std::optional<long> { return s.n; }, m);
}

namespace detail {

inline SeriesN constant_series(int order, const Rational& c) { return SeriesN::constant(order, PolyN(c)); }

// n - 2k, or its value at the concrete weight.
inline PolyN weight_of(const std::optional<long>& n, int k)
{
    if (n) {
        return PolyN(Rational(*n - 2L * k));
    }
    return PolyN::linear(Rational(1), Rational(-2L * k));
}

// k(n-k+1) as a constant series or a series in n.
inline SeriesN classical_coefficient(const std::optional<long>& n, int k, int order)
{
    if (n) {
        return constant_series(order, Rational(k) * Rational(*n - k + 1));
    }
    return SeriesN::constant(order, PolyN::linear(Rational(k), Rational(static_cast<long>(k) * (1 - k))));
}

inline SeriesN xplus_coefficient(const ModuleSpec& m, int k, int order)
{
    if (const auto* dv = std::get_if<DeformedVerma>(&m)) {
        if (dv->psi.order() != order) {
            throw Error(ErrorCode::OrderMismatch, "vector order " + std::to_string(order) + " vs colouring order " +
                                                      std::to_string(dv->psi.order()));
        }
        if (dv->n) {
            return lift(evaluate(dv->psi, k, *dv->n));
        }
        return evaluate(dv->psi, k, symbolic);
    }
    return classical_coefficient(module_weight(m), k, order);
}

inline void check_compatible(const VermaVector& v, const ModuleSpec& m)
{
    if (const auto* s = std::get_if<SimpleModule>(&m)) {
        if (s->n < 0) {
            throw Error(ErrorCode::InputSchemaError, "simple module S(n) needs n >= 0");
        }
        if (!v.terms.empty() && v.terms.rbegin()->first > s->n) {
            throw Error(ErrorCode::OutOfWindow, "vector outside S(" + std::to_string(s->n) + ")");
        }
    }
    if (const auto* dv = std::get_if<DeformedVerma>(&m); dv && !dv->n && !dv->psi.is_closed_form()) {
        throw Error(ErrorCode::SymbolicUnsupported, "symbolic weight needs a closed-form colouring");
    }
    if (v.weight != module_weight(m)) {
        throw Error(ErrorCode::InputSchemaError, "vector weight does not match the module");
    }
}

} // namespace detail

/// H b_k = (n-2k) b_k,  X- b_k = b_{k+1} (0 at k = n in S(n)),  X+ b_k = c^k(n) b_{k-1}
/// with c = psi for V_h(n, psi) and c^k(n) = k(n-k+1) otherwise.
inline VermaVector act_generator(Generator g, const VermaVector& v, const ModuleSpec& m)
{
    detail::check_compatible(v, m);
    VermaVector out(v.weight, v.order);
    for (const auto& [k, c] : v.terms) {
        switch (g) {
            case Generator::H: out.add(k, c.scaled(detail::weight_of(v.weight, k))); break;
            case Generator::Xminus: {
                const auto* s = std::get_if<SimpleModule>(&m);
                if (!s || k < s->n) {
                    out.add(k + 1, c);
                }
                break;
            }
            case Generator::Xplus:
                if (k > 0) {
                    out.add(k - 1, detail::xplus_coefficient(m, k, v.order) * c);
                }
                break;
        }
    }
    return out;
}

/// Acts with the letters of w, rightmost first.
inline VermaVector act_word(const Word& w, VermaVector v, const ModuleSpec& m)
{
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        v = act_generator(*it, v, m);
    }
    return v;
}

/// A rational combination of words: an element of the free algebra, not
/// reduced to normal form.
struct WordSum {
    std::vector<std::pair<Rational, Word>> terms;

    WordSum& add(const Rational& c, Word w)
    {
        terms.emplace_back(c, std::move(w));
        return *this;
    }
};

inline VermaVector act_word_sum(const WordSum& x, const VermaVector& v, const ModuleSpec& m)
{
    VermaVector out(v.weight, v.order);
    for (const auto& [c, w] : x.terms) {
        out += c * act_word(w, v, m);
    }
    return out;
}

namespace detail {

// p(H) b_k = p(n - 2k) b_k, for p a series in H.
inline SeriesN h_value(const SeriesN& p, const std::optional<long>& n, int k)
{
    if (n) {
        return lift(eval(p, Rational(*n - 2L * k)));
    }
    return shifted(p, -2L * k);
}

} // namespace detail

/// x.v for x in normal form. Only terms with b <= k reach b_k, so the sum is finite.
inline VermaVector act_element(const AlgebraElement& x, const VermaVector& v, const ModuleSpec& m)
{
    detail::check_compatible(v, m);
    if (x.order() != v.order) {
        throw Error(ErrorCode::OrderMismatch, "element and vector orders differ");
    }
    VermaVector out(v.weight, v.order);
    for (const auto& [k, c] : v.terms) {
        for (const auto& [key, p] : x.terms()) {
            const auto [a, b] = key;
            if (b > k) {
                continue;
            }
            VermaVector w(v.weight, v.order);
            w.add(k, detail::h_value(p, v.weight, k) * c);
            for (int i = 0; i < b; ++i) {
                w = act_generator(Generator::Xplus, w, m);
            }
            for (int i = 0; i < a; ++i) {
                w = act_generator(Generator::Xminus, w, m);
            }
            out += w;
        }
    }
    return out;
}

/// psi(x): the sequence with x.b_k = psi(x)^k(n) b_{k-d} in V_h(n, psi) for
/// symbolic n, on max(d, 0) <= k <= kmax. The Verma-type flag records the
/// outcome of check_verma_type on the window.
inline CoeffSeq symbol_of(const AlgebraElement& x, const Colouring& psi, int kmax)
{
    const std::optional<int> d = x.degree();
    if (!d) {
        throw Error(ErrorCode::NotHomogeneous, "element mixes degrees");
    }
    const int dplus = std::max(*d, 0);
    const ModuleSpec m = DeformedVerma{psi, std::nullopt};
    std::vector<SeriesN> entries;
    for (int k = dplus; k <= kmax; ++k) {
        const VermaVector r = act_element(x, VermaVector::basis(k, std::nullopt, x.order()), m);
        SeriesN c(x.order());
        for (const auto& [j, s] : r.terms) {
            if (j != k - *d) {
                throw Error(ErrorCode::NotHomogeneous, "image of b_" + std::to_string(k) + " leaves the expected index");
            }
            c = s;
        }
        entries.push_back(std::move(c));
    }
    CoeffSeq out(dplus, x.order(), std::move(entries));
    out.flags.regular_verified = true;
    out.flags.verma_type_verified = check_verma_type(out, kmax).passed();
    return out;
}

/// True iff x.b_k = 0 in V_h(n, psi) for symbolic n and every k <= kmax.
/// A certificate up to the (kmax, M) horizon only.
inline bool kills_all_vermas(const AlgebraElement& x, const Colouring& psi, int kmax)
{
    const ModuleSpec m = DeformedVerma{psi, std::nullopt};
    for (int k = 0; k <= kmax; ++k) {
        if (!act_element(x, VermaVector::basis(k, std::nullopt, x.order()), m).is_zero()) {
            return false;
        }
    }
    return true;
}

inline bool kills_all_vermas(const WordSum& x, const Colouring& psi, int kmax)
{
    const ModuleSpec m = DeformedVerma{psi, std::nullopt};
    for (int k = 0; k <= kmax; ++k) {
        if (!act_word_sum(x, VermaVector::basis(k, std::nullopt, psi.order()), m).is_zero()) {
            return false;
        }
    }
    return true;
}

/// True iff x acts by zero on S(n) for every 0 <= n <= nmax.
inline bool kills_all_simples(const WordSum& x, int order, long nmax)
{
    for (long n = 0; n <= nmax; ++n) {
        const ModuleSpec m = SimpleModule{n};
        for (int k = 0; k <= n; ++k) {
            if (!act_word_sum(x, VermaVector::basis(k, n, order), m).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

inline bool kills_all_simples(const AlgebraElement& x, long nmax)
{
    for (long n = 0; n <= nmax; ++n) {
        const ModuleSpec m = SimpleModule{n};
        for (int k = 0; k <= n; ++k) {
            if (!act_element(x, VermaVector::basis(k, n, x.order()), m).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

/// True iff b_k -> b_{n+1+k}, from V_h(-n-2, psi) to V_h(n, psi), commutes
/// with H, X- and X+ on b_0..b_kmax.
inline bool verma_intertwiner_check(const Colouring& psi, long n, int kmax)
{
    const int order = psi.order();
    const ModuleSpec source = DeformedVerma{psi, -n - 2};
    const ModuleSpec target = DeformedVerma{psi, n};
    const auto embed = [&](const VermaVector& v) {
        VermaVector out(n, order);
        for (const auto& [k, c] : v.terms) {
            out.add(static_cast<int>(n + 1 + k), c);
        }
        return out;
    };
    for (int k = 0; k <= kmax; ++k) {
        const VermaVector bk = VermaVector::basis(k, -n - 2, order);
        for (Generator g : {Generator::H, Generator::Xminus, Generator::Xplus}) {
            if (!(embed(act_generator(g, bk, source)) == act_generator(g, embed(bk), target))) {
                return false;
            }
        }
    }
    return true;
}

} // namespace ckm
