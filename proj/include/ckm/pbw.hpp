#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "coeff_seq.hpp"
#include "colouring.hpp"
#include "error.hpp"
#include "generator.hpp"
#include "ltimes.hpp"
#include "series.hpp"

namespace ckm {

/// Sum of monomials (X-)^a (X+)^b p(H), keyed by (a, b); p is a series in h
/// whose coefficients are polynomials in H.
using PbwTerms = std::map<std::pair<int, int>, SeriesN>;

namespace detail {

inline void add_term(PbwTerms& terms, int a, int b, const SeriesN& p)
{
    if (p.is_zero()) {
        return;
    }
    auto [it, inserted] = terms.try_emplace({a, b}, p);
    if (!inserted) {
        it->second += p;
        if (it->second.is_zero()) {
            terms.erase(it);
        }
    }
}

// Zeroes every coefficient above h^budget.
inline SeriesN truncate_to(SeriesN s, int budget)
{
    for (int m = budget + 1; m <= s.order(); ++m) {
        s.set(m, PolyN());
    }
    return s;
}

} // namespace detail

/// The straightening relation X+X- = sum_{a <= a(M)} (X-)^a (X+)^a xi^a(H) of
/// one colouring, together with a memo of the normal forms of X+ (X-)^i.
///
/// Normal forms are computed modulo h^(budget+1) with a budget per call. A
/// straightening term with a >= 2 has xi^a of h-valuation at least 1, which
/// lowers the budget of the recursive calls it spawns; that is what makes the
/// rewriting terminate.
class StraighteningContext {
public:
    /// Solves the straightening equation of psi on the horizon kmax.
    static std::shared_ptr<const StraighteningContext> create(const Colouring& psi, int kmax = 12)
    {
        return from_solution(psi, solve_straightening(psi, kmax));
    }

    static std::shared_ptr<const StraighteningContext> from_solution(const Colouring& psi, CoeffSeq xi)
    {
        if (xi.entries.empty()) {
            throw Error(ErrorCode::MissingStraightening, "empty straightening sequence");
        }
        if (!xi.cutoff) {
            throw Error(ErrorCode::CutoffUnavailable, "straightening sequence has no certified cutoff");
        }
        if (xi.d != 0 || xi.order != psi.order()) {
            throw Error(ErrorCode::OrderMismatch, "straightening sequence does not match the colouring");
        }
        return std::shared_ptr<const StraighteningContext>(new StraighteningContext(psi, std::move(xi)));
    }

    const Colouring& colouring() const { return psi_; }
    const CoeffSeq& straightening() const { return xi_; }
    int order() const { return psi_.order(); }
    int cutoff() const { return *xi_.cutoff; }

    /// Normal form of X+ * terms, modulo h^(budget+1).
    PbwTerms left_xplus(const PbwTerms& terms, int budget) const
    {
        std::lock_guard lock(mutex_);
        return left_xplus_locked(terms, budget);
    }

    /// Normal form of X+ (X-)^i, modulo h^(budget+1).
    PbwTerms xplus_past(int i, int budget) const
    {
        std::lock_guard lock(mutex_);
        return commute_locked(i, budget);
    }

private:
    StraighteningContext(Colouring psi, CoeffSeq xi) : psi_(std::move(psi)), xi_(std::move(xi)) {}

    PbwTerms left_xplus_locked(const PbwTerms& terms, int budget) const
    {
        PbwTerms out;
        for (const auto& [key, t] : terms) {
            const auto [u, v] = key;
            const int vt = t.valuation();
            if (vt > budget) {
                continue;
            }
            if (u == 0) {
                detail::add_term(out, 0, v + 1, detail::truncate_to(t, budget));
                continue;
            }
            // X+ (X-)^u (X+)^v t(H) = [X+ (X-)^u] (X+)^v t(H), and s(H) (X+)^v = (X+)^v s(H+2v).
            for (const auto& [k2, s] : commute_locked(u, budget - vt)) {
                detail::add_term(out, k2.first, k2.second + v, detail::truncate_to(shifted(s, 2L * v) * t, budget));
            }
        }
        return out;
    }

    // X+ (X-)^i = sum_s (X-)^s [(X+)^s (X-)^(i-1)] xi^s(H - 2(i-1)).
    const PbwTerms& commute_locked(int i, int budget) const
    {
        const auto key = std::make_pair(i, budget);
        if (auto it = commute_memo_.find(key); it != commute_memo_.end()) {
            return it->second;
        }
        PbwTerms out;
        const int c = i - 1;
        for (int s = 0; s <= cutoff(); ++s) {
            const SeriesN& xs = xi_.at(s);
            const int vs = xs.valuation();
            if (vs > budget) {
                continue;
            }
            const SeriesN tail = shifted(xs, -2L * c);
            for (const auto& [k2, t] : raise_locked(s, c, budget - vs)) {
                detail::add_term(out, k2.first + s, k2.second, detail::truncate_to(t * tail, budget));
            }
        }
        return commute_memo_.emplace(key, std::move(out)).first->second;
    }

    // (X+)^s (X-)^c, modulo h^(budget+1).
    const PbwTerms& raise_locked(int s, int c, int budget) const
    {
        const auto key = std::make_tuple(s, c, budget);
        if (auto it = raise_memo_.find(key); it != raise_memo_.end()) {
            return it->second;
        }
        PbwTerms out;
        if (s == 0) {
            detail::add_term(out, c, 0, SeriesN::one(order()));
        } else {
            out = left_xplus_locked(raise_locked(s - 1, c, budget), budget);
        }
        return raise_memo_.emplace(key, std::move(out)).first->second;
    }

    Colouring psi_;
    CoeffSeq xi_;
    mutable std::recursive_mutex mutex_;
    mutable std::map<std::pair<int, int>, PbwTerms> commute_memo_;
    mutable std::map<std::tuple<int, int, int>, PbwTerms> raise_memo_;
};

using ContextPtr = std::shared_ptr<const StraighteningContext>;

/// An element of U_h(psi) in PBW normal form, sum (X-)^a (X+)^b p_{a,b}(H),
/// truncated modulo h^(M+1). The context is only needed for multiplication.
class AlgebraElement {
public:
    explicit AlgebraElement(int order, ContextPtr ctx = nullptr) : order_(order), ctx_(std::move(ctx))
    {
        if (ctx_ && ctx_->order() != order_) {
            throw Error(ErrorCode::OrderMismatch, "element order " + std::to_string(order_) + " vs context order " +
                                                      std::to_string(ctx_->order()));
        }
    }
    AlgebraElement(int order, PbwTerms terms, ContextPtr ctx = nullptr) : AlgebraElement(order, std::move(ctx))
    {
        for (const auto& [key, p] : terms) {
            add(key.first, key.second, p);
        }
    }

    static AlgebraElement one(int order, ContextPtr ctx = nullptr)
    {
        AlgebraElement x(order, std::move(ctx));
        x.add(0, 0, SeriesN::one(order));
        return x;
    }
    static AlgebraElement monomial(int a, int b, const SeriesN& p, ContextPtr ctx = nullptr)
    {
        AlgebraElement x(p.order(), std::move(ctx));
        x.add(a, b, p);
        return x;
    }

    int order() const { return order_; }
    const PbwTerms& terms() const { return terms_; }
    const ContextPtr& context() const { return ctx_; }

    void add(int a, int b, const SeriesN& p)
    {
        if (a < 0 || b < 0) {
            throw Error(ErrorCode::InputSchemaError, "negative exponent in a PBW monomial");
        }
        if (p.order() != order_) {
            throw Error(ErrorCode::OrderMismatch, "term of order " + std::to_string(p.order()) + " in an element of order " +
                                                      std::to_string(order_));
        }
        detail::add_term(terms_, a, b, p);
    }

    AlgebraElement with_context(ContextPtr ctx) const
    {
        AlgebraElement x(order_, terms_, std::move(ctx));
        return x;
    }

    bool is_zero() const { return terms_.empty(); }

    /// b - a when every term agrees on it (0 for the zero element).
    std::optional<int> degree() const
    {
        std::optional<int> d;
        for (const auto& [key, p] : terms_) {
            const int e = key.second - key.first;
            if (d && *d != e) {
                return std::nullopt;
            }
            d = e;
        }
        return d.value_or(0);
    }

    AlgebraElement& operator+=(const AlgebraElement& o)
    {
        merge_context(o);
        for (const auto& [key, p] : o.terms_) {
            add(key.first, key.second, p);
        }
        return *this;
    }
    AlgebraElement& operator-=(const AlgebraElement& o)
    {
        merge_context(o);
        for (const auto& [key, p] : o.terms_) {
            add(key.first, key.second, -p);
        }
        return *this;
    }
    AlgebraElement& operator*=(const Rational& s)
    {
        PbwTerms out;
        for (const auto& [key, p] : terms_) {
            detail::add_term(out, key.first, key.second, p * s);
        }
        terms_ = std::move(out);
        return *this;
    }

    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator-(AlgebraElement a) { return a *= Rational(-1); }
    friend AlgebraElement operator*(AlgebraElement a, const Rational& s) { return a *= s; }
    friend AlgebraElement operator*(const Rational& s, AlgebraElement a) { return a *= s; }

    /// Compares the normal forms; the contexts are not part of the value.
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b)
    {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }

private:
    void merge_context(const AlgebraElement& o)
    {
        if (o.order_ != order_) {
            throw Error(ErrorCode::OrderMismatch,
                        "orders " + std::to_string(order_) + " and " + std::to_string(o.order_));
        }
        if (!ctx_) {
            ctx_ = o.ctx_;
        } else if (o.ctx_ && o.ctx_ != ctx_ && !(o.ctx_->colouring() == ctx_->colouring())) {
            throw Error(ErrorCode::MixedContext, "elements of algebras with different colourings");
        }
    }

    int order_;
    PbwTerms terms_;
    ContextPtr ctx_;
};

inline bool is_zero(const AlgebraElement& x) { return x.is_zero(); }

/// H, X- or X+ as a single-term element.
inline AlgebraElement generator(Generator g, int order, ContextPtr ctx = nullptr)
{
    switch (g) {
        case Generator::H: return AlgebraElement::monomial(0, 0, SeriesN::constant(order, PolyN::variable()), ctx);
        case Generator::Xminus: return AlgebraElement::monomial(1, 0, SeriesN::one(order), ctx);
        case Generator::Xplus: return AlgebraElement::monomial(0, 1, SeriesN::one(order), ctx);
    }
    throw Error(ErrorCode::InputSchemaError, "unknown generator");
}

namespace detail {

inline ContextPtr resolve_context(const AlgebraElement& x, const AlgebraElement& y)
{
    if (x.order() != y.order()) {
        throw Error(ErrorCode::OrderMismatch,
                    "orders " + std::to_string(x.order()) + " and " + std::to_string(y.order()));
    }
    const ContextPtr& cx = x.context();
    const ContextPtr& cy = y.context();
    if (cx && cy && cx != cy && !(cx->colouring() == cy->colouring())) {
        throw Error(ErrorCode::MixedContext, "elements of algebras with different colourings");
    }
    ContextPtr ctx = cx ? cx : cy;
    if (!ctx) {
        throw Error(ErrorCode::MissingStraightening, "neither factor carries a straightening context");
    }
    return ctx;
}

} // namespace detail

/// g * x in normal form.
inline AlgebraElement left_multiply(Generator g, const AlgebraElement& x)
{
    PbwTerms out;
    switch (g) {
        case Generator::H:
            // H (X-)^a (X+)^b = (X-)^a (X+)^b (H - 2a + 2b)
            for (const auto& [key, p] : x.terms()) {
                const PolyN lin = PolyN::linear(Rational(1), Rational(2L * (key.second - key.first)));
                detail::add_term(out, key.first, key.second, p.scaled(lin));
            }
            break;
        case Generator::Xminus:
            for (const auto& [key, p] : x.terms()) {
                detail::add_term(out, key.first + 1, key.second, p);
            }
            break;
        case Generator::Xplus: {
            if (!x.context()) {
                throw Error(ErrorCode::MissingStraightening, "X+ needs a straightening context");
            }
            out = x.context()->left_xplus(x.terms(), x.order());
            break;
        }
    }
    return AlgebraElement(x.order(), std::move(out), x.context());
}

/// Normal form of x * y.
inline AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y)
{
    const ContextPtr ctx = detail::resolve_context(x, y);
    const int order = x.order();
    PbwTerms out;
    for (const auto& [kx, p] : x.terms()) {
        const auto [a, b] = kx;
        // p(H) (X-)^c (X+)^d = (X-)^c (X+)^d p(H - 2c + 2d)
        PbwTerms cur;
        for (const auto& [ky, r] : y.terms()) {
            detail::add_term(cur, ky.first, ky.second, shifted(p, 2L * (ky.second - ky.first)) * r);
        }
        for (int i = 0; i < b; ++i) {
            cur = ctx->left_xplus(cur, order);
        }
        for (const auto& [key, t] : cur) {
            detail::add_term(out, key.first + a, key.second, t);
        }
    }
    return AlgebraElement(order, std::move(out), ctx);
}

inline AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) { return multiply(x, y); }

/// Normal form of the product of the letters of w, leftmost letter outermost.
inline AlgebraElement from_word(const Word& w, const ContextPtr& ctx)
{
    if (!ctx) {
        throw Error(ErrorCode::MissingStraightening, "from_word needs a straightening context");
    }
    AlgebraElement x = AlgebraElement::one(ctx->order(), ctx);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        x = left_multiply(*it, x);
    }
    return x;
}

struct QuantumRelationReport {
    bool result = false;
    AlgebraElement bracket;
    SeriesN expected;
};

/// Normal form of [X+, X-] in U_h(psi_q) compared with the single term [H]_q.
inline QuantumRelationReport quantum_relation_report(int order, int kmax = 12)
{
    const ContextPtr ctx = StraighteningContext::create(q_colouring(order), kmax);
    AlgebraElement bracket = from_word({Generator::Xplus, Generator::Xminus}, ctx) -
                             from_word({Generator::Xminus, Generator::Xplus}, ctx);
    SeriesN expected = qnumber(symbolic, order);
    const bool ok = bracket == AlgebraElement::monomial(0, 0, expected);
    return {ok, std::move(bracket), std::move(expected)};
}

inline bool quantum_relation_check(int order) { return quantum_relation_report(order).result; }

/// The image of X+ under the b-trivialization of U_h(psi):
///   x = sum_{a >= 1} (X-)^(a-1) (X+)^a xi^a(H),  N |x xi = psi,
/// as an element of the classical algebra. Exact on b_k for k <= kmax.
inline AlgebraElement b_trivialization_image(const Colouring& psi, int kmax)
{
    const CoeffSeq xi = solve_b_trivialization(psi, kmax);
    const ContextPtr ctx = StraighteningContext::create(natural_colouring(psi.order()), kmax);
    AlgebraElement x(psi.order(), ctx);
    const int last = xi.cutoff ? std::min(*xi.cutoff, xi.kmax()) : xi.kmax();
    for (int a = 1; a <= last; ++a) {
        x.add(a - 1, a, xi.at(a));
    }
    return x;
}

} // namespace ckm
