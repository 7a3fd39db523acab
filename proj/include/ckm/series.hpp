#pragma once

#include <concepts>
#include <string>
#include <utility>
#include <vector>

#include "bipoly.hpp"
#include "error.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace ckm {

/// Coefficient rings a truncated series may range over.
template <class R>
concept CoefficientRing = requires(R a, const R& b, const Rational& s) {
    { a + b } -> std::convertible_to<R>;
    { a - b } -> std::convertible_to<R>;
    { a * b } -> std::convertible_to<R>;
    { a * s } -> std::convertible_to<R>;
    { -a } -> std::convertible_to<R>;
    { is_zero(b) } -> std::convertible_to<bool>;
    { a == b } -> std::convertible_to<bool>;
};

/// Tag selecting the symbolic (polynomial) variant of an operation.
struct symbolic_t {
    explicit symbolic_t() = default;
};
inline constexpr symbolic_t symbolic{};

/// Power series in h truncated at a fixed order M: exactly M+1 coefficients,
/// and every identity is asserted modulo h^(M+1).
template <CoefficientRing R>
class SeriesH {
public:
    using coefficient_type = R;

    SeriesH() : c_(1) {}
    explicit SeriesH(int order) : c_(checked_length(order)) {}
    SeriesH(int order, std::vector<R> coeffs) : c_(std::move(coeffs))
    {
        const std::size_t len = checked_length(order);
        if (c_.size() > len) {
            throw Error(ErrorCode::OrderMismatch, "series of order " + std::to_string(order) + " given " +
                                                      std::to_string(c_.size()) + " coefficients");
        }
        c_.resize(len);
    }

    static SeriesH constant(int order, R value)
    {
        SeriesH s(order);
        s.c_[0] = std::move(value);
        return s;
    }
    static SeriesH one(int order) { return constant(order, R(1)); }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const R& operator[](int m) const { return c_[static_cast<std::size_t>(m)]; }
    const std::vector<R>& coeffs() const { return c_; }
    void set(int m, R value) { c_[static_cast<std::size_t>(m)] = std::move(value); }

    bool is_zero() const
    {
        for (const auto& x : c_) {
            if (!ckm::is_zero(x)) {
                return false;
            }
        }
        return true;
    }

    /// Index of the first nonzero coefficient, or order()+1 for the zero series.
    int valuation() const
    {
        for (std::size_t m = 0; m < c_.size(); ++m) {
            if (!ckm::is_zero(c_[m])) {
                return static_cast<int>(m);
            }
        }
        return order() + 1;
    }

    /// Reduction modulo h^(new_order+1); new_order must not exceed order().
    SeriesH truncated(int new_order) const
    {
        if (new_order > order()) {
            throw Error(ErrorCode::OrderMismatch, "cannot extend a series of order " + std::to_string(order()) +
                                                      " to order " + std::to_string(new_order));
        }
        return SeriesH(new_order, std::vector<R>(c_.begin(), c_.begin() + new_order + 1));
    }

    /// Coefficientwise image under f.
    template <class F>
    auto map(F&& f) const
    {
        using Out = std::decay_t<decltype(f(c_[0]))>;
        std::vector<Out> out;
        out.reserve(c_.size());
        for (const auto& x : c_) {
            out.push_back(f(x));
        }
        return SeriesH<Out>(order(), std::move(out));
    }

    SeriesH& operator+=(const SeriesH& o)
    {
        require_same_order(o);
        for (std::size_t m = 0; m < c_.size(); ++m) {
            c_[m] += o.c_[m];
        }
        return *this;
    }
    SeriesH& operator-=(const SeriesH& o)
    {
        require_same_order(o);
        for (std::size_t m = 0; m < c_.size(); ++m) {
            c_[m] -= o.c_[m];
        }
        return *this;
    }
    SeriesH& operator*=(const Rational& s)
    {
        for (auto& x : c_) {
            x = x * s;
        }
        return *this;
    }

    friend SeriesH operator+(SeriesH a, const SeriesH& b) { return a += b; }
    friend SeriesH operator-(SeriesH a, const SeriesH& b) { return a -= b; }
    friend SeriesH operator-(SeriesH a)
    {
        for (auto& x : a.c_) {
            x = -x;
        }
        return a;
    }
    friend SeriesH operator*(SeriesH a, const Rational& s) { return a *= s; }
    friend SeriesH operator*(const Rational& s, SeriesH a) { return a *= s; }

    /// Cauchy product truncated at the common order.
    friend SeriesH operator*(const SeriesH& a, const SeriesH& b)
    {
        a.require_same_order(b);
        const std::size_t len = a.c_.size();
        std::vector<R> out(len);
        for (std::size_t i = 0; i < len; ++i) {
            if (ckm::is_zero(a.c_[i])) {
                continue;
            }
            for (std::size_t j = 0; i + j < len; ++j) {
                if (ckm::is_zero(b.c_[j])) {
                    continue;
                }
                out[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return SeriesH(a.order(), std::move(out));
    }
    SeriesH& operator*=(const SeriesH& o) { return *this = *this * o; }

    /// Multiplication by a single coefficient-ring element (h^0 scalar).
    SeriesH scaled(const R& s) const
    {
        SeriesH out(order());
        for (std::size_t m = 0; m < c_.size(); ++m) {
            out.c_[m] = c_[m] * s;
        }
        return out;
    }

    friend bool operator==(const SeriesH& a, const SeriesH& b) { return a.c_ == b.c_; }

private:
    static std::size_t checked_length(int order)
    {
        if (order < 0) {
            throw Error(ErrorCode::OrderMismatch, "negative truncation order " + std::to_string(order));
        }
        return static_cast<std::size_t>(order) + 1;
    }

    void require_same_order(const SeriesH& o) const
    {
        if (o.c_.size() != c_.size()) {
            throw Error(ErrorCode::OrderMismatch,
                        "orders " + std::to_string(order()) + " and " + std::to_string(o.order()));
        }
    }

    std::vector<R> c_;
};

template <CoefficientRing R>
bool is_zero(const SeriesH<R>& s)
{
    return s.is_zero();
}

using SeriesQ = SeriesH<Rational>;
using SeriesN = SeriesH<PolyN>;
using SeriesKN = SeriesH<PolyKN>;

template <CoefficientRing R>
SeriesH<R> series_mul(const SeriesH<R>& a, const SeriesH<R>& b)
{
    return a * b;
}

/// Inverse of a unit of Q[[h]].
inline SeriesQ series_invert(const SeriesQ& a)
{
    if (a[0].is_zero()) {
        throw Error(ErrorCode::NotAUnit, "series with zero constant term");
    }
    const int order = a.order();
    const Rational inv0 = Rational(1) / a[0];
    SeriesQ out(order);
    out.set(0, inv0);
    for (int m = 1; m <= order; ++m) {
        Rational acc;
        for (int j = 1; j <= m; ++j) {
            acc += a[j] * out[m - j];
        }
        out.set(m, -acc * inv0);
    }
    return out;
}

/// Inverse of a unit of Q[n][[h]]; the units are exactly the series whose
/// h^0 coefficient is a nonzero constant.
inline SeriesN series_invert(const SeriesN& a)
{
    if (a[0].is_zero() || !a[0].is_constant()) {
        throw Error(ErrorCode::NotAUnit, "h^0 coefficient " + a[0].str() + " is not a nonzero constant");
    }
    const int order = a.order();
    const Rational inv0 = Rational(1) / a[0].coeff(0);
    SeriesN out(order);
    out.set(0, PolyN(inv0));
    for (int m = 1; m <= order; ++m) {
        PolyN acc;
        for (int j = 1; j <= m; ++j) {
            if (!a[j].is_zero()) {
                acc += a[j] * out[m - j];
            }
        }
        out.set(m, -acc * inv0);
    }
    return out;
}

/// Image of a series over Q as a series of constant polynomials.
inline SeriesN lift(const SeriesQ& s)
{
    return s.map([](const Rational& r) { return PolyN(r); });
}

/// Substitutes a value for the polynomial variable in every coefficient.
inline SeriesQ eval(const SeriesN& s, const Rational& x)
{
    return s.map([&](const PolyN& p) { return p.eval(x); });
}

/// Substitutes x -> x + c in every coefficient.
inline SeriesN shifted(const SeriesN& s, long c)
{
    if (c == 0) {
        return s;
    }
    return s.map([c](const PolyN& p) { return poly_shift(p, c); });
}

/// [x]_q = sinh(x h) / sinh(h) as a series whose h^m coefficient is a polynomial
/// in the argument x (of degree m+1, odd in x).
inline SeriesN qnumber(symbolic_t, int order)
{
    // sinh(xh)/h and sinh(h)/h both only carry even powers of h.
    SeriesN numer(order);
    SeriesQ denom(order);
    Rational fact(1);
    for (int j = 0; 2 * j <= order; ++j) {
        if (j > 0) {
            fact *= Rational(2L * j) * Rational(2L * j + 1);
        }
        const Rational c = Rational(1) / fact;
        numer.set(2 * j, PolyN::monomial(c, 2 * j + 1));
        denom.set(2 * j, c);
    }
    const SeriesQ inv = series_invert(denom);
    SeriesN out(order);
    for (int m = 0; m <= order; ++m) {
        PolyN acc;
        for (int i = 0; i <= m; ++i) {
            if (!numer[i].is_zero() && !inv[m - i].is_zero()) {
                acc += numer[i] * inv[m - i];
            }
        }
        out.set(m, std::move(acc));
    }
    return out;
}

/// [j]_q for an integer j.
inline SeriesQ qnumber(long j, int order)
{
    return eval(qnumber(symbolic, order), Rational(j));
}

} // namespace ckm
