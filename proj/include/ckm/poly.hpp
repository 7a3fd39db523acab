#pragma once

#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace ckm {

/// Dense univariate polynomial over the rationals. The variable is contextual
/// (n, k or H). Coefficients are stored lowest power first with no trailing zeros.
class PolyN {
public:
    static constexpr int minus_infinity = std::numeric_limits<int>::min();

    PolyN() = default;
    PolyN(int c) : PolyN(Rational(c)) {}
    PolyN(long c) : PolyN(Rational(c)) {}
    PolyN(Rational c)
    {
        if (!c.is_zero()) {
            c_.push_back(std::move(c));
        }
    }
    explicit PolyN(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    /// The polynomial x (the variable itself).
    static PolyN variable() { return PolyN(std::vector<Rational>{Rational(0), Rational(1)}); }
    static PolyN monomial(Rational c, int power)
    {
        std::vector<Rational> v(static_cast<std::size_t>(power) + 1);
        v.back() = std::move(c);
        return PolyN(std::move(v));
    }
    /// a*x + b
    static PolyN linear(Rational a, Rational b) { return PolyN(std::vector<Rational>{std::move(b), std::move(a)}); }

    int degree() const { return c_.empty() ? minus_infinity : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    std::span<const Rational> coefficients() const { return c_; }

    Rational coeff(int power) const
    {
        if (power < 0 || power >= static_cast<int>(c_.size())) {
            return Rational();
        }
        return c_[static_cast<std::size_t>(power)];
    }
    const Rational& leading() const { return c_.back(); }

    Rational eval(const Rational& x) const
    {
        Rational r;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            r *= x;
            r += *it;
        }
        return r;
    }

    /// p(x + c)
    PolyN shifted(const Rational& c) const
    {
        if (c.is_zero() || c_.size() <= 1) {
            return *this;
        }
        // Horner with the linear factor (x + c).
        std::vector<Rational> r;
        r.reserve(c_.size());
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            r.emplace_back();
            for (std::size_t i = r.size() - 1; i > 0; --i) {
                r[i] = r[i - 1] + r[i] * c;
            }
            r[0] = r[0] * c + *it;
        }
        return PolyN(std::move(r));
    }

    /// p(q(x))
    PolyN compose(const PolyN& q) const
    {
        PolyN r;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            r = r * q + PolyN(*it);
        }
        return r;
    }

    PolyN& operator+=(const PolyN& o)
    {
        if (o.c_.size() > c_.size()) {
            c_.resize(o.c_.size());
        }
        for (std::size_t i = 0; i < o.c_.size(); ++i) {
            c_[i] += o.c_[i];
        }
        trim();
        return *this;
    }
    PolyN& operator-=(const PolyN& o)
    {
        if (o.c_.size() > c_.size()) {
            c_.resize(o.c_.size());
        }
        for (std::size_t i = 0; i < o.c_.size(); ++i) {
            c_[i] -= o.c_[i];
        }
        trim();
        return *this;
    }
    PolyN& operator*=(const Rational& s)
    {
        if (s.is_zero()) {
            c_.clear();
            return *this;
        }
        for (auto& x : c_) {
            x *= s;
        }
        return *this;
    }

    friend PolyN operator+(PolyN a, const PolyN& b) { return a += b; }
    friend PolyN operator-(PolyN a, const PolyN& b) { return a -= b; }
    friend PolyN operator-(PolyN a)
    {
        for (auto& x : a.c_) {
            x = -x;
        }
        return a;
    }
    friend PolyN operator*(PolyN a, const Rational& s) { return a *= s; }
    friend PolyN operator*(const Rational& s, PolyN a) { return a *= s; }
    friend PolyN operator*(const PolyN& a, const PolyN& b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                r[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return PolyN(std::move(r));
    }
    PolyN& operator*=(const PolyN& o) { return *this = *this * o; }

    friend bool operator==(const PolyN& a, const PolyN& b) { return a.c_ == b.c_; }

    /// Human-readable form in the given variable, highest power first.
    std::string str(std::string_view var = "n") const
    {
        if (c_.empty()) {
            return "0";
        }
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            const Rational& a = c_[static_cast<std::size_t>(i)];
            if (a.is_zero()) {
                continue;
            }
            if (!s.empty()) {
                s += a.sign() < 0 ? " - " : " + ";
            } else if (a.sign() < 0) {
                s += "-";
            }
            Rational mag = a.sign() < 0 ? -a : a;
            bool unit = mag == Rational(1);
            if (!unit || i == 0) {
                s += mag.str();
            }
            if (i > 0) {
                if (!unit) {
                    s += "*";
                }
                s += var;
                if (i > 1) {
                    s += "^" + std::to_string(i);
                }
            }
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const PolyN& p) { return os << p.str(); }

private:
    void trim()
    {
        while (!c_.empty() && c_.back().is_zero()) {
            c_.pop_back();
        }
    }

    std::vector<Rational> c_;
};

inline bool is_zero(const PolyN& p) { return p.is_zero(); }

/// p(x + c) for an integer offset.
inline PolyN poly_shift(const PolyN& p, long c) { return p.shifted(Rational(c)); }

/// Quotient and remainder of polynomial long division.
inline std::pair<PolyN, PolyN> poly_divmod(const PolyN& p, const PolyN& q)
{
    if (q.is_zero()) {
        throw Error(ErrorCode::NotAUnit, "polynomial division by zero");
    }
    if (p.degree() < q.degree()) {
        return {PolyN(), p};
    }
    auto pc = p.coefficients();
    std::vector<Rational> rem(pc.begin(), pc.end());
    auto qc = q.coefficients();
    const int dq = q.degree();
    std::vector<Rational> quot(static_cast<std::size_t>(p.degree() - dq) + 1);
    Rational lead_inv = Rational(1) / q.leading();
    for (int i = p.degree() - dq; i >= 0; --i) {
        Rational t = rem[static_cast<std::size_t>(i + dq)] * lead_inv;
        if (!t.is_zero()) {
            for (int j = 0; j <= dq; ++j) {
                rem[static_cast<std::size_t>(i + j)] -= t * qc[static_cast<std::size_t>(j)];
            }
        }
        quot[static_cast<std::size_t>(i)] = std::move(t);
    }
    return {PolyN(std::move(quot)), PolyN(std::move(rem))};
}

/// r with q*r == p; throws NonzeroRemainder when q does not divide p.
inline PolyN poly_divide_exact(const PolyN& p, const PolyN& q)
{
    auto [quot, rem] = poly_divmod(p, q);
    if (!rem.is_zero()) {
        throw Error(ErrorCode::NonzeroRemainder,
                    "(" + q.str() + ") does not divide (" + p.str() + "), remainder " + rem.str());
    }
    return quot;
}

/// Exact division by the linear factor (x - root), by synthetic division.
inline PolyN poly_divide_exact_linear(const PolyN& p, const Rational& root)
{
    if (p.is_zero()) {
        return p;
    }
    auto pc = p.coefficients();
    const std::size_t d = pc.size() - 1;
    if (d == 0) {
        throw Error(ErrorCode::NonzeroRemainder,
                    "(n - " + root.str() + ") does not divide nonzero constant " + pc[0].str());
    }
    std::vector<Rational> q(d);
    Rational carry;
    for (std::size_t i = d; i > 0; --i) {
        carry = pc[i] + carry * root;
        q[i - 1] = carry;
    }
    Rational rem = pc[0] + carry * root;
    if (!rem.is_zero()) {
        throw Error(ErrorCode::NonzeroRemainder,
                    "(n - " + root.str() + ") does not divide (" + p.str() + "), remainder " + rem.str());
    }
    return PolyN(std::move(q));
}

} // namespace ckm
