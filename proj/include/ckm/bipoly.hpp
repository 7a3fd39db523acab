#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "poly.hpp"
#include "rational.hpp"

namespace ckm {

/// Sparse polynomial in the two variables (k, n). Keys are (k-power, n-power);
/// zero coefficients are never stored.
class PolyKN {
public:
    using Exponent = std::pair<int, int>;
    using TermMap = std::map<Exponent, Rational>;

    PolyKN() = default;
    PolyKN(int c) : PolyKN(Rational(c)) {}
    PolyKN(long c) : PolyKN(Rational(c)) {}
    PolyKN(const Rational& c) { add_term(0, 0, c); }

    static PolyKN k() { return term(1, 0, Rational(1)); }
    static PolyKN n() { return term(0, 1, Rational(1)); }
    static PolyKN term(int kpow, int npow, const Rational& c)
    {
        PolyKN p;
        p.add_term(kpow, npow, c);
        return p;
    }
    static PolyKN from_poly_in_k(const PolyN& p)
    {
        PolyKN r;
        auto c = p.coefficients();
        for (std::size_t i = 0; i < c.size(); ++i) {
            r.add_term(static_cast<int>(i), 0, c[i]);
        }
        return r;
    }
    static PolyKN from_poly_in_n(const PolyN& p)
    {
        PolyKN r;
        auto c = p.coefficients();
        for (std::size_t i = 0; i < c.size(); ++i) {
            r.add_term(0, static_cast<int>(i), c[i]);
        }
        return r;
    }

    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_term(int kpow, int npow, const Rational& c)
    {
        if (c.is_zero()) {
            return;
        }
        auto [it, inserted] = t_.try_emplace({kpow, npow}, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                t_.erase(it);
            }
        }
    }

    int degree_k() const
    {
        int d = PolyN::minus_infinity;
        for (const auto& [e, c] : t_) {
            d = std::max(d, e.first);
        }
        return d;
    }
    int degree_n() const
    {
        int d = PolyN::minus_infinity;
        for (const auto& [e, c] : t_) {
            d = std::max(d, e.second);
        }
        return d;
    }

    /// Specialises k to an integer, leaving a polynomial in n.
    PolyN eval_k(long k) const
    {
        if (t_.empty()) {
            return {};
        }
        std::vector<Rational> out(static_cast<std::size_t>(degree_n()) + 1);
        const Rational kr(k);
        for (const auto& [e, c] : t_) {
            Rational v = c;
            for (int i = 0; i < e.first; ++i) {
                v *= kr;
            }
            out[static_cast<std::size_t>(e.second)] += v;
        }
        return PolyN(std::move(out));
    }

    /// Specialises n to a value, leaving a polynomial in k.
    PolyN eval_n(const Rational& n) const
    {
        if (t_.empty()) {
            return {};
        }
        std::vector<Rational> out(static_cast<std::size_t>(degree_k()) + 1);
        for (const auto& [e, c] : t_) {
            Rational v = c;
            for (int i = 0; i < e.second; ++i) {
                v *= n;
            }
            out[static_cast<std::size_t>(e.first)] += v;
        }
        return PolyN(std::move(out));
    }

    Rational eval(const Rational& k, const Rational& n) const { return eval_n(n).eval(k); }

    /// The polynomial P(kx(k, n), nx(k, n)).
    PolyKN substitute(const PolyKN& kx, const PolyKN& nx) const
    {
        // Powers are cached since every monomial reuses them.
        std::vector<PolyKN> kpow{PolyKN(1)};
        std::vector<PolyKN> npow{PolyKN(1)};
        PolyKN out;
        for (const auto& [e, c] : t_) {
            while (static_cast<int>(kpow.size()) <= e.first) {
                kpow.push_back(kpow.back() * kx);
            }
            while (static_cast<int>(npow.size()) <= e.second) {
                npow.push_back(npow.back() * nx);
            }
            out += kpow[static_cast<std::size_t>(e.first)] * npow[static_cast<std::size_t>(e.second)] * c;
        }
        return out;
    }

    PolyKN& operator+=(const PolyKN& o)
    {
        for (const auto& [e, c] : o.t_) {
            add_term(e.first, e.second, c);
        }
        return *this;
    }
    PolyKN& operator-=(const PolyKN& o)
    {
        for (const auto& [e, c] : o.t_) {
            add_term(e.first, e.second, -c);
        }
        return *this;
    }
    PolyKN& operator*=(const Rational& s)
    {
        if (s.is_zero()) {
            t_.clear();
            return *this;
        }
        for (auto& [e, c] : t_) {
            c *= s;
        }
        return *this;
    }

    friend PolyKN operator+(PolyKN a, const PolyKN& b) { return a += b; }
    friend PolyKN operator-(PolyKN a, const PolyKN& b) { return a -= b; }
    friend PolyKN operator-(PolyKN a) { return a *= Rational(-1); }
    friend PolyKN operator*(PolyKN a, const Rational& s) { return a *= s; }
    friend PolyKN operator*(const Rational& s, PolyKN a) { return a *= s; }
    friend PolyKN operator*(const PolyKN& a, const PolyKN& b)
    {
        PolyKN r;
        for (const auto& [ea, ca] : a.t_) {
            for (const auto& [eb, cb] : b.t_) {
                r.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
            }
        }
        return r;
    }
    PolyKN& operator*=(const PolyKN& o) { return *this = *this * o; }

    friend bool operator==(const PolyKN& a, const PolyKN& b) { return a.t_ == b.t_; }

    std::string str() const
    {
        if (t_.empty()) {
            return "0";
        }
        std::string s;
        for (const auto& [e, c] : t_) {
            if (!s.empty()) {
                s += " + ";
            }
            s += "(" + c.str() + ")";
            if (e.first > 0) {
                s += "*k^" + std::to_string(e.first);
            }
            if (e.second > 0) {
                s += "*n^" + std::to_string(e.second);
            }
        }
        return s;
    }

private:
    TermMap t_;
};

inline bool is_zero(const PolyKN& p) { return p.is_zero(); }

/// Specialisation of a closed-form coefficient at row k.
inline PolyN bipoly_eval_k(const PolyKN& p, long k) { return p.eval_k(k); }

/// Univariate p composed with a bivariate argument: p(x(k, n)).
inline PolyKN compose(const PolyN& p, const PolyKN& x)
{
    PolyKN r;
    auto c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        r = r * x + PolyKN(*it);
    }
    return r;
}

} // namespace ckm
