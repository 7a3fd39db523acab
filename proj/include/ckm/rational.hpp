#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include "error.hpp"

namespace ckm {

/// Exact rational number, always kept in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(int v) : q_(static_cast<long>(v)) {}
    Rational(long v) : q_(v) {}
    Rational(long long v) : q_(mpz_class(std::to_string(v))) {}
    Rational(long num, long den)
    {
        if (den == 0) {
            throw Error(ErrorCode::InputSchemaError, "zero denominator");
        }
        q_ = mpq_class(mpz_class(num), mpz_class(den));
        q_.canonicalize();
    }
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Accepts "p" or "p/q" with optional leading '-' on p; q must be positive.
    static Rational parse(std::string_view text)
    {
        auto digits = [](std::string_view s) {
            if (s.empty()) {
                return false;
            }
            for (char c : s) {
                if (c < '0' || c > '9') {
                    return false;
                }
            }
            return true;
        };
        std::string_view num = text;
        std::string_view den = "1";
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            num = text.substr(0, slash);
            den = text.substr(slash + 1);
        }
        std::string_view num_digits = (!num.empty() && num.front() == '-') ? num.substr(1) : num;
        if (!digits(num_digits) || !digits(den)) {
            throw Error(ErrorCode::InputSchemaError, "malformed rational '" + std::string(text) + "'");
        }
        mpz_class d(std::string(den), 10);
        if (d == 0) {
            throw Error(ErrorCode::InputSchemaError, "zero denominator in '" + std::string(text) + "'");
        }
        mpq_class q(mpz_class(std::string(num), 10), d);
        q.canonicalize();
        return Rational(std::move(q));
    }

    /// "p/q", or "p" when the denominator is one.
    std::string str() const
    {
        if (q_.get_den() == 1) {
            return q_.get_num().get_str();
        }
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }
    bool is_integer() const { return q_.get_den() == 1; }
    const mpq_class& value() const { return q_; }

    Rational& operator+=(const Rational& o)
    {
        q_ += o.q_;
        return *this;
    }
    Rational& operator-=(const Rational& o)
    {
        q_ -= o.q_;
        return *this;
    }
    Rational& operator*=(const Rational& o)
    {
        q_ *= o.q_;
        return *this;
    }
    Rational& operator/=(const Rational& o)
    {
        if (o.is_zero()) {
            throw Error(ErrorCode::NotAUnit, "division of a rational by zero");
        }
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_;
};

inline bool is_zero(const Rational& r) { return r.is_zero(); }

} // namespace ckm
