#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "colouring.hpp"
#include "error.hpp"
#include "series.hpp"

namespace ckm {

struct CoeffSeqFlags {
    bool verma_type_verified = false;
    bool summable_verified = false;
    bool regular_verified = false;

    friend bool operator==(const CoeffSeqFlags&, const CoeffSeqFlags&) = default;
};

/// A sequence (f^k)_{k >= d} of series over Q[n], stored for d <= k <= kmax.
struct CoeffSeq {
    int d = 0;
    int order = 0;
    std::vector<SeriesN> entries; // entries[i] is f^{d+i}
    std::optional<int> cutoff;    // a(M): entries beyond it vanish mod h^(M+1)
    CoeffSeqFlags flags;

    CoeffSeq() = default;
    CoeffSeq(int base, int ord, std::vector<SeriesN> values) : d(base), order(ord), entries(std::move(values))
    {
        if (base < 0) {
            throw Error(ErrorCode::InputSchemaError, "negative base index d=" + std::to_string(base));
        }
        for (const auto& e : entries) {
            if (e.order() != ord) {
                throw Error(ErrorCode::OrderMismatch, "entry of order " + std::to_string(e.order()) +
                                                          " in a sequence of order " + std::to_string(ord));
            }
        }
    }

    /// The zero sequence on d <= k <= kmax.
    static CoeffSeq zero(int d, int order, int kmax)
    {
        return CoeffSeq(d, order, std::vector<SeriesN>(static_cast<std::size_t>(std::max(kmax - d + 1, 0)), SeriesN(order)));
    }

    int kmax() const { return d + static_cast<int>(entries.size()) - 1; }

    const SeriesN& at(int k) const
    {
        if (k < d || k > kmax()) {
            throw Error(ErrorCode::OutOfWindow, "entry k=" + std::to_string(k) + " outside " + std::to_string(d) +
                                                    ".." + std::to_string(kmax()));
        }
        return entries[static_cast<std::size_t>(k - d)];
    }
    SeriesN& at(int k) { return const_cast<SeriesN&>(std::as_const(*this).at(k)); }

    /// Entrywise equality of the data; flags and cutoff are metadata.
    bool same_entries(const CoeffSeq& o) const { return d == o.d && order == o.order && entries == o.entries; }

    friend bool operator==(const CoeffSeq&, const CoeffSeq&) = default;
};

inline CoeffSeq operator+(const CoeffSeq& a, const CoeffSeq& b)
{
    if (a.d != b.d || a.order != b.order || a.kmax() != b.kmax()) {
        throw Error(ErrorCode::OrderMismatch, "adding sequences with different shapes");
    }
    CoeffSeq out(a.d, a.order, a.entries);
    for (std::size_t i = 0; i < out.entries.size(); ++i) {
        out.entries[i] += b.entries[i];
    }
    return out;
}

/// A colouring psi viewed as the sequence (psi^k)_{k >= 1}.
inline CoeffSeq as_coeff_seq(const Colouring& psi, int kmax)
{
    std::vector<SeriesN> e;
    for (int k = 1; k <= kmax; ++k) {
        e.push_back(evaluate(psi, k, symbolic));
    }
    CoeffSeq out(1, psi.order(), std::move(e));
    out.flags.verma_type_verified = psi.axioms_verified();
    out.flags.regular_verified = true;
    return out;
}

/// f[-1]: (f[-1])^k = f^{k-1}, from base d to base d+1. Verma type is not
/// preserved in general, so the flag is cleared.
inline CoeffSeq shift_down(const CoeffSeq& f)
{
    CoeffSeq out(f.d + 1, f.order, f.entries);
    if (f.cutoff) {
        out.cutoff = *f.cutoff + 1;
    }
    out.flags = f.flags;
    out.flags.verma_type_verified = false;
    return out;
}

/// f[-1] composed with n -> n+2: (f<-1>)^k(n) = f^{k-1}(n+2). This is the
/// reindexing that intertwines the product with the twist,
///   psi |x (xi<-1>) = (psi |x xi){-1},
/// whereas plain f[-1] satisfies it only for n-independent xi.
inline CoeffSeq shift_down_weighted(const CoeffSeq& f)
{
    CoeffSeq out = shift_down(f);
    for (auto& e : out.entries) {
        e = shifted(e, 2);
    }
    return out;
}

/// f[+1], the inverse reindexing from base d+1 to base d; preserves Verma type.
inline CoeffSeq shift_up(const CoeffSeq& f)
{
    if (f.d < 1) {
        throw Error(ErrorCode::OutOfWindow, "shift_up of a sequence based at d=0");
    }
    CoeffSeq out(f.d - 1, f.order, f.entries);
    if (f.cutoff) {
        out.cutoff = *f.cutoff - 1;
    }
    out.flags = f.flags;
    return out;
}

/// f{-1}: (f{-1})^k(n) = psi^k(n) f^{k-1}(n), from base d to base d+1.
inline CoeffSeq twist_down(const Colouring& psi, const CoeffSeq& f)
{
    if (psi.order() != f.order) {
        throw Error(ErrorCode::OrderMismatch, "colouring and sequence orders differ");
    }
    std::vector<SeriesN> e;
    e.reserve(f.entries.size());
    for (int k = f.d + 1; k <= f.kmax() + 1; ++k) {
        e.push_back(evaluate(psi, k, symbolic) * f.at(k - 1));
    }
    CoeffSeq out(f.d + 1, f.order, std::move(e));
    out.flags.verma_type_verified = f.flags.verma_type_verified && psi.axioms_verified();
    out.flags.regular_verified = f.flags.regular_verified;
    return out;
}

namespace detail {

// g^k with psi^{k+1}(n) = (k+1)(n-k) g^k(n); g^k is a unit with g^k_0 = 1.
inline SeriesN twist_unit(const Colouring& psi, int k)
{
    const SeriesN row = evaluate(psi, k + 1, symbolic);
    const Rational inv = Rational(1) / Rational(k + 1);
    return row.map([&](const PolyN& p) { return poly_divide_exact_linear(p, Rational(k)) * inv; });
}

} // namespace detail

/// theta{+1}: the unique quasi-regular sequence with twist_down(theta{+1}) = theta.
/// Throws NonzeroRemainder when (n-k) fails to divide, i.e. theta is not of Verma type.
inline CoeffSeq twist_up(const Colouring& psi, const CoeffSeq& theta)
{
    if (!psi.axioms_verified()) {
        throw Error(ErrorCode::AxiomsUnverified, "twist_up needs a certified colouring");
    }
    if (theta.d < 1) {
        throw Error(ErrorCode::OutOfWindow, "twist_up of a sequence based at d=0");
    }
    if (psi.order() != theta.order) {
        throw Error(ErrorCode::OrderMismatch, "colouring and sequence orders differ");
    }
    std::vector<SeriesN> e;
    e.reserve(theta.entries.size());
    for (int k = theta.d - 1; k <= theta.kmax() - 1; ++k) {
        const SeriesN ginv = series_invert(detail::twist_unit(psi, k));
        const SeriesN num = ginv * theta.at(k + 1);
        const Rational inv = Rational(1) / Rational(k + 1);
        try {
            e.push_back(num.map([&](const PolyN& p) { return poly_divide_exact_linear(p, Rational(k)) * inv; }));
        } catch (const Error& err) {
            throw Error(ErrorCode::NonzeroRemainder,
                        "twist_up at k=" + std::to_string(k) + ": input is not of Verma type (" + err.what() + ")");
        }
    }
    CoeffSeq out(theta.d - 1, theta.order, std::move(e));
    out.flags.verma_type_verified = theta.flags.verma_type_verified;
    out.flags.regular_verified = theta.flags.regular_verified;
    return out;
}

// ---------------------------------------------------------------------------
// Verma type and summability

enum class VermaCondition { Strip, Reflection };

struct VermaViolation {
    VermaCondition condition;
    long k;
    long n;

    friend bool operator==(const VermaViolation&, const VermaViolation&) = default;
};

struct VermaTypeReport {
    std::vector<VermaViolation> violations;
    bool passed() const { return violations.empty(); }
};

/// Checks, at each concrete n in 0..nmax and on the stored k-range,
///   f^k(n) = 0 for n+1 <= k <= n+d, and
///   f^{n+k+1}(n) = f^k(-n-2) for k >= d.
inline VermaTypeReport check_verma_type(const CoeffSeq& f, long nmax)
{
    VermaTypeReport report;
    for (long n = 0; n <= nmax; ++n) {
        const Rational nr(n);
        for (long k = std::max<long>(f.d, n + 1); k <= n + f.d && k <= f.kmax(); ++k) {
            if (!eval(f.at(static_cast<int>(k)), nr).is_zero()) {
                report.violations.push_back({VermaCondition::Strip, k, n});
            }
        }
        const Rational reflected(-n - 2);
        for (long k = f.d; n + k + 1 <= f.kmax(); ++k) {
            if (!(eval(f.at(static_cast<int>(n + k + 1)), nr) == eval(f.at(static_cast<int>(k)), reflected))) {
                report.violations.push_back({VermaCondition::Reflection, k, n});
            }
        }
    }
    return report;
}

/// The least a(M) such that every stored entry with a(M) < k <= kmax is the
/// zero series; d-1 for the zero sequence. The cutoff must be confirmed by at
/// least one vanishing stored entry, so a nonzero f^kmax raises WindowExceeded.
inline int check_summable(const CoeffSeq& f)
{
    int a = f.d - 1;
    for (int k = f.kmax(); k >= f.d; --k) {
        if (!f.at(k).is_zero()) {
            a = k;
            break;
        }
    }
    if (a >= f.kmax() && !f.entries.empty()) {
        throw Error(ErrorCode::WindowExceeded, "entry k=" + std::to_string(f.kmax()) +
                                                   " is nonzero; no summability cutoff visible within kmax");
    }
    return a;
}

/// Runs check_summable and records the cutoff.
inline CoeffSeq with_cutoff(CoeffSeq f)
{
    f.cutoff = check_summable(f);
    f.flags.summable_verified = true;
    return f;
}

} // namespace ckm
