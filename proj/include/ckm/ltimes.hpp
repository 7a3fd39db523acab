#pragma once

#include <string>
#include <utility>
#include <vector>

#include "coeff_seq.hpp"
#include "colouring.hpp"
#include "error.hpp"
#include "series.hpp"

namespace ckm {

/// Cached data for products and solves against one closed-form colouring on
/// the horizon 1 <= k <= kmax:
///   rows[k]        psi^k(n)
///   unit_inv[k]    F_k(n)^{-1}, where prod_{b=1}^k psi^b(n) = prod_{b=1}^k (n-b+1) * F_k(n)
/// F_k has constant term k!, hence is a unit.
class LtimesContext {
public:
    LtimesContext(Colouring psi, int kmax) : psi_(std::move(psi)), kmax_(kmax)
    {
        if (!psi_.axioms_verified()) {
            throw Error(ErrorCode::AxiomsUnverified, "colouring has not been certified");
        }
        if (!psi_.is_closed_form()) {
            throw Error(ErrorCode::SymbolicUnsupported, "the solver needs a closed-form colouring");
        }
        const int order = psi_.order();
        rows_.reserve(static_cast<std::size_t>(kmax) + 1);
        rows_.emplace_back(order); // unused slot for k = 0
        unit_inv_.push_back(SeriesN::one(order));
        SeriesN unit = SeriesN::one(order);
        for (int k = 1; k <= kmax; ++k) {
            rows_.push_back(evaluate(psi_, k, symbolic));
            const Rational root(k - 1);
            unit *= rows_.back().map([&](const PolyN& p) { return poly_divide_exact_linear(p, root); });
            unit_inv_.push_back(series_invert(unit));
        }
    }

    const Colouring& colouring() const { return psi_; }
    int order() const { return psi_.order(); }
    int kmax() const { return kmax_; }
    const SeriesN& row(int k) const { return rows_.at(static_cast<std::size_t>(k)); }
    const SeriesN& unit_inverse(int k) const { return unit_inv_.at(static_cast<std::size_t>(k)); }

private:
    Colouring psi_;
    int kmax_;
    std::vector<SeriesN> rows_;
    std::vector<SeriesN> unit_inv_;
};

namespace detail {

// Sum over a in [alo, ahi] of (prod_{b=k-a+1}^k psi^b(n)) * xi^a(n-2k).
inline SeriesN ltimes_partial(const LtimesContext& ctx, const CoeffSeq& xi, int k, int alo, int ahi)
{
    SeriesN acc(ctx.order());
    SeriesN prod = SeriesN::one(ctx.order());
    for (int a = 0; a <= ahi; ++a) {
        if (a > 0) {
            prod *= ctx.row(k - a + 1);
        }
        if (a >= alo && !xi.at(a).is_zero()) {
            acc += prod * shifted(xi.at(a), -2L * k);
        }
    }
    return acc;
}

} // namespace detail

/// (psi |x xi)^k(n) = sum_{a=d}^{k} (prod_{b=k-a+1}^{k} psi^b(n)) xi^a(n-2k), for d <= k <= xi.kmax().
inline CoeffSeq ltimes(const LtimesContext& ctx, const CoeffSeq& xi)
{
    if (xi.order != ctx.order()) {
        throw Error(ErrorCode::OrderMismatch, "colouring and sequence orders differ");
    }
    if (xi.kmax() > ctx.kmax()) {
        throw Error(ErrorCode::OutOfWindow, "sequence reaches k=" + std::to_string(xi.kmax()) +
                                                " beyond the context horizon " + std::to_string(ctx.kmax()));
    }
    std::vector<SeriesN> out;
    out.reserve(xi.entries.size());
    for (int k = xi.d; k <= xi.kmax(); ++k) {
        out.push_back(detail::ltimes_partial(ctx, xi, k, xi.d, k));
    }
    CoeffSeq result(xi.d, xi.order, std::move(out));
    result.flags.regular_verified = xi.flags.regular_verified;
    return result;
}

inline CoeffSeq ltimes(const Colouring& psi, const CoeffSeq& xi)
{
    return ltimes(LtimesContext(psi, std::max(xi.kmax(), 1)), xi);
}

namespace detail {

// Triangular recursion for d = 0.
inline CoeffSeq solve_base(const LtimesContext& ctx, const CoeffSeq& theta)
{
    CoeffSeq xi = CoeffSeq::zero(0, theta.order, theta.kmax());
    for (int k = 0; k <= theta.kmax(); ++k) {
        SeriesN residual = theta.at(k);
        if (k > 0) {
            residual -= ltimes_partial(ctx, xi, k, 0, k - 1);
        }
        // prod_{b=1}^k psi^b(n) = prod_{b=1}^k (n-b+1) * F_k(n): strip the unit
        // first, then divide every h-coefficient by the falling factorial.
        SeriesN unit_free = ctx.unit_inverse(k) * residual;
        SeriesN solved(theta.order);
        for (int m = 0; m <= theta.order; ++m) {
            PolyN p = unit_free[m];
            try {
                for (int b = 1; b <= k; ++b) {
                    p = poly_divide_exact_linear(p, Rational(b - 1));
                }
            } catch (const Error& err) {
                throw Error(ErrorCode::NonzeroRemainder, "solve stage k=" + std::to_string(k) + ", h^" +
                                                             std::to_string(m) +
                                                             ": right-hand side is not of Verma type (" +
                                                             err.what() + ")");
            }
            solved.set(m, poly_shift(p, 2L * k));
        }
        xi.at(k) = std::move(solved);
    }
    return xi;
}

} // namespace detail

/// The unique quasi-regular xi with psi |x xi = theta on d <= k <= theta.kmax().
/// For d >= 1 the right-hand side is first untwisted d times down to base 0
/// and the base-0 solution is lifted back with shift_down_weighted.
inline CoeffSeq solve(const LtimesContext& ctx, const CoeffSeq& theta)
{
    if (theta.order != ctx.order()) {
        throw Error(ErrorCode::OrderMismatch, "colouring and sequence orders differ");
    }
    CoeffSeq base = theta;
    for (int i = 0; i < theta.d; ++i) {
        base = twist_up(ctx.colouring(), base);
    }
    CoeffSeq xi = detail::solve_base(ctx, base);
    for (int i = 0; i < theta.d; ++i) {
        xi = shift_down_weighted(xi);
    }
    xi.flags = CoeffSeqFlags{};
    xi.flags.regular_verified = true;
    try {
        xi.cutoff = check_summable(xi);
        xi.flags.summable_verified = true;
    } catch (const Error&) {
        xi.cutoff.reset();
    }
    return xi;
}

inline CoeffSeq solve(const Colouring& psi, const CoeffSeq& theta)
{
    return solve(LtimesContext(psi, std::max(theta.kmax(), 1)), theta);
}

/// psi[+1], the right-hand side of the straightening equation, on 0..kmax.
inline CoeffSeq straightening_rhs(const Colouring& psi, int kmax)
{
    return shift_up(as_coeff_seq(psi, kmax + 1));
}

/// The solution xi in SCoeff_0 of psi |x xi = psi[+1], with its summability cutoff.
inline CoeffSeq solve_straightening(const Colouring& psi, int kmax)
{
    LtimesContext ctx(psi, kmax + 1);
    CoeffSeq xi = solve(ctx, straightening_rhs(psi, kmax));
    return with_cutoff(std::move(xi));
}

/// The solution xi in SCoeff_1 of N |x xi = psi, N the natural colouring.
inline CoeffSeq solve_b_trivialization(const Colouring& psi, int kmax)
{
    LtimesContext ctx(natural_colouring(psi.order()), kmax);
    return solve(ctx, as_coeff_seq(psi, kmax));
}

/// True iff (psi |x xi)^k = theta^k mod h^(M+1) for every d <= k <= kmax.
inline bool verify_solution(const LtimesContext& ctx, const CoeffSeq& xi, const CoeffSeq& theta, int kmax)
{
    if (xi.d != theta.d || xi.order != theta.order || xi.kmax() < kmax || theta.kmax() < kmax) {
        return false;
    }
    for (int k = xi.d; k <= kmax; ++k) {
        if (!(detail::ltimes_partial(ctx, xi, k, xi.d, k) == theta.at(k))) {
            return false;
        }
    }
    return true;
}

inline bool verify_solution(const Colouring& psi, const CoeffSeq& xi, const CoeffSeq& theta, int kmax)
{
    return verify_solution(LtimesContext(psi, std::max(kmax, 1)), xi, theta, kmax);
}

/// For each h-order m, the largest k with xi^k_m nonzero (d-1 when none): the
/// observed form of the eventual-vanishing bound.
inline std::vector<int> observed_support(const CoeffSeq& xi)
{
    std::vector<int> out(static_cast<std::size_t>(xi.order) + 1, xi.d - 1);
    for (int k = xi.d; k <= xi.kmax(); ++k) {
        for (int m = 0; m <= xi.order; ++m) {
            if (!xi.at(k)[m].is_zero()) {
                out[static_cast<std::size_t>(m)] = k;
            }
        }
    }
    return out;
}

} // namespace ckm
