#include <random>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace ckm;

namespace {

CoeffSeq natural_solution(int order, int kmax)
{
    CoeffSeq f = CoeffSeq::zero(0, order, kmax);
    f.at(0) = SeriesN::constant(order, PolyN::variable());
    f.at(1) = SeriesN::one(order);
    return f;
}

std::vector<Colouring> sample_colourings(int order)
{
    return {natural_colouring(order), q_colouring(order), perturbed_colouring(random_perturbation(1, order)),
            perturbed_colouring(random_perturbation(2, order))};
}

} // namespace

TEST_CASE("ltimes on the natural solution", "[ltimes]")
{
    const Colouring nat = natural_colouring(3);
    const CoeffSeq theta = ltimes(nat, natural_solution(3, 10));
    // (n - 2k) + k(n - k + 1) = (k + 1)(n - k)
    CHECK(theta.same_entries(straightening_rhs(nat, 10)));
    CHECK(ltimes(nat, CoeffSeq::zero(0, 3, 10)).same_entries(CoeffSeq::zero(0, 3, 10)));
}

TEST_CASE("ltimes of a single-index sequence", "[ltimes]")
{
    const Colouring psi = q_colouring(2);
    const int d = 2;
    CoeffSeq xi = CoeffSeq::zero(d, 2, 7);
    xi.at(d) = SeriesN::constant(2, PolyN::linear(Rational(1), Rational(3)));
    const CoeffSeq t = ltimes(psi, xi);
    for (int k = d; k <= 7; ++k) {
        const SeriesN expected =
            evaluate(psi, k, symbolic) * evaluate(psi, k - 1, symbolic) * shifted(xi.at(d), -2L * k);
        CHECK(t.at(k) == expected);
    }
}

TEST_CASE("straightening solutions of the built-in colourings", "[ltimes]")
{
    CHECK(solve_straightening(natural_colouring(6), 12).same_entries(natural_solution(6, 12)));
    CHECK(solve_straightening(natural_colouring(6), 12).cutoff == 1);

    const CoeffSeq q = solve_straightening(q_colouring(6), 12);
    CHECK(q.at(0) == qnumber(symbolic, 6));
    CHECK(q.at(1) == SeriesN::one(6));
    for (int a = 2; a <= 12; ++a) {
        CHECK(q.at(a).is_zero());
    }
}

TEST_CASE("the q-identity behind the q straightening, checked pointwise", "[ltimes][qnumber]")
{
    // [k+1][n-k] - [k][n-k+1] = [n-2k]: each h^m coefficient is a polynomial of
    // degree <= m+2 in (k, n), so a 9x9 grid decides it for m <= 6.
    const int M = 6;
    for (long k = 0; k <= 8; ++k) {
        for (long n = -4; n <= 4; ++n) {
            auto lhs = oracle::mul(oracle::qnumber(k + 1, M), oracle::qnumber(n - k, M));
            const auto rhs = oracle::mul(oracle::qnumber(k, M), oracle::qnumber(n - k + 1, M));
            for (std::size_t m = 0; m < lhs.size(); ++m) {
                lhs[m] -= rhs[m];
            }
            CHECK(lhs == oracle::qnumber(n - 2 * k, M));
        }
    }
}

TEST_CASE("solve inverts ltimes", "[ltimes][property]")
{
    std::mt19937_64 rng(31);
    for (const Colouring& psi : sample_colourings(3)) {
        const LtimesContext ctx(psi, 10);
        for (int d = 0; d <= 2; ++d) {
            for (int trial = 0; trial < 3; ++trial) {
                const CoeffSeq xi0 = oracle::random_sequence(rng, d, 3, 10, d + 3);
                const CoeffSeq theta = ltimes(ctx, xi0);
                const CoeffSeq xi = solve(ctx, theta);
                CHECK(xi.same_entries(xi0));
                CHECK(verify_solution(ctx, xi, theta, 10));
            }
        }
    }
}

TEST_CASE("twisting intertwines with the weighted index shift", "[ltimes][property]")
{
    std::mt19937_64 rng(32);
    for (const Colouring& psi : sample_colourings(3)) {
        for (int d = 0; d <= 1; ++d) {
            const CoeffSeq xi = oracle::random_sequence(rng, d, 3, 8, 8);
            CHECK(ltimes(psi, shift_down_weighted(xi)).same_entries(twist_down(psi, ltimes(psi, xi))));
        }
    }
    // With the plain reindexing the identity fails as soon as xi depends on n.
    const Colouring nat = natural_colouring(1);
    CoeffSeq xi = CoeffSeq::zero(0, 1, 4);
    xi.at(0) = SeriesN::constant(1, PolyN::variable());
    CHECK_FALSE(ltimes(nat, shift_down(xi)).same_entries(twist_down(nat, ltimes(nat, xi))));
}

TEST_CASE("uniqueness: perturbed solutions fail verification", "[ltimes][property]")
{
    std::mt19937_64 rng(33);
    for (const Colouring& psi : sample_colourings(3)) {
        const LtimesContext ctx(psi, 10);
        const CoeffSeq xi0 = oracle::random_sequence(rng, 0, 3, 10, 4);
        const CoeffSeq theta = ltimes(ctx, xi0);
        for (int a = 0; a <= 8; ++a) {
            CoeffSeq bad = xi0;
            SeriesN delta(3);
            delta.set(static_cast<int>(rng() % 4), PolyN::linear(oracle::small_rational(rng), Rational(1)));
            bad.at(a) += delta;
            CHECK_FALSE(verify_solution(ctx, bad, theta, 10));
        }
    }

    CoeffSeq bumped = natural_solution(2, 6);
    SeriesN h(2);
    h.set(1, PolyN(1));
    bumped.at(1) += h;
    const Colouring nat = natural_colouring(2);
    CHECK(verify_solution(nat, natural_solution(2, 6), straightening_rhs(nat, 6), 6));
    CHECK_FALSE(verify_solution(nat, bumped, straightening_rhs(nat, 6), 2));
    CHECK(verify_solution(nat, CoeffSeq::zero(0, 2, 6), CoeffSeq::zero(0, 2, 6), 6));
}

TEST_CASE("straightening of perturbed colourings", "[ltimes]")
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Colouring psi = perturbed_colouring(random_perturbation(seed, 4));
        const CoeffSeq xi = solve_straightening(psi, 12);
        REQUIRE(xi.cutoff);
        CHECK(*xi.cutoff < 12);
        CHECK(verify_solution(psi, xi, straightening_rhs(psi, 12), 12));
        // h^0 layer (n, 1, 0, ...) is forced by C1.
        CHECK(xi.at(0)[0] == PolyN::variable());
        CHECK(xi.at(1)[0] == PolyN(1));
        for (int a = 2; a <= 12; ++a) {
            CHECK(xi.at(a)[0].is_zero());
        }
        // Eventual vanishing at every h-order.
        for (int bound : observed_support(xi)) {
            CHECK(bound < 12);
        }
    }

    Perturbation one;
    one.order = 2;
    one.terms.emplace(std::make_pair(0, 0), SeriesQ::one(2));
    const Colouring p1 = perturbed_colouring(one);
    const CoeffSeq xi = solve_straightening(p1, 12);
    REQUIRE(xi.cutoff);
    CHECK(verify_solution(p1, xi, straightening_rhs(p1, 12), 12));
}

TEST_CASE("b-trivialization solutions", "[ltimes]")
{
    const CoeffSeq nat = solve_b_trivialization(natural_colouring(4), 10);
    CHECK(nat.d == 1);
    CHECK(nat.at(1) == SeriesN::one(4));
    for (int a = 2; a <= 10; ++a) {
        CHECK(nat.at(a).is_zero());
    }

    Perturbation w;
    w.order = 3;
    w.terms.emplace(std::make_pair(0, 1), SeriesQ::one(3));
    for (const Colouring& psi : {q_colouring(4), perturbed_colouring(random_perturbation(3, 4))}) {
        const CoeffSeq xi = solve_b_trivialization(psi, 10);
        CHECK(verify_solution(natural_colouring(4), xi, as_coeff_seq(psi, 10), 10));
        CHECK(xi.at(1)[0] == PolyN(1));
        for (int a = 2; a <= 10; ++a) {
            CHECK(xi.at(a)[0].is_zero());
        }
    }
    const Colouring pw = perturbed_colouring(w);
    const CoeffSeq xw = solve_b_trivialization(pw, 10);
    CHECK(verify_solution(natural_colouring(3), xw, as_coeff_seq(pw, 10), 10));
    REQUIRE(xw.cutoff);
    for (int bound : observed_support(xw)) {
        CHECK(bound < 10);
    }
}

TEST_CASE("solver errors", "[ltimes]")
{
    const Colouring nat = natural_colouring(2);
    // theta^1 = 1 at d = 0: no divisibility by n.
    CoeffSeq theta = CoeffSeq::zero(0, 2, 3);
    theta.at(1) = SeriesN::one(2);
    try {
        solve(nat, theta);
        FAIL("expected NonzeroRemainder");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonzeroRemainder);
    }

    const Colouring unchecked = Colouring::closed_form({Colouring::classical()});
    try {
        LtimesContext ctx(unchecked, 4);
        FAIL("expected AxiomsUnverified");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::AxiomsUnverified);
    }

    const Colouring tab = certify(Colouring::tabulated(2, oracle::tabulate(nat, 4, -2, 2)), 4, -2, 2);
    try {
        LtimesContext ctx(tab, 4);
        FAIL("expected SymbolicUnsupported");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SymbolicUnsupported);
    }

    const Colouring pert = perturbed_colouring(random_perturbation(1, 4));
    try {
        solve_straightening(pert, 5);
        FAIL("expected WindowExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WindowExceeded);
    }
    CHECK_THROWS_AS(ltimes(nat, CoeffSeq::zero(0, 3, 3)), Error);
}
