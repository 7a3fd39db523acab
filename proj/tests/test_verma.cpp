#include <random>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace ckm;
using G = Generator;

namespace {

const std::optional<long> sym = std::nullopt;

VermaVector b(int k, std::optional<long> w, int order) { return VermaVector::basis(k, w, order); }

SeriesN n_series(int order) { return SeriesN::constant(order, PolyN::variable()); }

// [H, X+] - 2X+ and [H, X-] + 2X- as free-algebra elements.
WordSum h_relation(G x, int sign)
{
    WordSum r;
    r.add(Rational(1), {G::H, x}).add(Rational(-1), {x, G::H}).add(Rational(-2 * sign), {x});
    return r;
}

WordSum bracket_minus_h()
{
    WordSum r;
    r.add(Rational(1), {G::Xplus, G::Xminus}).add(Rational(-1), {G::Xminus, G::Xplus}).add(Rational(-1), {G::H});
    return r;
}

} // namespace

TEST_CASE("generator action on Verma modules", "[verma]")
{
    const Colouring nat = natural_colouring(2);
    const ModuleSpec m = DeformedVerma{nat, sym};
    VermaVector hb0(sym, 2);
    hb0.add(0, n_series(2));
    CHECK(act_generator(G::H, b(0, sym, 2), m) == hb0);
    CHECK(act_generator(G::Xplus, b(0, sym, 2), m).is_zero());
    VermaVector xb1(sym, 2);
    xb1.add(0, n_series(2));
    CHECK(act_generator(G::Xplus, b(1, sym, 2), m) == xb1);
    CHECK(act_word({G::Xminus, G::Xminus}, b(0, sym, 2), m) == b(2, sym, 2));

    WordSum bracket;
    bracket.add(Rational(1), {G::Xplus, G::Xminus}).add(Rational(-1), {G::Xminus, G::Xplus});
    CHECK(act_word_sum(bracket, b(0, sym, 2), m) == hb0);
}

TEST_CASE("weight relations hold on every module", "[verma]")
{
    std::vector<Colouring> colourings{natural_colouring(3), q_colouring(3),
                                      perturbed_colouring(random_perturbation(1, 3))};
    for (const Colouring& psi : colourings) {
        for (int sign : {1, -1}) {
            const WordSum r = h_relation(sign > 0 ? G::Xplus : G::Xminus, sign);
            CHECK(kills_all_vermas(r, psi, 8));
            CHECK(kills_all_simples(r, 3, 6));
            for (long n : {-3L, 0L, 4L}) {
                const ModuleSpec m = DeformedVerma{psi, n};
                for (int k = 0; k <= 5; ++k) {
                    CHECK(act_word_sum(r, b(k, n, 3), m).is_zero());
                }
            }
        }
    }
}

TEST_CASE("classical separation", "[verma]")
{
    CHECK(kills_all_vermas(bracket_minus_h(), natural_colouring(2), 10));
    CHECK(kills_all_simples(bracket_minus_h(), 2, 8));
    CHECK_FALSE(kills_all_vermas(bracket_minus_h(), q_colouring(2), 10));
    WordSum xplus;
    xplus.add(Rational(1), {G::Xplus});
    CHECK_FALSE(kills_all_vermas(xplus, natural_colouring(2), 10));
    CHECK_FALSE(kills_all_simples(xplus, 2, 8));
}

TEST_CASE("natural colouring at h^0 is the classical Verma module", "[verma]")
{
    std::mt19937_64 rng(41);
    const Colouring nat = natural_colouring(2);
    for (long n : {-5L, 0L, 3L, 9L}) {
        const ModuleSpec deformed = DeformedVerma{nat, n};
        const ModuleSpec classical = ClassicalVerma{n};
        for (int trial = 0; trial < 20; ++trial) {
            const Word w = oracle::random_word(rng, 5);
            const int k = static_cast<int>(rng() % 6);
            const VermaVector x = act_word(w, b(k, n, 2), deformed);
            const VermaVector y = act_word(w, b(k, n, 2), classical);
            CHECK(x == y);
        }
    }
}

TEST_CASE("simple modules truncate", "[verma]")
{
    const ModuleSpec s3 = SimpleModule{3};
    CHECK(act_generator(G::Xminus, b(3, 3L, 1), s3).is_zero());
    CHECK(act_generator(G::Xminus, b(2, 3L, 1), s3) == b(3, 3L, 1));
    VermaVector xb3(3L, 1);
    xb3.add(2, SeriesN::constant(1, PolyN(Rational(3))));
    CHECK(act_generator(G::Xplus, b(3, 3L, 1), s3) == xb3);
    CHECK_THROWS_AS(act_generator(G::H, b(4, 3L, 1), s3), Error);
}

TEST_CASE("acting with normal-ordered elements", "[verma]")
{
    const Colouring nat = natural_colouring(2);
    const ModuleSpec m = DeformedVerma{nat, sym};
    const AlgebraElement x = AlgebraElement::monomial(1, 1, SeriesN::one(2));
    VermaVector nb1(sym, 2);
    nb1.add(1, n_series(2));
    CHECK(act_element(x, b(1, sym, 2), m) == nb1);
    CHECK(act_element(x, b(1, sym, 2), m) == act_word({G::Xminus, G::Xplus}, b(1, sym, 2), m));

    // p(H) b_k = p(n - 2k) b_k
    const SeriesN p = SeriesN::constant(2, PolyN::variable() * PolyN::variable());
    VermaVector expected(sym, 2);
    const PolyN w = PolyN::linear(Rational(1), Rational(-6));
    expected.add(3, SeriesN::constant(2, w * w));
    CHECK(act_element(AlgebraElement::monomial(0, 0, p), b(3, sym, 2), m) == expected);
    CHECK(act_element(AlgebraElement(2), b(3, sym, 2), m).is_zero());
}

TEST_CASE("symbols of homogeneous elements", "[verma]")
{
    const Colouring psi = q_colouring(3);
    const ContextPtr ctx = StraighteningContext::create(psi);
    const CoeffSeq sx = symbol_of(generator(G::Xplus, 3), psi, 8);
    CHECK(sx.same_entries(as_coeff_seq(psi, 8)));
    CHECK(sx.flags.verma_type_verified);
    const CoeffSeq sxx = symbol_of(from_word({G::Xplus, G::Xminus}, ctx), psi, 8);
    CHECK(sxx.same_entries(straightening_rhs(psi, 8)));
    const CoeffSeq sh = symbol_of(generator(G::H, 3), psi, 6);
    for (int k = 0; k <= 6; ++k) {
        CHECK(sh.at(k) == SeriesN::constant(3, PolyN::linear(Rational(1), Rational(-2L * k))));
    }
    try {
        symbol_of(generator(G::H, 3) + generator(G::Xplus, 3), psi, 4);
        FAIL("expected NotHomogeneous");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotHomogeneous);
    }
}

TEST_CASE("the symbol of a product series is the ltimes product", "[verma][property]")
{
    std::mt19937_64 rng(42);
    for (const Colouring& psi : {q_colouring(3), perturbed_colouring(random_perturbation(6, 3))}) {
        for (int d = 0; d <= 2; ++d) {
            const CoeffSeq xi = oracle::random_sequence(rng, d, 3, 8, d + 3);
            AlgebraElement x(3);
            for (int a = d; a <= 8; ++a) {
                x.add(a - d, a, xi.at(a));
            }
            CHECK(symbol_of(x, psi, 8).same_entries(ltimes(psi, xi)));
        }
    }
}

TEST_CASE("the straightening relation lies in the ideal", "[verma]")
{
    for (const Colouring& psi : {natural_colouring(4), q_colouring(4), perturbed_colouring(random_perturbation(2, 4))}) {
        const CoeffSeq xi = solve_straightening(psi, 12);
        // X+X- acting as a word against the normal-ordered right-hand side.
        const ModuleSpec m = DeformedVerma{psi, sym};
        AlgebraElement rhs(4);
        for (int a = 0; a <= *xi.cutoff; ++a) {
            rhs.add(a, a, xi.at(a));
        }
        for (int k = 0; k <= 10; ++k) {
            CHECK(act_word({G::Xplus, G::Xminus}, b(k, sym, 4), m) == act_element(rhs, b(k, sym, 4), m));
        }
        CHECK_FALSE(kills_all_vermas(generator(G::Xplus, 4), psi, 10));
    }
}

TEST_CASE("the ideal is two-sided within the horizon", "[verma][property]")
{
    std::mt19937_64 rng(43);
    const Colouring psi = q_colouring(3);
    for (int trial = 0; trial < 10; ++trial) {
        const Word y = oracle::random_word(rng, 3);
        for (int sign : {1, -1}) {
            const WordSum r = h_relation(sign > 0 ? G::Xplus : G::Xminus, sign);
            WordSum left, right;
            for (const auto& [c, w] : r.terms) {
                Word lw = y, rw = w;
                lw.insert(lw.end(), w.begin(), w.end());
                rw.insert(rw.end(), y.begin(), y.end());
                left.add(c, lw);
                right.add(c, rw);
            }
            CHECK(kills_all_vermas(left, psi, 6));
            CHECK(kills_all_vermas(right, psi, 6));
        }
    }
}

TEST_CASE("Verma intertwiner", "[verma]")
{
    CHECK(verma_intertwiner_check(natural_colouring(2), 0, 10));
    CHECK(verma_intertwiner_check(q_colouring(4), 3, 10));
    for (long n = 0; n <= 5; ++n) {
        CHECK(verma_intertwiner_check(perturbed_colouring(random_perturbation(9, 4)), n, 10));
    }
    // A tabulated q-colouring with psi^5(1) altered breaks C3 at (k=3, n=1).
    auto t = oracle::tabulate(q_colouring(2), 12, -12, 12);
    t.values.at({5, 1}).set(1, Rational(7));
    const Colouring broken = Colouring::tabulated(2, t);
    CHECK(verma_intertwiner_check(Colouring::tabulated(2, oracle::tabulate(q_colouring(2), 12, -12, 12)), 1, 6));
    CHECK_FALSE(verma_intertwiner_check(broken, 1, 6));
    CHECK(verma_intertwiner_check(broken, 2, 6));
}
