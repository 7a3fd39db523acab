// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"

using namespace ckm;
using G = Generator;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

std::vector<Colouring> generated_colourings(int count, int order)
{
    std::vector<Colouring> out;
    for (int seed = 1; seed <= count; ++seed) {
        out.push_back(perturbed_colouring(random_perturbation(static_cast<std::uint64_t>(seed), order)));
    }
    return out;
}

Colouring plant(const Colouring& base, long k, long n, int m, const Rational& v)
{
    auto t = oracle::tabulate(base, 10, -12, 12);
    SeriesQ s = t.values.at({k, n});
    s.set(m, s[m] + v);
    t.values.at({k, n}) = s;
    return Colouring::tabulated(base.order(), std::move(t));
}

Outcome natural_straightening()
{
    Outcome o;
    const CoeffSeq xi = solve_straightening(natural_colouring(6), 12);
    o.require(xi.d == 0 && xi.kmax() == 12, "window");
    o.require(xi.at(0) == SeriesN::constant(6, PolyN::variable()), "xi^0 != n");
    o.require(xi.at(1) == SeriesN::one(6), "xi^1 != 1");
    for (int a = 2; a <= 12; ++a) {
        o.require(xi.at(a).is_zero(), "xi^" + std::to_string(a) + " != 0");
    }
    return o;
}

Outcome quantum_straightening()
{
    Outcome o;
    const int M = 6;
    const CoeffSeq xi = solve_straightening(q_colouring(M), 12);
    const PolyN n = PolyN::variable();
    o.require(xi.at(0)[2] == (n * n * n - n) * Rational(1, 6), "h^2 coefficient of xi^0");
    // xi^0 against the termwise expansion of [j]_q at 21 integers; each
    // coefficient has degree <= M+1.
    for (long j = -10; j <= 10; ++j) {
        o.require(oracle::to_vector(eval(xi.at(0), Rational(j))) == oracle::qnumber(j, M), "xi^0 != [n]_q");
    }
    o.require(xi.at(1) == SeriesN::one(M), "xi^1 != 1");
    for (int a = 2; a <= 12; ++a) {
        o.require(xi.at(a).is_zero(), "xi^" + std::to_string(a) + " != 0");
    }
    // [k+1][n-k] - [k][n-k+1] = [n-2k]: degree <= m+2 in (k, n) at h^m, so
    // a 9x9 grid is a polynomial identity check.
    for (long k = 0; k <= M + 2; ++k) {
        for (long m = -4; m <= 4; ++m) {
            auto lhs = oracle::mul(oracle::qnumber(k + 1, M), oracle::qnumber(m - k, M));
            const auto rhs = oracle::mul(oracle::qnumber(k, M), oracle::qnumber(m - k + 1, M));
            for (std::size_t i = 0; i < lhs.size(); ++i) {
                lhs[i] -= rhs[i];
            }
            o.require(lhs == oracle::qnumber(m - 2 * k, M), "q-identity");
        }
    }
    return o;
}

Outcome quantum_relation()
{
    Outcome o;
    for (int M : {0, 2, 4, 6}) {
        o.require(quantum_relation_check(M), "M=" + std::to_string(M));
    }
    const QuantumRelationReport r = quantum_relation_report(2);
    const PolyN h = PolyN::variable();
    const SeriesN expected(2, {h, PolyN(), (h * h * h - h) * Rational(1, 6)});
    o.require(r.bracket.terms().size() == 1 && r.bracket.terms().count({0, 0}) == 1 &&
                  r.bracket.terms().at({0, 0}) == expected,
              "M=2 bracket");
    return o;
}

struct RoundTrip {
    Colouring psi;
    CoeffSeq xi; // straightening solution
    CoeffSeq theta;
};

std::vector<RoundTrip> round_trips;

Outcome solver_round_trip()
{
    Outcome o;
    std::mt19937_64 rng(4);
    const int kmax = 10;
    for (const Colouring& psi : generated_colourings(20, 4)) {
        const LtimesContext ctx(psi, kmax + 1);
        const CoeffSeq theta = straightening_rhs(psi, kmax);
        const CoeffSeq xi = solve(ctx, theta);
        o.require(verify_solution(ctx, xi, theta, kmax), "theta = psi[+1]");
        round_trips.push_back({psi, xi, theta});

        // A regular Verma-type sequence psi |x xi0, twisted down.
        const CoeffSeq xi0 = oracle::random_sequence(rng, 0, 4, kmax, 5);
        const CoeffSeq theta2 = twist_down(psi, ltimes(psi, xi0));
        const CoeffSeq xi2 = solve(ctx, theta2);
        o.require(verify_solution(ctx, xi2, theta2, kmax), "theta = twist_down(psi, xi)");
        o.require(xi2.same_entries(shift_down_weighted(xi0)), "twisted solution");
    }
    return o;
}

Outcome uniqueness()
{
    Outcome o;
    if (round_trips.empty()) {
        o.require(false, "criterion 4 produced no solutions");
    }
    std::mt19937_64 rng(5);
    for (const RoundTrip& rt : round_trips) {
        const LtimesContext ctx(rt.psi, 11);
        for (int a = 0; a <= 10; ++a) {
            for (int m = 0; m <= 4; ++m) {
                CoeffSeq bad = rt.xi;
                SeriesN delta(4);
                Rational c = oracle::small_rational(rng);
                if (c == Rational(0)) {
                    c = Rational(1);
                }
                delta.set(m, PolyN::linear(oracle::small_rational(rng), c));
                bad.at(a) += delta;
                o.require(!verify_solution(ctx, bad, rt.theta, 10),
                          "perturbation at a=" + std::to_string(a) + " h^" + std::to_string(m) + " accepted");
            }
        }
    }
    return o;
}

Outcome coherence()
{
    Outcome o;
    std::vector<Colouring> colourings{natural_colouring(4), q_colouring(4)};
    for (const Colouring& g : generated_colourings(3, 4)) {
        colourings.push_back(g);
    }
    for (const Colouring& psi : colourings) {
        std::mt19937_64 rng(6);
        const ContextPtr ctx = StraighteningContext::create(psi);
        const ModuleSpec m = DeformedVerma{psi, std::nullopt};
        for (int trial = 0; trial < 100; ++trial) {
            const Word w = oracle::random_word(rng, 6);
            const AlgebraElement x = from_word(w, ctx);
            for (int k = 0; k <= 8; ++k) {
                const VermaVector bk = VermaVector::basis(k, std::nullopt, 4);
                o.require(act_element(x, bk, m) == act_word(w, bk, m), "word " + std::to_string(trial));
            }
        }
    }
    return o;
}

Outcome b_trivialization()
{
    Outcome o;
    o.require(b_trivialization_image(natural_colouring(4), 10) == generator(G::Xplus, 4), "natural image != X+");
    std::vector<Colouring> colourings{q_colouring(4)};
    for (const Colouring& g : generated_colourings(3, 4)) {
        colourings.push_back(g);
    }
    const ModuleSpec classical = DeformedVerma{natural_colouring(4), std::nullopt};
    for (const Colouring& psi : colourings) {
        const AlgebraElement x = b_trivialization_image(psi, 10);
        for (int k = 0; k <= 10; ++k) {
            VermaVector expected(std::nullopt, 4);
            if (k > 0) {
                expected.add(k - 1, evaluate(psi, k, symbolic));
            }
            o.require(act_element(x, VermaVector::basis(k, std::nullopt, 4), classical) == expected,
                      "b_" + std::to_string(k));
        }
    }
    return o;
}

Outcome axiom_suite()
{
    Outcome o;
    for (int M = 0; M <= 8; ++M) {
        for (const Colouring& psi : {natural_colouring(M), q_colouring(M)}) {
            const AxiomReport r = check_axioms(psi, 12, -12, 12);
            o.require(r.symbolic && r.passed(), "built-in colouring at M=" + std::to_string(M));
        }
    }
    const Colouring base = q_colouring(3);
    const auto located = [&](const Colouring& planted, Axiom ax, long k, long n) {
        const AxiomReport r = check_axioms(planted, 10, -12, 12);
        return r.violations.size() == 1 && r.has(ax, k, n);
    };
    o.require(located(plant(base, 2, 3, 0, Rational(1)), Axiom::C1, 2, 3), "planted C1");
    o.require(located(plant(base, 3, 2, 2, Rational(1)), Axiom::C2, 3, 2), "planted C2");
    o.require(located(plant(base, 5, 1, 1, Rational(1, 2)), Axiom::C3, 3, 1), "planted C3");
    return o;
}

Outcome intertwiner()
{
    Outcome o;
    std::vector<Colouring> colourings{natural_colouring(4), q_colouring(4)};
    for (const Colouring& g : generated_colourings(20, 4)) {
        colourings.push_back(g);
    }
    for (const Colouring& psi : colourings) {
        for (long n = 0; n <= 5; ++n) {
            o.require(verma_intertwiner_check(psi, n, 10), "n=" + std::to_string(n));
        }
    }
    return o;
}

Outcome separation()
{
    Outcome o;
    WordSum bracket;
    bracket.add(Rational(1), {G::Xplus, G::Xminus}).add(Rational(-1), {G::Xminus, G::Xplus}).add(Rational(-1), {G::H});
    WordSum xplus;
    xplus.add(Rational(1), {G::Xplus});
    o.require(kills_all_vermas(bracket, natural_colouring(4), 12), "[X+,X-]-H on Vermas");
    o.require(kills_all_simples(bracket, 4, 8), "[X+,X-]-H on simples");
    o.require(!kills_all_vermas(xplus, natural_colouring(4), 12), "X+ on Vermas");
    o.require(!kills_all_simples(xplus, 4, 8), "X+ on simples");
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"natural straightening", natural_straightening},
        {"quantum straightening", quantum_straightening},
        {"quantum relation", quantum_relation},
        {"solver round trip", solver_round_trip},
        {"uniqueness", uniqueness},
        {"normal-form/action coherence", coherence},
        {"b-trivialization", b_trivialization},
        {"axiom suite", axiom_suite},
        {"intertwiner", intertwiner},
        {"classical separation", separation},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ("
                  << secs << " s)";
        if (!o.pass) {
            std::cout << "  " << o.detail;
            ++failures;
        }
        std::cout << "\n";
    }
    return failures == 0 ? 0 : 1;
}
