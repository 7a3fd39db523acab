// ckm: command-line front end. Every command reads and writes JSON documents;
// exit status 0 on success, 1 when a verification fails or the computation is
// refused, 2 on invalid input.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include <ckm/ckm.hpp>

namespace {

using ckm::json::Json;

constexpr int exit_ok = 0;
constexpr int exit_false = 1;
constexpr int exit_input = 2;

struct Options {
    std::string command;
    int order = 4;
    bool order_given = false;
    int kmax = 12;
    long nmin = -12;
    long nmax = 12;
    std::string colouring = "natural";
    std::string in;
    std::string out;
    std::uint64_t seed = 1;
};

// Failure tagged with the pipeline stage it came from.
struct StageError {
    std::string stage;
    ckm::ErrorCode code;
    std::string message;
};

template <class F>
auto stage(const std::string& name, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const ckm::Error& e) {
        throw StageError{name, e.code(), e.what()};
    }
}

[[noreturn]] void input_error(const std::string& stage_name, const std::string& msg)
{
    throw StageError{stage_name, ckm::ErrorCode::InputSchemaError, "InputSchemaError: " + msg};
}

Json read_json_file(const std::string& path, const std::string& what)
{
    std::ifstream f(path);
    if (!f) {
        input_error("read " + what, "cannot open '" + path + "'");
    }
    try {
        return Json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        input_error("read " + what, "'" + path + "' is not valid JSON: " + e.what());
    }
}

Json read_input(const Options& o)
{
    if (o.in.empty()) {
        input_error("read input", "this command needs --in");
    }
    return read_json_file(o.in, "input");
}

struct ResolvedColouring {
    ckm::Colouring psi;
    Json id; // "natural", "q" or the inline document
};

// Parses the --colouring argument. Certification is left to the caller.
ResolvedColouring load_colouring(const Options& o)
{
    if (o.colouring == "natural") {
        return {ckm::natural_colouring(o.order), "natural"};
    }
    if (o.colouring == "q") {
        return {ckm::q_colouring(o.order), "q"};
    }
    std::string path = o.colouring;
    if (path.rfind("file:", 0) == 0) {
        path = path.substr(5);
    }
    const Json doc = read_json_file(path, "colouring");
    ckm::Colouring psi = stage("parse colouring", [&] { return ckm::json::colouring_from_json(doc); });
    if (o.order_given && psi.order() != o.order) {
        input_error("parse colouring", "colouring file has order " + std::to_string(psi.order()) +
                                           " but --order is " + std::to_string(o.order));
    }
    return {std::move(psi), doc};
}

ResolvedColouring certified_colouring(const Options& o)
{
    ResolvedColouring c = load_colouring(o);
    if (!c.psi.axioms_verified()) {
        c.psi = stage("certify colouring", [&] { return ckm::certify(c.psi, o.kmax, o.nmin, o.nmax); });
    }
    return c;
}

struct Outcome {
    Json document;
    int status = exit_ok;
};

Outcome cmd_verify(const Options& o)
{
    const ResolvedColouring c = load_colouring(o);
    const ckm::AxiomReport r = stage("check axioms", [&] { return ckm::check_axioms(c.psi, o.kmax, o.nmin, o.nmax); });
    Json doc = ckm::json::to_json(r);
    doc["window"] = {{"kmax", o.kmax}, {"nmin", o.nmin}, {"nmax", o.nmax}};
    return {doc, r.passed() ? exit_ok : exit_false};
}

Outcome cmd_solve(const Options& o)
{
    const ResolvedColouring c = certified_colouring(o);
    const Json doc = read_input(o);
    const ckm::CoeffSeq theta = stage("parse input", [&] { return ckm::json::coeff_seq_from_json(doc); });
    if (theta.entries.empty()) {
        input_error("parse input", "right-hand side has no entries");
    }
    const ckm::CoeffSeq xi = stage("solve", [&] { return ckm::solve(c.psi, theta); });
    return {ckm::json::to_json(xi)};
}

Outcome cmd_straighten(const Options& o)
{
    const ResolvedColouring c = certified_colouring(o);
    return {ckm::json::to_json(stage("solve straightening", [&] { return ckm::solve_straightening(c.psi, o.kmax); }))};
}

Outcome cmd_btriv(const Options& o)
{
    const ResolvedColouring c = certified_colouring(o);
    return {ckm::json::to_json(stage("solve b-trivialization", [&] { return ckm::solve_b_trivialization(c.psi, o.kmax); }))};
}

Outcome cmd_act(const Options& o)
{
    const ResolvedColouring c = certified_colouring(o);
    const Json doc = read_input(o);
    if (!doc.is_object() || !doc.contains("word") || !doc.contains("vector") || doc.size() != 2) {
        input_error("parse input", "expected {\"word\": [...], \"vector\": {...}}");
    }
    const ckm::Word w = stage("parse input", [&] { return ckm::json::word_from_json(doc["word"], "$.word"); });
    const ckm::VermaVector v =
        stage("parse input", [&] { return ckm::json::verma_vector_from_json(doc["vector"], "$.vector"); });
    if (v.order != c.psi.order()) {
        input_error("parse input", "vector order differs from the colouring order");
    }
    const ckm::ModuleSpec m = ckm::DeformedVerma{c.psi, v.weight};
    return {ckm::json::to_json(stage("act", [&] { return ckm::act_word(w, v, m); }))};
}

Outcome cmd_normal_form(const Options& o)
{
    const ResolvedColouring c = certified_colouring(o);
    const Json doc = read_input(o);
    if (!doc.is_object() || !doc.contains("word") || doc.size() != 1) {
        input_error("parse input", "expected {\"word\": [...]}");
    }
    const ckm::Word w = stage("parse input", [&] { return ckm::json::word_from_json(doc["word"], "$.word"); });
    const ckm::ContextPtr ctx =
        stage("solve straightening", [&] { return ckm::StraighteningContext::create(c.psi, o.kmax); });
    return {ckm::json::to_json(stage("normal form", [&] { return ckm::from_word(w, ctx); }), c.id)};
}

Outcome cmd_quantum_check(const Options& o)
{
    const ckm::QuantumRelationReport r =
        stage("quantum relation", [&] { return ckm::quantum_relation_report(o.order, o.kmax); });
    Json doc = {{"result", r.result},
                {"bracket", ckm::json::to_json(r.bracket, "q")},
                {"expected", ckm::json::to_json(r.expected)}};
    return {doc, r.result ? exit_ok : exit_false};
}

Outcome cmd_generate(const Options& o)
{
    ckm::Perturbation p;
    if (!o.in.empty()) {
        const Json doc = read_input(o);
        p = stage("parse input", [&] { return ckm::json::perturbation_from_json(doc); });
    } else {
        p = ckm::random_perturbation(o.seed, o.order);
    }
    return {ckm::json::to_json(stage("generate colouring", [&] { return ckm::perturbed_colouring(p); }))};
}

int run(int argc, char** argv)
{
    CLI::App app{"Exact computations in deformed rank-one Kac-Moody algebras"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--order", o.order, "truncation order M (series mod h^(M+1))")->check(CLI::NonNegativeNumber);
    app.add_option("--kmax", o.kmax, "index horizon")->check(CLI::PositiveNumber);
    app.add_option("--nmin", o.nmin, "lower end of the weight window");
    app.add_option("--nmax", o.nmax, "upper end of the weight window");
    app.add_option("--colouring", o.colouring, "natural | q | file:PATH | PATH");
    app.add_option("--in", o.in, "input document");
    app.add_option("--out", o.out, "output path (default stdout)");
    app.add_option("--seed", o.seed, "seed for generate");

    const std::map<std::string, std::function<Outcome(const Options&)>> commands{
        {"verify", cmd_verify},
        {"solve", cmd_solve},
        {"straighten", cmd_straighten},
        {"btriv", cmd_btriv},
        {"act", cmd_act},
        {"normal-form", cmd_normal_form},
        {"quantum-check", cmd_quantum_check},
        {"generate", cmd_generate},
    };
    const std::map<std::string, std::string> help{
        {"verify", "check axioms C1-C3 of a colouring"},
        {"solve", "solve psi |x xi = theta for the CoeffSeq in --in"},
        {"straighten", "solve the straightening equation psi |x xi = psi[+1]"},
        {"btriv", "solve the b-trivialization equation N |x xi = psi"},
        {"act", "act with a word on a Verma vector"},
        {"normal-form", "PBW normal form of a word"},
        {"quantum-check", "compare [X+, X-] with [H]_q in the q-coloured algebra"},
        {"generate", "a perturbed colouring from --seed or a perturbation in --in"},
    };
    for (const auto& [name, fn] : commands) {
        app.add_subcommand(name, help.at(name))->callback([&o, name = name] { o.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_input;
    }
    o.order_given = app.count("--order") > 0;
    if (o.nmin > o.nmax) {
        std::cerr << "error: --nmin exceeds --nmax\n";
        return exit_input;
    }

    try {
        Outcome r = commands.at(o.command)(o);
        const std::string text = ckm::json::dump(r.document);
        if (o.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(o.out, std::ios::binary);
            if (!f) {
                std::cerr << "error: cannot write '" << o.out << "'\n";
                return exit_input;
            }
            f << text;
        }
        return r.status;
    } catch (const StageError& e) {
        std::cerr << "error [" << o.command << " / " << e.stage << "]: " << e.message << "\n";
        return e.code == ckm::ErrorCode::InputSchemaError ? exit_input : exit_false;
    }
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
