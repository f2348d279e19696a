// Command-line front end. Exit status: 0 success, 1 negative verdict, 2 input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qmut/classifier.hpp"
#include "qmut/consequences.hpp"
#include "qmut/enumerator.hpp"
#include "qmut/io.hpp"
#include "qmut/normalizer.hpp"

using namespace qmut;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ColoredQuiver load(const std::string& path) {
    try {
        return load_quiver(read_file(path));
    } catch (const LoadError& e) {
        throw InputError(path + ": " + e.what());
    } catch (const InvariantError& e) {
        std::string msg = path + ": invalid quiver";
        for (const Violation& v : e.violations()) msg += "\n  " + v.message;
        throw InputError(msg);
    } catch (const std::runtime_error& e) {
        throw InputError(e.what());
    }
}

// Vertex given by index or by name.
Vertex resolve_vertex(const ColoredQuiver& q, const std::string& token) {
    for (Vertex v = 0; v < q.n(); ++v)
        if (q.name(v) == token) return v;
    try {
        std::size_t used = 0;
        int v = std::stoi(token, &used);
        if (used == token.size() && v >= 0 && v < q.n()) return v;
    } catch (const std::exception&) {
    }
    throw InputError("unknown vertex " + token);
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Colored quiver mutation classes of type A~"};
    app.require_subcommand(1);

    std::string file, out_path, cls_kind = "atilde", seed_file, archive_path, vertex;
    int times = 1, limit = -1, threads = 1;
    std::vector<int> apq, pqm;

    auto* validate_cmd = app.add_subcommand("validate", "Check the quiver invariants of a document");
    validate_cmd->add_option("FILE", file)->required();

    auto* mutate_cmd = app.add_subcommand("mutate", "Mutate at a vertex and print the result");
    mutate_cmd->add_option("FILE", file)->required();
    mutate_cmd->add_option("-v,--vertex", vertex, "Vertex index or name")->required();
    mutate_cmd->add_option("-k,--times", times, "Number of repetitions")->check(CLI::NonNegativeNumber);

    auto* normalize_cmd = app.add_subcommand("normalize", "Reduce a class member to the seed quiver");
    normalize_cmd->add_option("FILE", file)->required();
    normalize_cmd->add_option("--trace", out_path, "Write the stage trace as JSON");

    auto* check_cmd = app.add_subcommand("check", "Decide class membership");
    check_cmd->add_option("FILE", file)->required();
    check_cmd->add_option("--class", cls_kind, "a (line quivers) or atilde")->check(CLI::IsMember({"a", "atilde"}));

    auto* enumerate_cmd = app.add_subcommand("enumerate", "Enumerate a mutation class");
    auto* seed_opt = enumerate_cmd->add_option("--seed", seed_file, "Seed quiver document");
    auto* apq_opt = enumerate_cmd->add_option("--apq", apq, "Seed A~(P,Q) with M colors")->expected(3);
    seed_opt->excludes(apq_opt);
    enumerate_cmd->add_option("--limit", limit, "Stop after this many members");
    enumerate_cmd->add_option("--archive", archive_path, "Write a class archive");
    enumerate_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    auto* theorem_cmd = app.add_subcommand("verify-theorem", "Compare BFS with structural generation");
    theorem_cmd->add_option("PQM", pqm, "P Q M")->expected(3)->required();
    theorem_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    auto* zero_cmd = app.add_subcommand("zero-part", "Check the 0-colored part conditions");
    zero_cmd->add_option("FILE", file)->required();

    auto* bastian_cmd = app.add_subcommand("bastian", "Check the m = 1 parameter recovery");
    bastian_cmd->add_option("FILE", file)->required();

    auto* dot_cmd = app.add_subcommand("export-dot", "Render as Graphviz DOT");
    dot_cmd->add_option("FILE", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*validate_cmd) {
            ColoredQuiver q;
            try {
                q = load_quiver_unchecked(read_file(file));
            } catch (const LoadError& e) {
                throw InputError(file + ": " + e.what());
            }
            auto violations = validate(q);
            print(json{{"valid", violations.empty()}, {"violations", to_json(violations)}});
            return violations.empty() ? kOk : kNegative;
        }
        if (*mutate_cmd) {
            ColoredQuiver q = load(file);
            ColoredQuiver r = mutate_power(q, resolve_vertex(q, vertex), times);
            r.set_names(q.names());
            std::cout << save_quiver(r);
            return kOk;
        }
        if (*normalize_cmd) {
            ColoredQuiver q = load(file);
            if (!check_Qmpq(q).member) {
                print(to_json(check_Qmpq(q)));
                return kNegative;
            }
            NormalizationResult res = normalize(q);
            if (!out_path.empty()) write_file(out_path, to_json(res.trace).dump(2) + "\n");
            std::cout << save_quiver(res.normal_form);
            return kOk;
        }
        if (*check_cmd) {
            ColoredQuiver q = load(file);
            if (cls_kind == "a") {
                Verdict v = check_Qmn(q);
                print(to_json(v));
                return v.member ? kOk : kNegative;
            }
            ClassVerdict v = check_Qmpq(q);
            print(to_json(v));
            return v.member ? kOk : kNegative;
        }
        if (*enumerate_cmd) {
            if (seed_file.empty() && apq.empty()) throw InputError("enumerate needs --seed or --apq");
            ColoredQuiver seed;
            if (!apq.empty()) {
                if (apq[0] < 1 || apq[1] < 1 || apq[2] < 1) throw InputError("P, Q and M must be positive");
                seed = build_A_tilde(apq[0], apq[1], apq[2]);
            } else {
                seed = load(seed_file);
            }
            EnumerationOptions opts;
            if (limit > 0) opts.max_states = static_cast<std::size_t>(limit);
            opts.threads = threads;
            MutationClass cls = enumerate_class(seed, opts);
            if (!archive_path.empty()) {
                std::ofstream out(archive_path, std::ios::binary);
                if (!out) throw InputError("cannot write " + archive_path);
                write_class_archive(out, cls);
            }
            json summary{{"m", cls.m}, {"n", cls.n}, {"members", cls.size()}, {"edges", cls.edges.size()},
                         {"exhausted", cls.exhausted}, {"seed", cls.seed_digest}};
            if (!apq.empty()) summary["statistics"] = to_json(class_statistics(cls, apq[0], apq[1]));
            print(summary);
            return kOk;
        }
        if (*theorem_cmd) {
            if (pqm[0] < 1 || pqm[1] < 1 || pqm[2] < 1) throw InputError("P, Q and M must be positive");
            EnumerationOptions opts;
            opts.threads = threads;
            TheoremReport r = verify_theorem_A(pqm[0], pqm[1], pqm[2], opts);
            print(to_json(r));
            return r.agrees() ? kOk : kNegative;
        }
        if (*zero_cmd) {
            ZeroPartReport r = check_zero_part_corollary(load(file));
            print(to_json(r));
            return r.passes() ? kOk : kNegative;
        }
        if (*bastian_cmd) {
            ColoredQuiver q = load(file);
            if (q.m() != 1) throw InputError("bastian needs m = 1");
            ClassVerdict v = check_Qmpq(q);
            if (!v.member) {
                print(to_json(v));
                return kNegative;
            }
            bool ok = verify_bastian(q);
            json j = to_json(bastian_parameters(q, *v.certificate));
            j["holds"] = ok;
            print(j);
            return ok ? kOk : kNegative;
        }
        if (*dot_cmd) {
            ColoredQuiver q = load(file);
            ClassVerdict v = check_Qmpq(q);
            std::cout << export_dot(q, v.member ? &*v.certificate : nullptr);
            return kOk;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNegative;
    }
    return kOk;
}
