#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmut/classifier.hpp"
#include "qmut/consequences.hpp"
#include "qmut/enumerator.hpp"
#include "qmut/io.hpp"
#include "qmut/isomorphism.hpp"
#include "qmut/normalizer.hpp"
#include "qmut/quiver.hpp"

namespace py = pybind11;
using namespace qmut;

namespace {

// Reports cross the boundary as plain Python containers.
py::object to_python(const nlohmann::ordered_json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

std::vector<std::tuple<int, int, int, int>> arrow_tuples(const std::vector<Arrow>& arrows) {
    std::vector<std::tuple<int, int, int, int>> out;
    for (const Arrow& a : arrows) out.emplace_back(a.from, a.to, a.color, a.count);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Colored quiver mutation classes of type A~";

    py::register_exception<InvariantError>(mod, "InvariantError", PyExc_ValueError);
    py::register_exception<LoadError>(mod, "LoadError", PyExc_ValueError);
    py::register_exception<HypothesisViolation>(mod, "HypothesisViolation", PyExc_ValueError);
    py::register_exception<NormalizationError>(mod, "NormalizationError", PyExc_RuntimeError);
    py::register_exception<CrosscheckError>(mod, "CrosscheckError", PyExc_AssertionError);

    py::class_<ColoredQuiver>(mod, "ColoredQuiver")
        .def(py::init<int, int>(), py::arg("m"), py::arg("n"))
        .def_property_readonly("m", &ColoredQuiver::m)
        .def_property_readonly("n", &ColoredQuiver::n)
        .def("multiplicity", &ColoredQuiver::multiplicity, py::arg("i"), py::arg("j"), py::arg("c"))
        .def("set_multiplicity", &ColoredQuiver::set_multiplicity, py::arg("i"), py::arg("j"), py::arg("c"),
             py::arg("count"))
        .def("set_pair", &ColoredQuiver::set_pair, py::arg("i"), py::arg("j"), py::arg("c"), py::arg("count") = 1)
        .def("color", &ColoredQuiver::color, py::arg("i"), py::arg("j"))
        .def("arrows", [](const ColoredQuiver& q) { return arrow_tuples(q.arrows()); })
        .def_property("names", &ColoredQuiver::names, &ColoredQuiver::set_names)
        .def("__eq__", [](const ColoredQuiver& a, const ColoredQuiver& b) { return a == b; })
        .def("__repr__", [](const ColoredQuiver& q) {
            return "<ColoredQuiver m=" + std::to_string(q.m()) + " n=" + std::to_string(q.n()) + ">";
        });

    mod.def("validate", [](const ColoredQuiver& q) { return to_python(to_json(validate(q))); });
    mod.def("is_valid", &is_valid);
    mod.def("mutate", &mutate, py::arg("q"), py::arg("j"));
    mod.def("mutate_formula", &mutate_formula, py::arg("q"), py::arg("j"));
    mod.def("mutate_steps", &mutate_steps, py::arg("q"), py::arg("j"));
    mod.def("mutate_power", &mutate_power, py::arg("q"), py::arg("j"), py::arg("times"));
    mod.def("mutate_seq", &mutate_seq, py::arg("q"), py::arg("sequence"));
    mod.def("inverse_mutate", &inverse_mutate, py::arg("q"), py::arg("j"));
    mod.def("relabel", &relabel, py::arg("q"), py::arg("perm"));
    mod.def("build_A_tilde", &build_A_tilde, py::arg("p"), py::arg("q"), py::arg("m"));
    mod.def(
        "build_line_quiver",
        [](int n, int m, std::optional<std::vector<Color>> colors) {
            return colors ? build_line_quiver(n, m, *colors) : build_line_quiver(n, m);
        },
        py::arg("n"), py::arg("m"), py::arg("colors") = py::none());

    mod.def("canonical_digest", [](const ColoredQuiver& q) { return canonical_form(q).digest; });
    mod.def("canonical_quiver", &canonical_quiver);
    mod.def("are_isomorphic", &are_isomorphic);

    mod.def("check_Qmn", [](const ColoredQuiver& q) { return to_python(to_json(check_Qmn(q))); });
    mod.def(
        "check_Qmpq",
        [](const ColoredQuiver& q, std::optional<std::pair<int, int>> target) {
            return to_python(to_json(check_Qmpq(q, target)));
        },
        py::arg("q"), py::arg("target") = py::none());

    mod.def("normalize", [](const ColoredQuiver& q) {
        NormalizationResult r = normalize(q);
        py::dict out;
        out["normal_form"] = r.normal_form;
        out["p"] = r.p;
        out["q"] = r.q;
        out["trace"] = to_python(to_json(r.trace));
        return out;
    });

    mod.def(
        "enumerate_class",
        [](const ColoredQuiver& seed, std::size_t max_states, int max_depth, int threads) {
            EnumerationOptions opts;
            opts.max_states = max_states;
            opts.max_depth = max_depth;
            opts.threads = threads;
            MutationClass cls;
            {
                py::gil_scoped_release release;
                cls = enumerate_class(seed, opts);
            }
            py::dict members;
            for (const auto& [digest, member] : cls.members) members[py::str(digest)] = member.representative;
            py::dict out;
            out["m"] = cls.m;
            out["n"] = cls.n;
            out["seed"] = cls.seed_digest;
            out["exhausted"] = cls.exhausted;
            out["edges"] = cls.edges.size();
            out["members"] = members;
            return out;
        },
        py::arg("seed"), py::arg("max_states") = std::size_t{100000000}, py::arg("max_depth") = -1,
        py::arg("threads") = 1);
    mod.def(
        "generate_all_members",
        [](int p, int q, int m, double budget) {
            std::map<std::string, ColoredQuiver> out;
            {
                py::gil_scoped_release release;
                out = generate_all_members(p, q, m, budget);
            }
            return out;
        },
        py::arg("p"), py::arg("q"), py::arg("m"), py::arg("budget") = 1e8);
    mod.def("verify_theorem_A", [](int p, int q, int m) {
        TheoremReport r;
        {
            py::gil_scoped_release release;
            r = verify_theorem_A(p, q, m);
        }
        return to_python(to_json(r));
    });

    mod.def("verify_bastian", &verify_bastian);
    mod.def("check_zero_part_corollary",
            [](const ColoredQuiver& q) { return to_python(to_json(check_zero_part_corollary(q))); });

    mod.def(
        "save_quiver",
        [](const ColoredQuiver& q, const std::string& mode) {
            if (mode != "full" && mode != "half") throw py::value_error("mode must be 'full' or 'half'");
            return save_quiver(q, mode == "half" ? DocumentMode::Half : DocumentMode::Full);
        },
        py::arg("q"), py::arg("mode") = "full");
    mod.def("load_quiver", [](const std::string& text) { return load_quiver(text); });
    mod.def(
        "export_dot",
        [](const ColoredQuiver& q, bool highlight) {
            if (highlight) {
                ClassVerdict v = check_Qmpq(q);
                if (v.member) return export_dot(q, &*v.certificate);
            }
            return export_dot(q);
        },
        py::arg("q"), py::arg("highlight") = true);
}
