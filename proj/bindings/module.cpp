#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qtope/genj.hpp"
#include "qtope/io.hpp"
#include "qtope/patterns.hpp"
#include "qtope/quotient_graph.hpp"

namespace py = pybind11;
using namespace qtope;

namespace {

Permutation perm_from_object(const py::object& obj) {
  if (py::isinstance<Permutation>(obj)) return obj.cast<Permutation>();
  if (py::isinstance<py::str>(obj))
    return parse_permutation(obj.cast<std::string>());
  std::vector<int> entries = obj.cast<std::vector<int>>();
  return Permutation(entries);
}

py::object json_to_py(const nlohmann::json& j) {
  py::module_ json = py::module_::import("json");
  return json.attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Lattice congruences of the weak order on S_n: equivalence classes, "
      "Hamilton paths on quotient graphs via greedy minimal jumps, and "
      "counting results.";

  py::register_exception<InvalidInputError>(m, "InvalidInputError",
                                            PyExc_ValueError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);
  py::register_exception<VerificationError>(m, "VerificationError",
                                            PyExc_AssertionError);

  py::class_<Permutation>(m, "Permutation")
      .def(py::init([](const py::object& obj) { return perm_from_object(obj); }))
      .def_static("identity", &Permutation::identity)
      .def("__len__", &Permutation::size)
      .def("__str__", [](const Permutation& p) { return to_string(p); })
      .def("__repr__",
           [](const Permutation& p) {
             return "Permutation(\"" + to_string(p) + "\")";
           })
      .def("__eq__", [](const Permutation& p,
                        const Permutation& q) { return p == q; })
      .def("__hash__", &Permutation::code)
      .def("entries", &Permutation::entries)
      .def("inversions",
           [](const Permutation& p) { return inversion_set(p).pairs(p.size()); })
      .def("ascents", &Permutation::ascents)
      .def("descents", &Permutation::descents)
      .def("lis_lds", [](const Permutation& p) { return lis_lds(p); });

  m.def("weak_leq", [](const py::object& p, const py::object& q) {
    return weak_leq(perm_from_object(p), perm_from_object(q));
  });
  m.def("join", [](const py::object& p, const py::object& q) {
    return join(perm_from_object(p), perm_from_object(q));
  });
  m.def("meet", [](const py::object& p, const py::object& q) {
    return meet(perm_from_object(p), perm_from_object(q));
  });
  m.def(
      "jump",
      [](const py::object& p, int value, const std::string& direction,
         int steps) -> std::optional<Permutation> {
        JumpDirection dir;
        if (direction == "left")
          dir = JumpDirection::kLeft;
        else if (direction == "right")
          dir = JumpDirection::kRight;
        else
          throw InvalidInputError("direction must be 'left' or 'right'");
        return jump(perm_from_object(p), value, dir, steps);
      },
      py::arg("p"), py::arg("value"), py::arg("direction"),
      py::arg("steps") = 1);

  py::class_<Fence>(m, "Fence")
      .def(py::init([](int a, int b, const std::vector<int>& left) {
             return make_fence(a, b, left);
           }),
           py::arg("a"), py::arg("b"), py::arg("left") = std::vector<int>{})
      .def_property_readonly("a", [](const Fence& f) { return int(f.a); })
      .def_property_readonly("b", [](const Fence& f) { return int(f.b); })
      .def_property_readonly("left",
                             [](const Fence& f) { return f.left_values(); })
      .def("is_essential", [](const Fence& f) { return f.essential(); })
      .def("__repr__", [](const Fence& f) {
        return "Fence(" + format_fences({&f, 1}) + ")";
      });

  m.def("forcing_less", &forcing_less);
  m.def("fence_count", &fence_count);

  py::class_<Congruence>(m, "Congruence")
      .def(py::init<int>(), "the finest congruence: the weak order itself")
      .def_static("from_fences",
                  [](int n, const std::vector<Fence>& generators) {
                    return Congruence::closure(n, generators);
                  })
      .def_static("from_terse",
                  [](int n, const std::string& text) {
                    return congruence_from_terse(n, text);
                  })
      .def_static("from_patterns",
                  [](int n, const std::vector<std::string>& patterns) {
                    std::vector<Pattern> parsed;
                    for (const std::string& t : patterns)
                      parsed.push_back(parse_pattern(t));
                    return congruence_from_patterns(WellBehavedSet(parsed), n);
                  })
      .def_property_readonly("n", &Congruence::n)
      .def("__len__", &Congruence::size)
      .def("__eq__", [](const Congruence& a,
                        const Congruence& b) { return a == b; })
      .def("is_essential", &Congruence::essential)
      .def("fences", &Congruence::fences)
      .def("reduced_diagram",
           [](const Congruence& c) { return reduced_diagram(c).arcs; })
      .def("terse",
           [](const Congruence& c) {
             return format_fences(reduced_diagram(c).arcs);
           })
      .def("restriction", &Congruence::restriction)
      .def("is_bar",
           [](const Congruence& c, const py::object& p, const py::object& q) {
             return c.is_bar(perm_from_object(p), perm_from_object(q));
           })
      .def("__repr__", [](const Congruence& c) {
        return "Congruence(n=" + std::to_string(c.n()) + ", reduced=\"" +
               format_fences(reduced_diagram(c).arcs) + "\")";
      });

  m.def("classes", [](const Congruence& c) {
    ClassPartition part = compute_classes(c);
    py::list out;
    for (const EquivalenceClass& cls : part.classes) {
      py::dict d;
      d["id"] = cls.id;
      d["min"] = cls.min;
      d["max"] = cls.max;
      d["size"] = cls.size;
      std::vector<Permutation> members;
      for (std::uint32_t r : cls.members)
        members.push_back(Permutation::from_lex_rank(part.n, r));
      d["members"] = members;
      out.append(std::move(d));
    }
    return out;
  });
  m.def("class_count",
        [](const Congruence& c) { return count_classes(c); });

  m.def("hamilton_path", [](const Congruence& c) {
    HamiltonPathResult path = hamilton_path(c);
    return py::make_tuple(path.representatives, path.class_ids);
  });
  m.def("algorithm_j",
        [](const std::vector<py::object>& language, const py::object& start) {
          std::vector<Permutation> members;
          for (const py::object& p : language)
            members.push_back(perm_from_object(p));
          return algorithm_j(members, perm_from_object(start));
        });
  m.def("is_cyclic_order", [](const Congruence& c) {
    CyclicOrderReport r = is_cyclic_order(c);
    return py::make_tuple(r.parity_condition, r.actually_cyclic);
  });

  m.def("analyze",
        [](const Congruence& c) { return json_to_py(analyze(c)); });
  m.def("quotient_graph_json", [](const Congruence& c) {
    ClassPartition part = compute_classes(c, false);
    RepSet reps = build_representatives(c, part);
    for (std::size_t id = 0; id < part.classes.size(); ++id)
      part.classes[id].representative = reps.class_rep[id];
    return json_to_py(graph_to_json(build_quotient_graph(part), part));
  });
  m.def("quotient_graph_dot", [](const Congruence& c) {
    ClassPartition part = compute_classes(c, false);
    RepSet reps = build_representatives(c, part);
    for (std::size_t id = 0; id < part.classes.size(); ++id)
      part.classes[id].representative = reps.class_rep[id];
    return graph_to_dot(build_quotient_graph(part), part);
  });

  m.def("count_congruences", [](int n) {
    return enumerate_essential_congruences(n, [](const Congruence&) {});
  });
  m.def("count_regular", &count_regular);
  m.def("count_vertex_transitive", &count_vertex_transitive);
  m.def("count_vt_noniso", &count_vt_noniso);
  m.def("count_noniso", [](int n) {
    NonIsoCounts counts = count_noniso(n);
    return py::make_tuple(counts.quotient_graphs, counts.regular);
  });
  m.def("max_degree_witness", [](int n) {
    MaxDegreeWitness w = max_degree_witness(n);
    py::dict d;
    d["min"] = w.class_min;
    d["max"] = w.class_max;
    d["degree"] = w.degree;
    d["congruence"] = w.congruence;
    return d;
  });

  m.def("avoid_set", [](int n, const std::vector<std::string>& patterns) {
    std::vector<Pattern> parsed;
    for (const std::string& t : patterns) parsed.push_back(parse_pattern(t));
    return avoid_set(n, parsed);
  });
  m.def("is_tame", [](const std::string& pattern) {
    return is_tame(parse_pattern(pattern));
  });
  m.def("pattern_contains", [](const py::object& p, const std::string& t) {
    return contains(perm_from_object(p), parse_pattern(t));
  });

  m.def("table1", [](int max_n, bool slow) { return table1_tsv(max_n, slow); },
        py::arg("max_n") = 7, py::arg("slow") = false);

  m.attr("__version__") = "0.1.0";
}
