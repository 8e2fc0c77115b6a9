#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mackeykit/mackeykit.hpp"

namespace py = pybind11;
using namespace mackeykit;

namespace {

// JSON crosses the boundary as text; the Python layer wraps it with json.loads.
Json parse(const std::string& s) {
  try {
    return Json::parse(s);
  } catch (const Json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

std::vector<std::vector<std::string>> matrix_strings(const Matrix& m) {
  std::vector<std::vector<std::string>> out(m.rows(), std::vector<std::string>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c).get_str();
  return out;
}

std::vector<std::string> labels(const GroupPtr& g) {
  std::vector<std::string> out;
  for (const auto& c : g->classes()) out.push_back(c.label);
  return out;
}

struct Group {
  GroupPtr g;
};

GroupPtr ptr(const Group* g) { return g ? g->g : nullptr; }

std::string levels_of(const MackeyFunctor& m) { return mackey_levels_json(m).dump(); }

RingInput ring_input(const std::string& ring, const GroupPtr& g) { return ring_from_json(parse(ring), g); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Mackey functor computations over finite groups";

  static py::exception<VerificationError> verification(m, "VerificationError", PyExc_ValueError);
  static py::exception<InputError> input(m, "InputError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const VerificationError& e) {
      py::set_error(verification, e.what());
    } catch (const InputError& e) {
      py::set_error(input, e.what());
    }
  });

  py::class_<Group>(m, "Group")
      .def_property_readonly("name", [](const Group& g) { return g.g->name(); })
      .def_property_readonly("order", [](const Group& g) { return g.g->order(); })
      .def_property_readonly("is_abelian", [](const Group& g) { return g.g->is_abelian(); })
      .def_property_readonly("class_labels", [](const Group& g) { return labels(g.g); })
      .def_property_readonly("class_orders",
                             [](const Group& g) {
                               std::vector<std::size_t> out;
                               for (const auto& c : g.g->classes()) out.push_back(c.order);
                               return out;
                             })
      .def("to_json", [](const Group& g) { return group_to_json(g.g).dump(); })
      .def("__eq__", [](const Group& a, const Group& b) { return a.g == b.g; })
      .def("__repr__", [](const Group& g) {
        return "<Group " + (g.g->name().empty() ? std::string("(unnamed)") : g.g->name()) + " of order " +
               std::to_string(g.g->order()) + ">";
      });

  m.def("group", [](const std::string& spec) {
    // a built-in name, or inline JSON
    if (!spec.empty() && spec.front() == '{') return Group{group_from_json(parse(spec))};
    return Group{group_from_json(Json(spec))};
  }, py::arg("spec"));
  m.def("named_groups", &FiniteGroup::named_groups);

  py::class_<MackeyFunctor>(m, "MackeyFunctor")
      .def_property_readonly("group", [](const MackeyFunctor& f) { return Group{f.group()}; })
      .def("ranks", &MackeyFunctor::ranks)
      .def("levels_json", &levels_of)
      .def("is_zero", &MackeyFunctor::is_zero)
      .def("to_json", [](const MackeyFunctor& f) { return mackey_to_json(f).dump(); })
      .def("validation_failure",
           [](const MackeyFunctor& f, int samples, std::uint64_t seed) {
             return validation_failure(f, {Validation::kFull, samples, seed});
           },
           py::arg("samples") = 200, py::arg("seed") = 1)
      .def("double_coset_failure", &double_coset_failure)
      .def("__repr__", &MackeyFunctor::summary);

  py::class_<GreenFunctor>(m, "GreenFunctor")
      .def_property_readonly("underlying", &GreenFunctor::underlying)
      .def("table", [](const GreenFunctor& r, int k) { return matrix_strings(r.table(k)); })
      .def("to_json", [](const GreenFunctor& r) { return green_to_json(r).dump(); });

  py::class_<GreenModule>(m, "GreenModule")
      .def_property_readonly("ring", &GreenModule::ring)
      .def_property_readonly("underlying", &GreenModule::underlying)
      .def("to_json", [](const GreenModule& x) { return module_to_json(x).dump(); });

  m.def("table_of_marks", [](const Group& g) { return matrix_strings(table_of_marks(*g.g)); });
  m.def("burnside_ring", [](const Group& g) { return matrix_strings(burnside_ring(g.g)); });
  m.def("hom_rank", [](const Group& g, const std::string& x, const std::string& y) {
    return hom_basis(resolve_gset(x, g.g), resolve_gset(y, g.g)).size();
  });
  m.def("compose_spans", [](const std::string& second, const std::string& first, const Group* g) {
    return span_to_json(compose(span_from_json(parse(second), ptr(g)), span_from_json(parse(first), ptr(g)))).dump();
  }, py::arg("second"), py::arg("first"), py::arg("group") = nullptr);
  m.def("triangle_is_identity", [](const Group& g, const std::string& x) {
    GSet s = resolve_gset(x, g.g);
    return triangle_composite(s) == BurnsideElement::identity(s);
  });

  m.def("mackey", [](const std::string& spec, const Group* g) {
    return mackey_from_json(parse(spec), {Validation::kStructural, 0, 1}, ptr(g));
  }, py::arg("spec"), py::arg("group") = nullptr);
  m.def("box", [](const MackeyFunctor& a, const MackeyFunctor& b) { return BoxProduct(a, b).object(); });
  m.def("box_unit_invertible", [](const MackeyFunctor& x) {
    BoxProduct b(representable(GSet::point(x.group())), x);
    IsoWitness w = box_unit_iso(b);
    return compose(w.inverse, w.forward) == MackeyMorphism::identity(b.object()) &&
           compose(w.forward, w.inverse) == MackeyMorphism::identity(x);
  });

  m.def("green", [](const std::string& spec, const Group* g) { return green_from_json(parse(spec), ptr(g)); },
        py::arg("spec"), py::arg("group") = nullptr);
  m.def("green_failure", [](const std::string& spec, const Group* g) {
    GreenData d = green_data_from_json(parse(spec), ptr(g));
    return green_failure(d.underlying, d.tables, d.units);
  }, py::arg("spec"), py::arg("group") = nullptr);

  m.def("tor", [](const std::string& ring, const std::string& left, const std::string& right, int pmax,
                  const Group* g) {
    if (pmax < 0) throw InputError("pmax must be non-negative");
    RingInput r = ring_input(ring, ptr(g));
    GreenModule a = module_from_json(parse(left), &r), b = module_from_json(parse(right), &r);
    TorResult t = tor(a, b, pmax);
    std::vector<std::string> out;
    for (int p = 0; p <= pmax; ++p) out.push_back(levels_of(t.groups[p]));
    return out;
  }, py::arg("ring"), py::arg("left"), py::arg("right"), py::arg("pmax") = 2, py::arg("group") = nullptr);
  m.def("rel_box_levels", [](const std::string& ring, const std::string& left, const std::string& right,
                             const Group* g) {
    RingInput r = ring_input(ring, ptr(g));
    return levels_of(rel_box(module_from_json(parse(left), &r), module_from_json(parse(right), &r)).object());
  }, py::arg("ring"), py::arg("left"), py::arg("right"), py::arg("group") = nullptr);

  m.def("spectral_sequence", [](const std::string& spec, int rmax) {
    if (rmax < 1) throw InputError("rmax must be at least 1");
    FilteredComplex f = filtered_complex_from_json(parse(spec));
    if (auto fail = filtered_complex_failure(f)) throw VerificationError("not a filtered complex: " + *fail);
    auto pages = ss_pages(f, rmax);
    Json out = Json::object();
    Json pj = Json::array();
    for (const auto& page : pages) {
      Json entries = Json::array();
      for (const auto& e : page.entries)
        if (!e.object.is_zero()) entries.push_back({{"p", e.p}, {"q", e.q}, {"levels", mackey_levels_json(e.object)}});
      pj.push_back({{"r", page.r}, {"entries", entries}});
    }
    out["pages"] = pj;
    out["stable_page"] = stable_page(f);
    auto consistency = page_consistency_failure(pages);
    auto convergence = convergence_failure(f);
    out["consistent"] = !consistency;
    out["converges"] = !convergence;
    return out.dump();
  }, py::arg("spec"), py::arg("rmax") = 4);

  m.def("bpq", [](const Group& g) {
    BpqResult b = bpq_verify(g.g);
    Json out{{"k0", mackey_levels_json(b.k0.underlying())}, {"iso", morphism_to_json(b.iso.forward)}};
    return out.dump();
  });
  m.def("promonoidal_sweep", [](const Group& g, int max_feet) {
    PromonoidalSweep s = promonoidal_sweep(g.g, max_feet);
    return py::dict(py::arg("coend_cases") = s.coend_cases, py::arg("product_cases") = s.product_cases,
                    py::arg("failures") = s.failures.size());
  }, py::arg("group"), py::arg("max_feet") = 2);
}
