#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <vector>

#include "ordyn/runner.hpp"

namespace py = pybind11;
using namespace ordyn;

namespace {

py::object json_to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(json_to_py(v));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it)
        out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default: return py::none();
  }
}

PointSet pointset_from_list(const GroupSpace& G,
                            const std::vector<std::vector<std::int64_t>>& pts) {
  std::vector<GroupPoint> out;
  out.reserve(pts.size());
  for (const auto& c : pts) out.push_back(G.make(c));
  return PointSet(std::move(out));
}

std::vector<std::int64_t> point_coords(const GroupPoint& p) {
  return {p.c.begin(), p.c.begin() + p.arity};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Numerical lab for translation dynamics on weighted Orlicz spaces";

  py::register_exception<parse_error>(m, "ParseError");
  py::register_exception<precondition_error>(m, "PreconditionError");
  py::register_exception<capacity_error>(m, "CapacityError");
  py::register_exception<divergence_error>(m, "DivergenceError");
  py::register_exception<ordyn::domain_error>(m, "DomainError");

  py::class_<YoungFunction>(m, "YoungFunction")
      .def_static("power", &YoungFunction::power, py::arg("p"))
      .def_static("power_log", &YoungFunction::power_log, py::arg("alpha"))
      .def("__call__", &YoungFunction::evaluate, py::arg("t"))
      .def("conjugate", [](const YoungFunction& f, double y) { return f.conjugate(y); },
           py::arg("y"))
      .def("conjugate_function",
           [](const YoungFunction& f) { return f.conjugate_function(); })
      .def("inverse", [](const YoungFunction& f, double y) { return f.inverse(y); },
           py::arg("y"))
      .def("young_gap",
           [](const YoungFunction& f, double x, double y) { return f.young_gap(x, y); },
           py::arg("x"), py::arg("y"))
      .def_property_readonly("name", &YoungFunction::name);

  py::class_<GroupPoint>(m, "GroupPoint")
      .def_property_readonly("coords", &point_coords)
      .def("__eq__", [](const GroupPoint& a, const GroupPoint& b) { return a == b; })
      .def("__repr__", [](const GroupPoint& p) {
        std::string s = "GroupPoint(";
        for (int i = 0; i < p.arity; ++i)
          s += (i ? "," : "") + std::to_string(p.c[i]);
        return s + ")";
      });

  py::class_<GroupSpace>(m, "GroupSpace")
      .def_static("integer_line", &GroupSpace::integer_line)
      .def_static("cyclic", &GroupSpace::cyclic, py::arg("d"))
      .def_static("lattice_line", &GroupSpace::lattice_line, py::arg("h"))
      .def_static("heisenberg", &GroupSpace::heisenberg)
      .def("point",
           [](const GroupSpace& G, const std::vector<std::int64_t>& c) { return G.make(c); },
           py::arg("coords"))
      .def("identity", &GroupSpace::identity)
      .def("mul", &GroupSpace::mul)
      .def("inv", &GroupSpace::inv)
      .def("pow", &GroupSpace::pow, py::arg("a"), py::arg("n"))
      .def_property_readonly("haar_mass", &GroupSpace::haar_mass)
      .def_property_readonly("label", &GroupSpace::label)
      .def_property_readonly("abelian", &GroupSpace::abelian);

  py::class_<PointSet>(m, "PointSet")
      .def(py::init([](const GroupSpace& G, const std::vector<std::vector<std::int64_t>>& pts) {
             return pointset_from_list(G, pts);
           }),
           py::arg("G"), py::arg("points"))
      .def_static("box",
                  [](const GroupSpace& G, const std::vector<std::int64_t>& lo,
                     const std::vector<std::int64_t>& hi) { return PointSet::box(G, lo, hi); },
                  py::arg("G"), py::arg("lo"), py::arg("hi"))
      .def("__len__", &PointSet::size);

  py::class_<Weight>(m, "Weight")
      .def_static("constant", &Weight::constant, py::arg("v"))
      .def_static("exp_abs", &Weight::exp_abs, py::arg("c"))
      .def("__call__",
           [](const Weight& w, const GroupSpace& G, const GroupPoint& p) { return w(G, p); })
      .def_property_readonly("label", &Weight::label);

  py::class_<SimpleFunction>(m, "SimpleFunction")
      .def(py::init([](const GroupSpace& G,
                       const std::vector<std::pair<std::vector<std::int64_t>,
                                                   std::complex<double>>>& atoms) {
             std::vector<SimpleFunction::Atom> out;
             out.reserve(atoms.size());
             for (const auto& [c, amp] : atoms) out.emplace_back(G.make(c), amp);
             return SimpleFunction(G, std::move(out));
           }),
           py::arg("G"), py::arg("atoms"))
      .def_static("zero", &SimpleFunction::zero)
      .def_static("indicator", &SimpleFunction::indicator)
      .def("__len__", &SimpleFunction::size)
      .def("support",
           [](const SimpleFunction& f) {
             std::vector<std::pair<std::vector<std::int64_t>, std::complex<double>>> out;
             for (const auto& [p, amp] : f.support())
               out.emplace_back(point_coords(p), amp);
             return out;
           })
      .def("plus", &SimpleFunction::plus)
      .def("minus", &SimpleFunction::minus)
      .def("scaled", &SimpleFunction::scaled)
      .def("__eq__", [](const SimpleFunction& a, const SimpleFunction& b) { return a == b; });

  py::class_<NormResult>(m, "NormResult")
      .def_readonly("value", &NormResult::value)
      .def_readonly("certified_gap", &NormResult::certified_gap)
      .def_property_readonly("method",
                             [](const NormResult& r) { return to_string(r.method); })
      .def("__repr__", [](const NormResult& r) {
        return "NormResult(value=" + std::to_string(r.value) + ", method=" +
               to_string(r.method) + ")";
      });

  m.def("modular", &modular, py::arg("f"), py::arg("phi"));
  m.def("luxemburg_norm",
        [](const SimpleFunction& f, const YoungFunction& phi) { return luxemburg_norm(f, phi); });
  m.def("orlicz_norm",
        [](const SimpleFunction& f, const YoungFunction& phi) { return orlicz_norm(f, phi); });
  m.def("weighted_norm",
        [](const SimpleFunction& f, const Weight& w, const YoungFunction& phi) {
          return weighted_norm(f, w, phi);
        });
  m.def("dual_ball_oracle",
        [](const SimpleFunction& g, const YoungFunction& psi) {
          return dual_ball_oracle(g, psi);
        });
  m.def("norm_equivalence_check", [](const SimpleFunction& f, const YoungFunction& phi) {
    const auto e = norm_equivalence_check(f, phi);
    py::dict d;
    d["luxemburg"] = e.luxemburg;
    d["orlicz"] = e.orlicz;
    d["ratio"] = e.ratio;
    return d;
  });

  m.def("translate", &translate, py::arg("f"), py::arg("a"), py::arg("n"));
  m.def("operator_norm_bound",
        [](const GroupSpace& G, const GroupPoint& a, const Weight& w, const PointSet& sample) {
          return operator_norm_bound(G, a, w, sample);
        });
  m.def("criterion_quantity",
        [](const GroupSpace& G, const PointSet& E, const GroupPoint& a, std::int64_t n,
           const Weight& w, const YoungFunction& phi) {
          return criterion_quantity(G, E, a, n, w, phi);
        });
  m.def("criterion_quantity_direct",
        [](const GroupSpace& G, const PointSet& E, const GroupPoint& a, std::int64_t n,
           const Weight& w, const YoungFunction& phi) {
          return criterion_quantity_direct(G, E, a, n, w, phi);
        });
  m.def("blowup_collapse_probe",
        [](const SimpleFunction& f, const SimpleFunction& g, double eps, const GroupPoint& a,
           const Weight& w, const YoungFunction& phi, const std::vector<std::int64_t>& schedule) {
          return json_to_py(blowup_to_json(
              blowup_collapse_probe(f, g, eps, a, w, phi, schedule)));
        });
  m.def("abelian_obstruction_check",
        [](const GroupSpace& G, const PointSet& K, const GroupPoint& a, const Weight& w,
           std::int64_t horizon) {
          return json_to_py(obstruction_to_json(abelian_obstruction_check(G, K, a, w, horizon)));
        },
        py::arg("G"), py::arg("K"), py::arg("a"), py::arg("w"), py::arg("horizon") = 16);
  m.def("validate_weight",
        [](const GroupSpace& G, const Weight& w,
           const std::vector<std::pair<std::vector<std::int64_t>,
                                       std::vector<std::int64_t>>>& pairs,
           const std::vector<std::vector<std::int64_t>>& generators) {
          std::vector<std::pair<GroupPoint, GroupPoint>> sample;
          sample.reserve(pairs.size());
          for (const auto& [x, y] : pairs) sample.emplace_back(G.make(x), G.make(y));
          std::vector<GroupPoint> gens;
          for (const auto& g : generators) gens.push_back(G.make(g));
          return json_to_py(validation_to_json(validate_weight(G, w, sample, gens)));
        },
        py::arg("G"), py::arg("w"), py::arg("pairs"),
        py::arg("generators") = std::vector<std::vector<std::int64_t>>{});
  m.def("delta2_probe",
        [](const YoungFunction& phi, const std::vector<double>& grid, double blowup_factor) {
          const auto rep = phi.delta2_probe(grid, blowup_factor);
          py::dict d;
          d["constant"] = rep.constant;
          d["pass"] = rep.pass;
          return d;
        },
        py::arg("phi"), py::arg("grid"), py::arg("blowup_factor") = 10.0);
  m.def("tabulate_conjugate",
        [](const YoungFunction& phi, double y_lo, double y_hi, int n) {
          return json_to_py(conjugate_table_to_json(tabulate_conjugate(phi, y_lo, y_hi, n)));
        },
        py::arg("phi"), py::arg("y_lo"), py::arg("y_hi"), py::arg("n"));
  m.def("orbit", [](const SimpleFunction& f, const GroupPoint& a, std::int64_t N,
                    const Weight& w, const YoungFunction& phi) {
    return json_to_py(orbit_to_json(orbit(f, a, N, w, phi)));
  });
  m.def("is_torsion",
        [](const GroupSpace& G, const GroupPoint& a, std::int64_t horizon) {
          const auto d = is_torsion(G, a, horizon);
          return d ? py::object(py::int_(*d)) : py::object(py::none());
        });
  m.def("aperiodicity_window",
        [](const GroupSpace& G, const GroupPoint& a, const PointSet& K, std::int64_t horizon) {
          return json_to_py(aperiodicity_to_json(aperiodicity_window(G, a, K, horizon)));
        });
  m.def("periodic_point",
        [](const SimpleFunction& f, const PointSet& E, const GroupPoint& a, std::int64_t n_k,
           std::int64_t L_max, const Weight& w, const YoungFunction& phi) {
          const auto cand = periodic_point(f, E, a, n_k, L_max, w, phi);
          const double re = weighted_norm(translate(cand.v, a, n_k).minus(cand.v), w, phi).value;
          return json_to_py(periodic_to_json(cand, re));
        });
  m.def("orbit_hit",
        [](const SimpleFunction& f, const SimpleFunction& g, const GroupPoint& a, double eps,
           std::int64_t N, const Weight& w, const YoungFunction& phi) {
          const auto n = orbit_hit(f, g, a, eps, N, w, phi);
          return n ? py::object(py::int_(*n)) : py::object(py::none());
        });

  m.def("transitivity_certificate",
        [](const GroupSpace& G, const PointSet& K, const GroupPoint& a, const Weight& w,
           const YoungFunction& phi, const std::vector<std::int64_t>& schedule, double tol) {
          CertifyConfig cc;
          cc.tol = tol;
          return json_to_py(certificate_to_json(
              transitivity_certificate(G, K, a, w, phi, schedule, cc)));
        },
        py::arg("G"), py::arg("K"), py::arg("a"), py::arg("w"), py::arg("phi"),
        py::arg("schedule"), py::arg("tol") = 1e-9);
  m.def("mixing_certificate",
        [](const GroupSpace& G, const PointSet& K, const GroupPoint& a, const Weight& w,
           const YoungFunction& phi, std::int64_t N, double tol) {
          CertifyConfig cc;
          cc.tol = tol;
          return json_to_py(certificate_to_json(mixing_certificate(G, K, a, w, phi, N, cc)));
        },
        py::arg("G"), py::arg("K"), py::arg("a"), py::arg("w"), py::arg("phi"), py::arg("N"),
        py::arg("tol") = 1e-9);
  m.def("chaos_certificate",
        [](const GroupSpace& G, const PointSet& K, const GroupPoint& a, const Weight& w,
           const YoungFunction& phi, const std::vector<std::int64_t>& schedule,
           std::int64_t L_max, double tol) {
          CertifyConfig cc;
          cc.tol = tol;
          cc.L_max = L_max;
          return json_to_py(certificate_to_json(chaos_certificate(G, K, a, w, phi, schedule, cc)));
        },
        py::arg("G"), py::arg("K"), py::arg("a"), py::arg("w"), py::arg("phi"),
        py::arg("schedule"), py::arg("L_max") = 8, py::arg("tol") = 1e-9);

  m.def("run_json", [](const std::string& config) {
    json doc;
    try {
      doc = json::parse(config);
    } catch (const nlohmann::json::exception& e) {
      throw parse_error(std::string("config parse failed: ") + e.what());
    }
    const auto cfg = ExperimentConfig::parse(doc);
    return run(cfg).to_json().dump(2);
  });
  m.def("run", [](const py::dict& config) {
    json doc;
    try {
      doc = json::parse(py::str(py::module_::import("json").attr("dumps")(config)).cast<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw parse_error(std::string("config conversion failed: ") + e.what());
    }
    const auto cfg = ExperimentConfig::parse(doc);
    return json_to_py(run(cfg).to_json());
  });
  m.def("presets", [] {
    py::dict d;
    for (const auto& [name, doc] : presets()) d[py::str(name)] = json_to_py(doc);
    return d;
  });

  m.attr("__version__") = RunReport::artifact_version;
}
