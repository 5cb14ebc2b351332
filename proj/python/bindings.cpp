// pybind11 module kelab._core. Points are lists of Python complex numbers.
#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kelab/chengyau.hpp"
#include "kelab/domains.hpp"
#include "kelab/errors.hpp"
#include "kelab/hermgeo.hpp"
#include "kelab/potentials.hpp"
#include "kelab/sampling.hpp"
#include "kelab/suites.hpp"
#include "kelab/vfield.hpp"

namespace py = pybind11;
using namespace kelab;

namespace {

using Coords = std::vector<cplx>;

ComplexPoint pt(const Coords& c) { return ComplexPoint(c); }
Coords coords(const ComplexPoint& z) { return {z.coords().begin(), z.coords().end()}; }

Coords eigen_vec(const Eigen::VectorXcd& v) { return {v.data(), v.data() + v.size()}; }

std::vector<Coords> eigen_mat(const Eigen::MatrixXcd& m) {
  std::vector<Coords> rows;
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(eigen_vec(m.row(i).transpose()));
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Kähler-Einstein potentials on model domains";

  auto base = py::register_exception<Error>(m, "KelabError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<MembershipError>(m, "MembershipError", base.ptr());
  py::register_exception<SingularityError>(m, "SingularityError", base.ptr());
  py::register_exception<DegenerateMetricError>(m, "DegenerateMetricError", base.ptr());
  py::register_exception<NotEinsteinError>(m, "NotEinsteinError", base.ptr());
  py::register_exception<NormalizationError>(m, "NormalizationError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<UnsupportedDomainError>(m, "UnsupportedDomainError", base.ptr());
  py::register_exception<BlowUpError>(m, "BlowUpError", base.ptr());
  py::register_exception<BracketingError>(m, "BracketingError", base.ptr());
  py::register_exception<ResolutionError>(m, "ResolutionError", base.ptr());

  py::class_<InvariantsRecord>(m, "Invariants")
      .def_readonly("name", &InvariantsRecord::name)
      .def_readonly("c", &InvariantsRecord::c)
      .def_readonly("n", &InvariantsRecord::n)
      .def_readonly("rank", &InvariantsRecord::rank)
      .def_readonly("rc", &InvariantsRecord::rc)
      .def("__repr__", [](const InvariantsRecord& r) {
        return "Invariants(" + r.name + ", c=" + std::to_string(r.c) + ", n=" + std::to_string(r.n) +
               ", rank=" + std::to_string(r.rank) + ")";
      });

  py::class_<DomainModel>(m, "Domain")
      .def_static("ball", &DomainModel::ball, py::arg("n"))
      .def_static("polydisc", &DomainModel::polydisc, py::arg("n"))
      .def_static("type_one", &DomainModel::type_one, py::arg("p"), py::arg("q"))
      .def_static("type_two", &DomainModel::type_two, py::arg("m"))
      .def_static("type_three", &DomainModel::type_three, py::arg("m"))
      .def_static("type_four", &DomainModel::type_four, py::arg("m"))
      .def_static("half_plane_product", &DomainModel::half_plane_product, py::arg("r"))
      .def_static("product", &DomainModel::product, py::arg("factors"))
      .def_static("flat", &DomainModel::flat, py::arg("n"))
      .def_property_readonly("kind", [](const DomainModel& d) { return to_string(d.kind()); })
      .def_property_readonly("dim", &DomainModel::dim)
      .def_property_readonly("rank", &DomainModel::rank)
      .def_property_readonly("name", &DomainModel::name)
      .def("invariants", &DomainModel::invariants)
      .def("contains", [](const DomainModel& d, const Coords& z) { return d.contains(pt(z)); })
      .def("is_ball_equivalent", &DomainModel::is_ball_equivalent)
      .def("to_json", [](const DomainModel& d) { return domain_to_json(d).dump(); })
      .def_static("from_json", [](const std::string& s) { return domain_from_json(json::parse(s)); })
      .def("__eq__", [](const DomainModel& a, const DomainModel& b) { return a == b; })
      .def("__repr__", &DomainModel::name);

  m.def("exceptional_invariants", &exceptional_invariants);
  m.def("generic_norm", [](const DomainModel& d, const Coords& z) { return generic_norm(d, pt(z)); });
  m.def("sample_points", [](const DomainModel& d, int count, std::uint64_t seed) {
    std::vector<Coords> out;
    for (const auto& z : sample_points(d, count, seed)) out.push_back(coords(z));
    return out;
  }, py::arg("domain"), py::arg("count"), py::arg("seed") = 1);

  py::class_<PotentialField>(m, "Potential")
      .def("__call__", [](const PotentialField& p, const Coords& z) { return p(pt(z)); })
      .def_property_readonly("domain", &PotentialField::domain)
      .def_property_readonly("dim", &PotentialField::dim)
      .def_property_readonly("ricci_constant", &PotentialField::ricci_constant)
      .def_property_readonly("analytic_order", &PotentialField::analytic_order)
      .def_property_readonly("label", &PotentialField::label)
      .def("scaled", &PotentialField::scaled)
      .def("fd_only", &PotentialField::fd_only)
      .def("__repr__", [](const PotentialField& p) { return "Potential(" + p.label() + ")"; });

  m.def("ball_potential", &ball_potential, py::arg("n"));
  m.def("flat_potential", &flat_potential, py::arg("n"));
  m.def("bergman_potential", &bergman_potential, py::arg("domain"));
  m.def("ke_potential", &ke_potential, py::arg("domain"), py::arg("K"));
  m.def("canonical_potential", py::overload_cast<const DomainModel&, double>(&canonical_potential), py::arg("domain"),
        py::arg("K"));
  m.def("rescaled_ball_potential", [](int n, double K, std::optional<Coords> u) {
    return rescaled_ball_potential(n, K, u ? std::optional<ComplexPoint>(pt(*u)) : std::nullopt);
  }, py::arg("n"), py::arg("K"), py::arg("boundary") = py::none());
  m.def("product_potential", &product_potential);
  m.def("siegel_potential", &siegel_potential);

  m.def("metric", [](const PotentialField& p, const Coords& z) {
    return eigen_mat(metric_from_potential(p, pt(z), false).g);
  }, "g_{a bbar} as a list of rows");
  m.def("gradient_length_sq", [](const PotentialField& p, const Coords& z) {
    return gradient_length_sq(p, metric_from_potential(p, pt(z), false));
  });
  m.def("key_equation_residual", [](const PotentialField& p, const Coords& z) {
    return eigen_vec(key_equation_residual(p, metric_from_potential(p, pt(z), true)));
  });
  m.def("einstein_defect", [](const PotentialField& p, const Coords& z, bool analytic) {
    return einstein_defect(p, pt(z), analytic);
  }, py::arg("potential"), py::arg("z"), py::arg("analytic") = false);
  m.def("delta_identity_residual", [](const PotentialField& p, const Coords& z, bool analytic) {
    return delta_identity(p, pt(z), analytic).residual;
  }, py::arg("potential"), py::arg("z"), py::arg("analytic") = false);

  py::class_<ConstantLengthCertificate>(m, "ConstantLengthCertificate")
      .def_readonly("constant", &ConstantLengthCertificate::constant)
      .def_readonly("max_deviation", &ConstantLengthCertificate::max_deviation)
      .def_readonly("sample_count", &ConstantLengthCertificate::sample_count)
      .def_readonly("lower_bound", &ConstantLengthCertificate::lower_bound)
      .def("valid", &ConstantLengthCertificate::valid);
  m.def("certify_constant_length",
        py::overload_cast<const PotentialField&, int, std::uint64_t, double>(&certify_constant_length),
        py::arg("potential"), py::arg("count") = 100, py::arg("seed") = 1, py::arg("tol") = 1e-8);

  m.def("vector_field", [](const ConstantLengthCertificate& c, const Coords& z) {
    const auto v = vector_field(c, pt(z));
    return py::make_tuple(eigen_vec(v.components), v.norm);
  }, "(components, norm) of V at z");
  m.def("dbar_defect", [](const PotentialField& p, const Coords& z) { return dbar_defect(p, pt(z)); });
  m.def("dbar_defect_law", [](const PotentialField& p, const Coords& z) { return dbar_defect_law(p, pt(z)); });
  m.def("integrate_flow", [](const PotentialField& p, const Coords& z0, double t, double dt, bool w_field) {
    return coords(integrate_flow(p, pt(z0), t, dt, w_field ? FlowField::W : FlowField::V));
  }, py::arg("potential"), py::arg("z0"), py::arg("t"), py::arg("dt") = 1e-3, py::arg("w_field") = false);

  m.def("kai_ohsawa_constant", [](const DomainModel& d) {
    const auto r = kai_ohsawa_constant(d);
    py::dict out;
    out["L"] = r.L;
    out["rc"] = r.lower_bound;
    out["c"] = r.c;
    out["spot_max_deviation"] = r.spot_max_deviation;
    out["slice_derivatives"] = r.slice_derivatives;
    return out;
  });

  py::class_<RadialPotential>(m, "RadialPotential")
      .def_property_readonly("n", &RadialPotential::n)
      .def_property_readonly("K", &RadialPotential::K)
      .def_property_readonly("phi0", &RadialPotential::phi0)
      .def_property_readonly("grid", &RadialPotential::grid)
      .def_property_readonly("phi", [](const RadialPotential& r) {
        std::vector<double> v;
        for (const auto& s : r.states()) v.push_back(s.phi);
        return v;
      })
      .def("at", [](const RadialPotential& r, double t) { return r.at(t).phi; })
      .def("as_potential", &RadialPotential::as_potential);
  m.def("shoot", &shoot, py::arg("n"), py::arg("K"), py::arg("bracket") = std::pair<double, double>{-4.0, 4.0},
        py::arg("tol") = 1e-12);
  m.def("radial_closed_form", &RadialPotential::from_closed_form, py::arg("n"), py::arg("K"));
  m.def("radial_gradient_length", &radial_gradient_length);
  m.def("boundary_limit_estimate", &boundary_limit_estimate);

  m.def("suite_names", [] {
    std::vector<std::string> names;
    for (const auto& s : suite_catalog()) names.push_back(s.name);
    return names;
  });
  m.def("run_suite_json", [](const std::string& name, const std::string& config) {
    json cfg;
    try {
      cfg = json::parse(config);
    } catch (const json::exception& e) {
      throw ConfigError(e.what());
    }
    py::gil_scoped_release release;
    return run_suite(name, cfg).to_json().dump();
  });
}
