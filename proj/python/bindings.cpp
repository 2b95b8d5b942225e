#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ebnet/capacity.hpp"
#include "ebnet/channels.hpp"
#include "ebnet/cli.hpp"
#include "ebnet/ebcheck.hpp"
#include "ebnet/protocols.hpp"
#include "ebnet/qcore.hpp"
#include "ebnet/sweep.hpp"

namespace py = pybind11;
using namespace ebnet;

namespace {

py::dict report_to_dict(const ProtocolReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["parameters"] = r.parameters;
  d["metric_name"] = r.metric_name;
  d["metric_value"] = r.metric_value;
  d["claimed_value"] = r.claimed_value;
  d["discrepancy"] = r.discrepancy;
  d["tolerance"] = r.tolerance;
  d["passed"] = r.passed();
  d["residuals"] = r.residuals;
  d["observables"] = r.observables;
  d["metadata"] = r.metadata;
  return d;
}

}  // namespace

PYBIND11_MODULE(_ebnet, m) {
  m.doc() = "Qudit states, Kraus channels, capacity formulas and protocol simulations";

  py::register_exception<std::domain_error>(m, "InvariantError", PyExc_ValueError);

  py::class_<QuantumState>(m, "QuantumState")
      .def(py::init<Matrix, Dims>(), py::arg("matrix"), py::arg("dims"))
      .def_static("from_ket", &QuantumState::from_ket, py::arg("ket"), py::arg("dims"))
      .def_property_readonly("matrix", &QuantumState::matrix)
      .def_property_readonly("dims", &QuantumState::dims)
      .def_property_readonly("dim", &QuantumState::dim)
      .def("purity", &QuantumState::purity)
      .def("__repr__", [](const QuantumState& s) {
        std::ostringstream o;
        o << "QuantumState(dim=" << s.dim() << ", factors=" << s.num_factors() << ")";
        return o.str();
      });

  py::class_<QuantumChannel>(m, "QuantumChannel")
      .def(py::init<std::vector<Matrix>, Dims, Dims>(), py::arg("kraus"), py::arg("in_dims"), py::arg("out_dims"))
      .def_property_readonly("kraus", &QuantumChannel::kraus)
      .def_property_readonly("in_dims", &QuantumChannel::in_dims)
      .def_property_readonly("out_dims", &QuantumChannel::out_dims)
      .def("trace_preservation_error", &QuantumChannel::trace_preservation_error);

  py::class_<ChoiMatrix>(m, "ChoiMatrix")
      .def_readonly("matrix", &ChoiMatrix::matrix)
      .def_readonly("in_dim", &ChoiMatrix::in_dim)
      .def_readonly("out_dim", &ChoiMatrix::out_dim)
      .def("input_marginal", &ChoiMatrix::input_marginal)
      .def("is_valid", &ChoiMatrix::is_valid, py::arg("tol") = kInvariantTol);

  py::class_<EbVerdict>(m, "EbVerdict")
      .def_readonly("is_eb_by_kraus", &EbVerdict::is_eb_by_kraus)
      .def_readonly("min_pt_eigenvalue", &EbVerdict::min_pt_eigenvalue)
      .def_readonly("is_ppt", &EbVerdict::is_ppt);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("d", &SweepRow::d)
      .def_readonly("x", &SweepRow::x)
      .def_readonly("c", &SweepRow::c)
      .def_readonly("c_e", &SweepRow::c_e)
      .def_readonly("ratio", &SweepRow::ratio)
      .def_readonly("eb", &SweepRow::eb);

  // States.
  m.def("computational_basis_state", &computational_basis_state, py::arg("d"), py::arg("j"));
  m.def("maximally_mixed_state", &maximally_mixed_state, py::arg("dims"));
  m.def("maximally_entangled_state", &maximally_entangled_state, py::arg("d"));
  m.def(
      "weyl_operator", [](int d, int a, int b) { return weyl_operator(d, a, b).matrix(); }, py::arg("d"), py::arg("a"),
      py::arg("b"));
  m.def("generalized_bell_state", &generalized_bell_state, py::arg("d"), py::arg("a"), py::arg("b"));
  m.def(
      "tensor", [](const QuantumState& a, const QuantumState& b) { return tensor(a, b); }, py::arg("a"), py::arg("b"));
  m.def(
      "partial_trace", [](const QuantumState& s, const std::vector<int>& keep) { return partial_trace(s, keep); },
      py::arg("state"), py::arg("keep"));
  m.def("von_neumann_entropy", &von_neumann_entropy, py::arg("state"));
  m.def("fidelity_with_pure", &fidelity_with_pure, py::arg("state"), py::arg("target"));
  m.def("random_pure_state", &random_pure_state, py::arg("d"), py::arg("seed"));

  // Channels.
  m.def("apply", &apply, py::arg("channel"), py::arg("state"));
  m.def(
      "apply_on_factors",
      [](const QuantumChannel& ch, const QuantumState& s, const std::vector<int>& factors) {
        return apply_on_factors(ch, s, factors);
      },
      py::arg("channel"), py::arg("state"), py::arg("factors"));
  m.def("compose_serial", &compose_serial, py::arg("second"), py::arg("first"));
  m.def("compose_parallel", &compose_parallel, py::arg("lhs"), py::arg("rhs"));
  m.def("choi", &choi, py::arg("channel"));
  m.def("choi_distance", &choi_distance, py::arg("lhs"), py::arg("rhs"));
  m.def("identity_channel", py::overload_cast<int>(&identity_channel), py::arg("d"));
  m.def("depolarizing_channel", &depolarizing_channel, py::arg("d"), py::arg("x"));
  m.def("controlled_weyl_channel", &controlled_weyl_channel, py::arg("d"));
  m.def("bell_measurement_channel", &bell_measurement_channel, py::arg("d"));
  m.def("dense_coding_mac", &dense_coding_mac, py::arg("d"), py::arg("x"));
  m.def("noisy_bm_channel", &noisy_bm_channel, py::arg("d"), py::arg("q"));
  m.def("flagged_bm_identity_channel", &flagged_bm_identity_channel, py::arg("d"), py::arg("q"));
  m.def("butterfly_channel", &butterfly_channel, py::arg("d"), py::arg("x"));

  // EB checks.
  m.def("kraus_rank_one_witness", &kraus_rank_one_witness, py::arg("channel"));
  m.def("choi_partial_transpose_min_eig", &choi_partial_transpose_min_eig, py::arg("channel"));
  m.def("eb_verdict", &eb_verdict, py::arg("channel"), py::arg("tol") = kInvariantTol);
  m.def("eb_threshold_scan", &eb_threshold_scan, py::arg("d"));
  m.def("eb_threshold_exact", &eb_threshold_exact, py::arg("d"));

  // Capacities.
  m.def("h_d", &h_d, py::arg("d"), py::arg("p"));
  m.def("holevo_capacity_depolarizing", &holevo_capacity_depolarizing, py::arg("d"), py::arg("x"));
  m.def("ea_capacity_depolarizing", &ea_capacity_depolarizing, py::arg("d"), py::arg("x"));
  m.def("superadditivity_ratio", &superadditivity_ratio, py::arg("d"), py::arg("x"));
  m.def(
      "holevo_quantity",
      [](const std::vector<double>& probabilities, const std::vector<QuantumState>& states) {
        if (probabilities.size() != states.size()) throw std::invalid_argument("one probability per state");
        std::vector<Ensemble::Item> items;
        for (std::size_t i = 0; i < states.size(); ++i) items.push_back({probabilities[i], states[i]});
        return holevo_quantity(Ensemble(std::move(items)));
      },
      py::arg("probabilities"), py::arg("states"));
  m.def("capacity_sweep", &capacity_sweep, py::arg("d"), py::arg("x_min"), py::arg("x_max"), py::arg("steps"),
        py::arg("parallel") = false);

  // Protocols and CLI.
  m.def("demo_names", &demo_names);
  m.def(
      "run_demo",
      [](const std::string& name, int d, double x, double q, std::uint64_t seed) {
        ProtocolReport report;
        {
          py::gil_scoped_release release;
          report = run_demo(name, d, x, q, seed);
        }
        return report_to_dict(report);
      },
      py::arg("name"), py::arg("d") = 2, py::arg("x") = 0.75, py::arg("q") = 0.5, py::arg("seed") = 1);
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one command line; returns (exit_code, stdout, stderr).");
}
