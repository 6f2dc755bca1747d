#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tops/catalog.hpp"
#include "tops/codefile.hpp"
#include "tops/decode.hpp"
#include "tops/experiment.hpp"
#include "tops/pulse.hpp"
#include "tops/sim.hpp"

namespace py = pybind11;
using namespace tops;

PYBIND11_MODULE(tops_stbc, m) {
    m.doc() = "Space-time block code support-partition analysis and "
              "group ML decoding";

    py::register_exception<InvalidArgument>(m, "InvalidArgument",
                                            PyExc_ValueError);
    py::register_exception<NumericFailure>(m, "NumericFailure",
                                           PyExc_ArithmeticError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<SupportSet>(m, "SupportSet")
        .def_readonly("cells", &SupportSet::cells)
        .def("__repr__", &SupportSet::to_string);

    py::class_<CSRGroup>(m, "CSRGroup")
        .def_readonly("indices", &CSRGroup::indices)
        .def_readonly("support", &CSRGroup::support);

    py::class_<CSRPartition>(m, "CSRPartition")
        .def_readonly("groups", &CSRPartition::groups)
        .def_readonly("total_symbols", &CSRPartition::total_symbols)
        .def("p", &CSRPartition::p);

    py::class_<IntraGroupStructure>(m, "IntraGroupStructure")
        .def_readonly("group_id", &IntraGroupStructure::group_id)
        .def_readonly("subgroups", &IntraGroupStructure::subgroups);

    py::class_<CodeMetrics>(m, "CodeMetrics")
        .def_readonly("min_rank", &CodeMetrics::min_rank)
        .def_readonly("coding_gain", &CodeMetrics::coding_gain)
        .def_readonly("pair_count_examined", &CodeMetrics::pair_count_examined);

    py::class_<LinearSTBC>(m, "LinearSTBC")
        .def(py::init<std::string, int, int, std::vector<CMatrix>, bool>(),
             py::arg("name"), py::arg("n_tx"), py::arg("n_slots"),
             py::arg("weights"), py::arg("allow_nonsquare") = false)
        .def_readonly("name", &LinearSTBC::name)
        .def_readonly("n_tx", &LinearSTBC::n_tx)
        .def_readonly("n_slots", &LinearSTBC::n_slots)
        .def_readonly("weights", &LinearSTBC::weights)
        .def_readonly("energy_scale", &LinearSTBC::energy_scale)
        .def("k", &LinearSTBC::k);

    py::class_<PamAxis>(m, "PamAxis")
        .def_readonly("levels", &PamAxis::levels)
        .def_readonly("bits", &PamAxis::bits);

    py::class_<Constellation>(m, "Constellation")
        .def_readonly("name", &Constellation::name)
        .def_readonly("m", &Constellation::m)
        .def_readonly("separable", &Constellation::separable)
        .def_readonly("points", &Constellation::points)
        .def_readonly("bits_per_symbol", &Constellation::bits_per_symbol);

    py::class_<PulseFamily>(m, "PulseFamily")
        .def_readonly("gram", &PulseFamily::gram)
        .def("p_count", &PulseFamily::p_count)
        .def("sample_matrix", [](const PulseFamily& f) {
            RMatrix out(f.pulses.size(), f.grid_size());
            for (size_t i = 0; i < f.pulses.size(); ++i)
                for (int j = 0; j < f.grid_size(); ++j)
                    out(static_cast<int>(i), j) = f.pulses[i].samples[j];
            return out;
        });

    py::class_<DecodeResult>(m, "DecodeResult")
        .def_readonly("s_hat", &DecodeResult::s_hat)
        .def_readonly("x_hat", &DecodeResult::x_hat)
        .def_readonly("bits", &DecodeResult::bits)
        .def_readonly("metric_evals", &DecodeResult::metric_evals)
        .def_readonly("strategy", &DecodeResult::strategy)
        .def_readonly("fallback", &DecodeResult::fallback);

    py::class_<AuditEntry>(m, "AuditEntry")
        .def_readonly("m", &AuditEntry::m)
        .def_readonly("metric_evals", &AuditEntry::metric_evals);

    py::class_<AuditResult>(m, "AuditResult")
        .def_readonly("code_name", &AuditResult::code_name)
        .def_readonly("strategy", &AuditResult::strategy)
        .def_readonly("entries", &AuditResult::entries)
        .def_readonly("exponent", &AuditResult::exponent);

    py::class_<BerRow>(m, "BerRow")
        .def_readonly("code", &BerRow::code)
        .def_readonly("strategy", &BerRow::strategy)
        .def_readonly("constellation", &BerRow::constellation)
        .def_readonly("snr_db", &BerRow::snr_db)
        .def_readonly("bits", &BerRow::bits)
        .def_readonly("bit_errors", &BerRow::bit_errors)
        .def_readonly("ber", &BerRow::ber)
        .def_readonly("mean_metric_evals", &BerRow::mean_metric_evals);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("code", &ExperimentConfig::code)
        .def_readwrite("constellation", &ExperimentConfig::constellation)
        .def_readwrite("strategies", &ExperimentConfig::strategies)
        .def_readwrite("snr_db", &ExperimentConfig::snr_db)
        .def_readwrite("bits", &ExperimentConfig::bits)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("waveform", &ExperimentConfig::waveform)
        .def_readwrite("n_rx", &ExperimentConfig::n_rx)
        .def_readwrite("output", &ExperimentConfig::output);

    py::class_<ExperimentResult>(m, "ExperimentResult")
        .def_readonly("config_hash", &ExperimentResult::config_hash)
        .def_readonly("seed", &ExperimentResult::seed)
        .def_readonly("ber_rows", &ExperimentResult::ber_rows)
        .def_readonly("audits", &ExperimentResult::audits);

    m.def("catalog_names", &catalog_names);
    m.def("make_code", &make_code, py::arg("name"));
    m.def("make_constellation", &make_constellation, py::arg("spec"));
    m.def("support_set", &support_set, py::arg("matrix"),
          py::arg("tol") = -1.0);
    m.def("csr_partition", &csr_partition, py::arg("code"),
          py::arg("tol") = -1.0);
    m.def("pulse_assignable_partition", &pulse_assignable_partition,
          py::arg("partition"));
    m.def("quasi_orthogonal_pair", &quasi_orthogonal_pair, py::arg("a"),
          py::arg("b"), py::arg("tol") = -1.0);
    m.def("intra_group_structure", &intra_group_structure, py::arg("code"),
          py::arg("partition"), py::arg("group_id"), py::arg("tol") = -1.0);
    m.def("code_metrics", &code_metrics, py::arg("code"),
          py::arg("constellation"), py::arg("cap") = 4096);
    m.def("assemble_codeword", &assemble_codeword, py::arg("code"),
          py::arg("s"));
    m.def("build_pulse_family", &build_pulse_family, py::arg("p"),
          py::arg("t_s") = 1.0, py::arg("oversampling") = 64,
          py::arg("width") = -1.0);
    m.def("fractional_energy_bandwidth", &fractional_energy_bandwidth,
          py::arg("wave"), py::arg("fraction") = 0.99);
    m.def(
        "decode",
        [](const std::string& strategy, const FilteredObservations& obs,
           const CMatrix& h, const LinearSTBC& code,
           const CSRPartition& partition, const Constellation& cons) {
            return decode_with_strategy(strategy, obs, h, code, partition,
                                        cons);
        },
        py::arg("strategy"), py::arg("obs"), py::arg("h"), py::arg("code"),
        py::arg("partition"), py::arg("constellation"));

    py::class_<FilteredObservations>(m, "FilteredObservations")
        .def(py::init<>())
        .def_readwrite("y", &FilteredObservations::y)
        .def_readwrite("n0", &FilteredObservations::n0);

    m.def("run_ber_sweep", &run_ber_sweep, py::arg("config"));
    m.def("run_complexity_audit", &run_complexity_audit, py::arg("config"));
    m.def("report_partition", &report_partition, py::arg("code"));
    m.def("ber_csv", [](const ExperimentResult& r) {
        std::ostringstream os;
        write_ber_csv(os, r);
        return os.str();
    });
    m.def("audit_csv", [](const ExperimentResult& r) {
        std::ostringstream os;
        write_audit_csv(os, r);
        return os.str();
    });
    m.def("read_code_string", [](const std::string& text) {
        std::istringstream is(text);
        return read_code(is);
    });
    m.def("write_code_string", [](const LinearSTBC& code) {
        std::ostringstream os;
        write_code(os, code);
        return os.str();
    });
}
