#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pliable/baselines.hpp"
#include "pliable/cli.hpp"
#include "pliable/codec.hpp"
#include "pliable/errors.hpp"
#include "pliable/shuffle.hpp"
#include "pliable/solvers.hpp"

namespace py = pybind11;
using namespace pliable;

namespace {

// Instances and schemes cross the boundary as JSON text in the CLI format.
PicInstance parse_instance(const std::string& text) { return instance_from_json(nlohmann::json::parse(text)); }

py::dict outer_report(const shuffle::OuterReport& r) {
  py::dict d;
  d["ok"] = r.ok();
  d["rows_regular"] = r.rows_regular;
  d["cols_regular"] = r.cols_regular;
  d["c4_free"] = r.c4_free;
  d["violating_pairs"] = r.violating_pairs;
  d["excess_overlap"] = r.excess_overlap;
  d["column_histogram"] = r.column_histogram;
  return d;
}

}  // namespace

PYBIND11_MODULE(_pliable, m) {
  m.doc() = "Pliable index coding and two-layer data shuffling";

  py::register_exception<Error>(m, "PliableError");

  m.def("two_block_instance", [](std::size_t n) { return to_json(two_block_instance(n)).dump(); }, py::arg("n"));
  m.def(
      "random_instance",
      [](std::size_t mm, std::size_t n, double p, std::size_t c, std::uint64_t seed) {
        return to_json(random_instance(mm, n, p, c, seed).instance).dump();
      },
      py::arg("m"), py::arg("n"), py::arg("p"), py::arg("c"), py::arg("seed"));

  m.def(
      "solve",
      [](const std::string& instance, const std::string& solver, std::uint64_t seed, std::size_t L_max,
         std::uint32_t q) {
        const auto o = cli::solve(parse_instance(instance), solver, seed, L_max, q);
        return py::make_tuple(o.line, o.json.dump());
      },
      py::arg("instance"), py::arg("solver"), py::arg("seed") = 0, py::arg("L_max") = 3, py::arg("q") = 2);

  m.def(
      "verify_scheme",
      [](const std::string& instance, const std::string& scheme) -> py::object {
        const auto v = codec::verify_scheme(codec::scheme_from_json(nlohmann::json::parse(scheme)),
                                            parse_instance(instance));
        if (!v.ok()) return py::none();
        std::vector<std::size_t> one_based;
        for (auto j : v.assignment->assigned) one_based.push_back(j + 1);
        return py::cast(one_based);
      },
      py::arg("instance"), py::arg("scheme"));

  m.def("expected_patterns", &solvers::expected_patterns, py::arg("m"), py::arg("n"), py::arg("p"), py::arg("c"),
        py::arg("k"));
  m.def(
      "k0_bracket",
      [](std::size_t mm, std::size_t n, double p, std::size_t c) {
        const auto b = solvers::k0_bracket(mm, n, p, c);
        py::dict d;
        d["k0"] = b.k0;
        d["x1"] = b.x1;
        d["x2"] = b.x2;
        d["x1_root"] = b.x1_root;
        d["x2_root"] = b.x2_root;
        d["in_bracket"] = b.in_bracket;
        d["in_strict_bracket"] = b.in_strict_bracket;
        return d;
      },
      py::arg("m"), py::arg("n"), py::arg("p"), py::arg("c"));

  m.def(
      "build_outer_recursive",
      [](std::size_t d1, const std::vector<std::size_t>& primes, const std::vector<std::size_t>& reps) {
        return shuffle::build_outer_recursive(d1, primes, reps).rows();
      },
      py::arg("d1"), py::arg("primes"), py::arg("reps"));
  m.def(
      "verify_outer",
      [](const std::vector<std::vector<std::uint8_t>>& rows, std::size_t d1, std::size_t d2) {
        return outer_report(shuffle::verify_outer(shuffle::OuterLayer(rows), d1, d2));
      },
      py::arg("rows"), py::arg("d1") = 0, py::arg("d2") = 0);

  m.def("decode_probability_exact", &shuffle::decode_probability_exact, py::arg("m1"), py::arg("r"));

  m.def(
      "shuffle",
      [](const std::string& config, const std::vector<std::uint64_t>& seeds) {
        std::ostringstream csv;
        const auto s = cli::shuffle_experiment(shuffle::config_from_json(nlohmann::json::parse(config)), seeds, &csv);
        py::dict d;
        d["csv"] = csv.str();
        d["outer"] = outer_report(s.outer);
        d["mean_transmissions"] = s.mean_transmissions;
        d["mean_avg_hamming"] = s.mean_avg_hamming;
        d["mean_decode_rate"] = s.mean_decode_rate;
        d["max_c_budget"] = s.max_c_budget;
        d["implied_c"] = s.implied_c;
        d["min_cross_distance"] = s.min_cross_distance;
        return d;
      },
      py::arg("config"), py::arg("seeds"));

  m.def(
      "compare",
      [](const std::string& config, const std::vector<std::uint64_t>& seeds) {
        std::ostringstream csv;
        const auto s = cli::compare_experiment(shuffle::config_from_json(nlohmann::json::parse(config)), seeds, &csv);
        py::dict d;
        d["csv"] = csv.str();
        d["pliable_tx"] = s.pliable_tx;
        d["uncoded_tx"] = s.uncoded_tx;
        d["index_coded_tx"] = s.index_coded_tx;
        d["pliable_over_uncoded"] = s.pliable_over_uncoded;
        d["index_over_uncoded"] = s.index_over_uncoded;
        d["pliable_avg_hamming"] = s.pliable_avg_hamming;
        d["random_avg_hamming"] = s.random_avg_hamming;
        d["outer_violations"] = s.outer_violations;
        return d;
      },
      py::arg("config"), py::arg("seeds"));

  m.def(
      "run",
      [](const std::string& kind, const std::map<std::string, std::string>& params,
         const std::vector<std::uint64_t>& seeds) {
        cli::ExperimentSpec spec;
        spec.kind = kind;
        spec.params = params;
        spec.seeds = seeds;
        std::ostringstream out, err;
        const int code = cli::run(spec, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("kind"), py::arg("params"), py::arg("seeds") = std::vector<std::uint64_t>{0});
}
