#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "senticl/corpus.hpp"
#include "senticl/curriculum.hpp"
#include "senticl/errors.hpp"
#include "senticl/experiment.hpp"
#include "senticl/models.hpp"
#include "senticl/nnet.hpp"
#include "senticl/rng.hpp"
#include "senticl/swn_features.hpp"
#include "senticl/swn_lexicon.hpp"

namespace py = pybind11;
using namespace senticl;

namespace {

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json py_to_json(const py::object& obj) {
  const auto dumped =
      py::cast<std::string>(py::module_::import("json").attr("dumps")(obj));
  return nlohmann::json::parse(dumped);
}

ExperimentConfig config_from_py(const py::object& obj) {
  return ExperimentConfig::from_json(py_to_json(obj));
}

double gradcheck_aux(std::uint64_t seed) {
  Rng rng(seed);
  AuxModel model(9, Rng::mix(seed, 1));
  Eigen::VectorXd x(9);
  for (int j = 0; j < 9; ++j) x[j] = rng.uniform(-1.0, 1.0);
  const int label = static_cast<int>(rng.below(5));
  auto loss = [&] { return -std::log(model.forward(x)[label]); };
  auto backward = [&] { return model.loss_and_backward(x, label); };
  return grad_check(model.params(), loss, backward, Rng::mix(seed, 2), 200)
      .max_rel_error;
}

double gradcheck_cnn(std::uint64_t seed) {
  Rng rng(seed);
  const int dim = 5;
  auto model = make_classifier(ModelKind::kim_cnn, dim, Rng::mix(seed, 1));
  Eigen::MatrixXd x(8, dim);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < dim; ++c) x(r, c) = rng.uniform(-0.5, 0.5);
  auto loss = [&] { return -std::log(model->forward(x, 8)[2]); };
  auto backward = [&] { return model->loss_and_backward(x, 8, 2); };
  return grad_check(model->params(), loss, backward, Rng::mix(seed, 2), 200)
      .max_rel_error;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Curriculum-learning experiments for SST-5 sentiment classification: "
      "SentiWordNet lexicon features, a difficulty model, easy-to-hard "
      "schedules, and seeded training runs.";

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

  py::class_<WordScore>(m, "WordScore")
      .def_readonly("positivity", &WordScore::positivity)
      .def_readonly("negativity", &WordScore::negativity)
      .def_readonly("objectivity", &WordScore::objectivity)
      .def("__repr__", [](const WordScore& s) {
        return "WordScore(positivity=" + std::to_string(s.positivity) +
               ", negativity=" + std::to_string(s.negativity) +
               ", objectivity=" + std::to_string(s.objectivity) + ")";
      });

  py::class_<SentimentLexicon>(m, "SentimentLexicon")
      .def("lookup", &SentimentLexicon::lookup, py::arg("lemma"),
           "Mean scores for a lemma (case-insensitive), or None when absent.")
      .def("__len__", &SentimentLexicon::size)
      .def_property_readonly("record_count", &SentimentLexicon::record_count);

  m.def(
      "load_lexicon",
      [](const std::string& path) { return load_swn_file(path); },
      py::arg("path"), "Parse a SentiWordNet 3.0 file into per-word means.");

  py::class_<Example>(m, "Example")
      .def_readonly("id", &Example::id)
      .def_readonly("tokens", &Example::tokens)
      .def_readonly("label", &Example::label);

  py::class_<Dataset>(m, "Dataset")
      .def_readonly("train", &Dataset::train)
      .def_readonly("dev", &Dataset::dev)
      .def_readonly("test", &Dataset::test);

  m.def("parse_tree", &parse_ptb_tree_line, py::arg("line"),
        "Parse one parenthesized sentiment tree into tokens and a label.");
  m.def(
      "load_sst_dir",
      [](const std::string& dir) { return load_sst_dir(dir); }, py::arg("dir"),
      "Load train.txt/dev.txt/test.txt of parenthesized trees.");
  m.def(
      "load_tsv_dataset",
      [](const std::string& train, const std::string& dev,
         const std::string& test) { return load_tsv_dataset(train, dev, test); },
      py::arg("train"), py::arg("dev"), py::arg("test"),
      "Load label<TAB>sentence splits.");

  m.def(
      "feature_matrix",
      [](const SentimentLexicon& lex, const std::vector<Example>& split) {
        return feature_matrix(extract_all(lex, split));
      },
      py::arg("lexicon"), py::arg("examples"),
      "Raw 9-feature rows [l, P, N, O, AD, P/l, N/l, O/l, AD/l].");
  m.def(
      "normalized_feature_matrix",
      [](const SentimentLexicon& lex, const std::vector<Example>& train,
         const std::vector<Example>& split) {
        const NormalizationSpec spec = fit_normalizer(extract_all(lex, train));
        return normalized_matrix(spec, extract_all(lex, split));
      },
      py::arg("lexicon"), py::arg("train"), py::arg("examples"),
      "Feature rows mean-centered and scaled with statistics fitted on train.");

  m.def(
      "rank_by_score",
      [](const std::vector<double>& difficulty) {
        return rank(Strategy::sentiwordnet(difficulty), difficulty.size(), 0);
      },
      py::arg("difficulty"),
      "Easiest-first order over ids; ties break by ascending id.");
  m.def(
      "rank_shuffled",
      [](std::size_t n, std::uint64_t seed) {
        return rank(Strategy::none(), n, seed);
      },
      py::arg("n"), py::arg("seed"), "The no-curriculum order: a seeded shuffle.");
  m.def(
      "make_schedule",
      [](const std::vector<int>& order, int bs, const std::string& mode) {
        return json_to_py(
            make_schedule(order, bs, scheduler_mode_from_string(mode)).to_json());
      },
      py::arg("order"), py::arg("bs"), py::arg("mode") = "baby_steps",
      "Chunk an order into curriculum phases; returns the schedule as a dict.");

  m.def(
      "run_single",
      [](const py::object& config, std::uint64_t seed) {
        return json_to_py(run_single(config_from_py(config), seed).result.to_json());
      },
      py::arg("config"), py::arg("seed"),
      "One full curriculum run from a config dict; returns the result dict.");
  m.def(
      "run_comparison",
      [](const py::object& config) {
        nlohmann::json arr = nlohmann::json::array();
        for (const RunReport& r : run_comparison(config_from_py(config)))
          arr.push_back(r.to_json());
        return json_to_py(arr);
      },
      py::arg("config"),
      "Paired multi-seed comparison across strategies; list of report dicts.");

  m.def("gradcheck_aux", &gradcheck_aux, py::arg("seed") = 20260814,
        "Max relative error of the difficulty model's gradients.");
  m.def("gradcheck_cnn", &gradcheck_cnn, py::arg("seed") = 20260814,
        "Max relative error of the CNN classifier's gradients.");
}
