// Python bindings for the core library.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "rigspace/cleaner.hpp"
#include "rigspace/pipeline.hpp"
#include "rigspace/ranking.hpp"
#include "rigspace/rig.hpp"
#include "rigspace/text.hpp"

namespace py = pybind11;
using namespace rigspace;

namespace {

Corpus corpus_from(const std::vector<py::dict>& records) {
  std::vector<Document> docs;
  docs.reserve(records.size());
  for (const auto& r : records) {
    docs.push_back({r["id"].cast<std::string>(), r["text"].cast<std::string>(),
                    r["categories"].cast<std::vector<std::string>>(), 0});
  }
  return Corpus::from_documents(std::move(docs));
}

py::dict cell_values(std::size_t w, std::size_t word_docs, std::size_t category_docs,
                     std::size_t documents) {
  const auto cells = ContingencyCells::from_counts(w, word_docs, category_docs, documents);
  py::dict d;
  d["H"] = category_entropy(category_docs, documents);
  d["H_given_w"] = conditional_entropy(cells);
  d["IG"] = information_gain(cells);
  d["RIG"] = relative_information_gain(cells);
  return d;
}

struct Analysis {
  FrequencyMatrix fm;
  RigMatrix rig;
};

Analysis analyse(const std::vector<py::dict>& records, std::size_t threshold) {
  const auto corpus = corpus_from(records);
  auto fm = build_frequency_matrix(corpus, build_dictionary(corpus, threshold));
  auto rig = build_rig_matrix(fm);
  return {std::move(fm), std::move(rig)};
}

std::vector<std::pair<std::string, double>> as_pairs(const RankedList& list, std::size_t n) {
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < std::min(n, list.size()); ++i) {
    out.emplace_back(list.items[i].stem, list.items[i].score);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Word-category relative information gain";

  // Translators run most recent first, so the base class goes first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  m.def("tokenize", &tokenize, py::arg("text"));
  m.def("stem", [](const std::string& token) { return stem(token); }, py::arg("token"));
  m.def("cell", &cell_values, py::arg("w"), py::arg("word_docs"), py::arg("category_docs"),
        py::arg("documents"),
        "H, H(c|w), IG and RIG of one word-category cell from document counts.");

  py::class_<Analysis>(m, "Analysis")
      .def_property_readonly("stems", [](const Analysis& a) { return a.rig.stems(); })
      .def_property_readonly("categories", [](const Analysis& a) { return a.rig.category_names(); })
      .def_property_readonly("documents", [](const Analysis& a) { return a.fm.documents(); })
      .def("count", [](const Analysis& a, std::size_t j, std::size_t k) { return a.fm.count(j, k); })
      .def("rig", [](const Analysis& a, std::size_t j, std::size_t k) { return a.rig.at(j, k); })
      .def_property_readonly("sums", [](const Analysis& a) { return a.rig.sums(); })
      .def_property_readonly("maxima", [](const Analysis& a) { return a.rig.maxima(); })
      .def(
          "rank",
          [](const Analysis& a, const std::string& criterion, std::size_t n) {
            const auto c = Criterion::parse(criterion);
            return as_pairs(c.kind == Criterion::Kind::kFreqInCategory ? rank(a.fm, c)
                                                                       : rank(a.rig, c),
                            n);
          },
          py::arg("criterion") = "sum", py::arg("n") = static_cast<std::size_t>(-1))
      .def("thesaurus",
           [](const Analysis& a, std::size_t size) {
             return as_pairs(extract_thesaurus(a.rig, size).list, size);
           });

  m.def("analyse", &analyse, py::arg("records"), py::arg("threshold") = 10,
        "Dictionary, frequency and RIG matrices of [{id, text, categories}] records.");

  m.def(
      "run_pipeline",
      [](const std::filesystem::path& config_path, const std::filesystem::path& out) {
        auto config = load_config(config_path);
        if (!out.empty()) config.out = out;
        std::ostringstream log;
        PipelineResult result;
        {
          py::gil_scoped_release release;
          result = run_pipeline(config, PipelineTargets::all(), log);
        }
        std::vector<std::string> artifacts;
        for (const auto& p : result.artifacts) artifacts.push_back(p.generic_string());
        py::dict d;
        d["artifacts"] = artifacts;
        d["reused"] = result.reused_stages;
        d["warnings"] = result.warnings;
        d["log"] = log.str();
        return d;
      },
      py::arg("config"), py::arg("out") = std::filesystem::path());
}
