#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "tacit/audit.hpp"
#include "tacit/lexicon.hpp"
#include "tacit/lint.hpp"
#include "tacit/ontology.hpp"
#include "tacit/parser.hpp"
#include "tacit/qgen.hpp"
#include "tacit/reach.hpp"
#include "tacit/report.hpp"
#include "tacit/validate.hpp"
#include "tacit/version.hpp"

namespace py = pybind11;
using namespace tacit;

namespace {

using ModelPtr = std::shared_ptr<Model>;

ModelPtr parseText(const std::string& text, const std::string& filename) {
  return std::make_shared<Model>(parse_model(text, filename));
}

ModelPtr parseFile(const std::string& path) {
  return std::make_shared<Model>(parse_model_file(path));
}

py::dict findingToDict(const Finding& f) {
  py::dict d;
  d["id"] = f.id;
  d["category"] = category_name(f.category);
  d["severity"] = severity_name(f.severity);
  d["subjects"] = f.subjects;
  d["question"] = f.question;
  d["evidence"] = f.evidence;
  d["file"] = f.location.file;
  d["line"] = f.location.line;
  return d;
}

Budget makeBudget(uint64_t budget, uint64_t seed) { return Budget{budget, seed}; }

std::string auditToString(const std::string& modelPath,
                          const std::optional<std::string>& dictionary,
                          const std::optional<std::string>& checklist,
                          uint64_t budget, uint64_t seed, uint64_t maxConfigs,
                          const std::optional<std::vector<std::string>>& checks,
                          const std::optional<std::string>& oracleUrl,
                          const std::string& format) {
  AuditOptions opts;
  opts.modelPath = modelPath;
  opts.dictionaryPath = dictionary;
  opts.checklistPath = checklist;
  opts.budget = budget;
  opts.seed = seed;
  opts.maxConfigs = maxConfigs;
  opts.checks = checks;
  opts.oracleUrl = oracleUrl;
  AuditOutcome outcome = run_audit(opts);
  if (!outcome.validationErrors.empty()) {
    std::string what = "model failed validation:";
    for (const StructuralError& e : outcome.validationErrors)
      what += "\n  " + e.format(modelPath);
    throw std::invalid_argument(what);
  }
  return format == "text" ? render_text(outcome.report)
                          : render_json(outcome.report);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Static analyzer for statechart/rule models: surfaces candidate "
            "hidden assumptions as a deterministic, taxonomy-tagged report.";
  m.attr("__version__") = kToolVersion;

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<FormatError>(m, "FormatError");
  py::register_exception<ProductTooLarge>(m, "ProductTooLargeError");

  py::class_<Model, ModelPtr>(m, "Model")
      .def_readonly("name", &Model::name)
      .def_readonly("source_file", &Model::sourceFile)
      .def_property_readonly("events",
                             [](const Model& mm) {
                               std::vector<std::string> out;
                               for (const EventInfo& e : mm.events)
                                 out.push_back(e.name);
                               return out;
                             })
      .def("__repr__", [](const Model& mm) {
        return "<tacit Model '" + mm.name + "'>";
      });

  m.def("parse_model", &parseText, py::arg("text"),
        py::arg("filename") = "<string>",
        "Parse DSL source text into a Model (raises ParseError).");
  m.def("parse_model_file", &parseFile, py::arg("path"));

  py::class_<StructuralError>(m, "StructuralError")
      .def_readonly("message", &StructuralError::message)
      .def_readonly("line", &StructuralError::line)
      .def("__repr__", [](const StructuralError& e) {
        return "<StructuralError line " + std::to_string(e.line) + ": " +
               e.message + ">";
      });

  m.def(
      "validate_model", [](Model& mm) { return validate_model(mm); },
      py::arg("model"),
      "Validate and normalize a parsed model; returns all structural errors.");

  m.def("symbol_table", [](const Model& mm) {
    std::vector<std::tuple<std::string, std::string, int>> out;
    for (const SymbolEntry& e : symbol_table(mm).entries)
      out.emplace_back(e.name, symbol_kind_name(e.kind), e.line);
    return out;
  });

  py::class_<Finding>(m, "Finding")
      .def_readonly("id", &Finding::id)
      .def_property_readonly(
          "category", [](const Finding& f) { return category_name(f.category); })
      .def_property_readonly(
          "severity", [](const Finding& f) { return severity_name(f.severity); })
      .def_readonly("subjects", &Finding::subjects)
      .def_readonly("question", &Finding::question)
      .def_readonly("evidence", &Finding::evidence)
      .def_property_readonly(
          "file", [](const Finding& f) { return f.location.file; })
      .def_property_readonly(
          "line", [](const Finding& f) { return f.location.line; })
      .def("to_dict", &findingToDict)
      .def("__repr__", [](const Finding& f) {
        return std::string("<Finding ") + category_name(f.category) + " " +
               f.location.file + ":" + std::to_string(f.location.line) + ">";
      });

  py::class_<Configuration>(m, "Configuration")
      .def_readonly("controls", &Configuration::controls)
      .def_readonly("valuation", &Configuration::valuation)
      .def("__eq__", [](const Configuration& a,
                        const Configuration& b) { return a == b; })
      .def("__repr__", [](const Configuration& c) {
        std::string out = "<Configuration";
        for (const auto& [k, v] : c.controls) out += " " + k + "=" + v;
        return out + ">";
      });

  py::class_<ReachSet>(m, "ReachSet")
      .def_readonly("configurations", &ReachSet::configurations)
      .def_readonly("exhausted", &ReachSet::exhausted)
      .def_property_readonly("fired_transitions", [](const ReachSet& r) {
        return std::vector<int>(r.firedTransitions.begin(),
                                r.firedTransitions.end());
      });

  m.def(
      "explore",
      [](const Model& mm, uint64_t maxConfigurations, uint64_t maxSteps) {
        return explore(mm, ExploreLimits{maxConfigurations, maxSteps});
      },
      py::arg("model"), py::arg("max_configurations") = 1'000'000,
      py::arg("max_steps") = 10'000'000,
      py::call_guard<py::gil_scoped_release>(),
      "Breadth-first reachability under the synchronous macro-step semantics.");
  m.def("product_space_bound", &product_space_bound, py::arg("model"));
  m.def("unreachable_composites", &unreachable_composites, py::arg("model"),
        py::arg("reach"));
  m.def("completeness_anomalies", &completeness_anomalies, py::arg("model"),
        py::arg("reach"));

  m.def("sample_pairs", &sample_pairs, py::arg("n"), py::arg("k"),
        py::arg("seed"),
        "Deterministic xorshift64* pair sampling (partial Fisher-Yates).");

  m.def(
      "gen_encapsulation",
      [](const Model& mm, uint64_t budget, uint64_t seed) {
        return gen_encapsulation(mm, makeBudget(budget, seed));
      },
      py::arg("model"), py::arg("budget") = 100, py::arg("seed") = 0);
  m.def(
      "gen_disjointness",
      [](const Model& mm, uint64_t budget, uint64_t seed) {
        return gen_disjointness(mm, makeBudget(budget, seed));
      },
      py::arg("model"), py::arg("budget") = 100, py::arg("seed") = 0);
  m.def("gen_containment", &gen_containment, py::arg("model"));
  m.def("gen_atomicity", &gen_atomicity, py::arg("model"));
  m.def(
      "gen_entity_relations",
      [](const Model& mm, uint64_t budget, uint64_t seed) {
        return gen_entity_relations(mm, makeBudget(budget, seed));
      },
      py::arg("model"), py::arg("budget") = 100, py::arg("seed") = 0);

  py::class_<Dictionary>(m, "Dictionary")
      .def(py::init([](const std::vector<std::string>& entries) {
             return make_dictionary(entries);
           }),
           py::arg("entries") = std::vector<std::string>{})
      .def_readonly("words", &Dictionary::words)
      .def_readonly("phrases", &Dictionary::phrases);
  m.def("load_dictionary", &load_dictionary, py::arg("path"));

  py::class_<Expansion>(m, "Expansion")
      .def_readonly("identifier", &Expansion::identifier)
      .def_readonly("tokens", &Expansion::tokens)
      .def_readonly("phrase", &Expansion::phrase)
      .def_readonly("score", &Expansion::score)
      .def_readonly("alternatives", &Expansion::alternatives)
      .def("__repr__", [](const Expansion& e) {
        return "<Expansion '" + e.identifier + "' -> '" + e.phrase + "'>";
      });

  m.def("tokenize_identifier", &tokenize_identifier, py::arg("name"));
  m.def(
      "expand_token",
      [](const std::string& token, const Dictionary& d) {
        std::vector<std::pair<std::string, double>> out;
        for (const TokenCandidate& c : expand_token(token, d))
          out.emplace_back(c.text, c.score);
        return out;
      },
      py::arg("token"), py::arg("dictionary"));
  m.def("expand_identifier", &expand_identifier, py::arg("name"),
        py::arg("dictionary"));

  m.def("normalize_term", &normalize_term, py::arg("phrase"));

  py::class_<Checklist>(m, "Checklist")
      .def_property_readonly("terms",
                             [](const Checklist& c) {
                               std::vector<std::string> out;
                               for (const auto& t : c.terms)
                                 out.push_back(t.text);
                               return out;
                             })
      .def_readonly("source_file", &Checklist::sourceFile);
  m.def("load_checklist", &load_checklist, py::arg("path"));
  m.def(
      "make_checklist",
      [](const std::vector<std::string>& terms) {
        return make_checklist(terms);
      },
      py::arg("terms"));

  py::class_<GapReport>(m, "GapReport")
      .def_readonly("missing_in_model", &GapReport::missingInModel)
      .def_readonly("missing_in_checklist", &GapReport::missingInChecklist)
      .def_property_readonly("matched",
                             [](const GapReport& g) {
                               std::vector<std::tuple<std::string, std::string,
                                                      std::string>>
                                   out;
                               for (const GapMatch& gm : g.matched)
                                 out.emplace_back(gm.term, gm.identifier,
                                                  match_kind_name(gm.kind));
                               return out;
                             });
  m.def("diff_checklist", &diff_checklist, py::arg("checklist"),
        py::arg("model"), py::arg("dictionary") = Dictionary{});


  m.def("lint_self_falsifying", &lint_self_falsifying, py::arg("model"));
  m.def("lint_order_unspecified", &lint_order_unspecified, py::arg("model"));
  m.def("lint_fragmented", &lint_fragmented, py::arg("model"));
  m.def("lint_silent_conditions", &lint_silent_conditions, py::arg("model"));
  m.def(
      "lint_fixed_parameters",
      [](const Model& mm, uint64_t minConstantOccurrences) {
        LintConfig cfg;
        cfg.minConstantOccurrences = minConstantOccurrences;
        return lint_fixed_parameters(mm, cfg);
      },
      py::arg("model"), py::arg("min_constant_occurrences") = 2);
  m.def(
      "lint_similar_names",
      [](const Model& mm, const Dictionary& d, double maxDistance) {
        LintConfig cfg;
        cfg.similarNameMaxDistance = maxDistance;
        return lint_similar_names(symbol_table(mm), cfg, d, mm.sourceFile);
      },
      py::arg("model"), py::arg("dictionary") = Dictionary{},
      py::arg("max_distance") = 0.2);

  m.def("audit", &auditToString, py::arg("model_path"),
        py::arg("dictionary") = py::none(), py::arg("checklist") = py::none(),
        py::arg("budget") = 100, py::arg("seed") = 0,
        py::arg("max_configs") = 1'000'000, py::arg("checks") = py::none(),
        py::arg("oracle_url") = py::none(), py::arg("format") = "json",
        "Run the full audit pipeline and return the rendered report.");
}
