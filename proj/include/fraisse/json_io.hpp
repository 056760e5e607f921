#pragma once

#include "fraisse/diversity.hpp"
#include "fraisse/extension.hpp"
#include "fraisse/l1cut.hpp"
#include "fraisse/metric.hpp"
#include "fraisse/stochastic.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace fraisse::io {

using Json = nlohmann::ordered_json;

/// Parses JSON text. Syntax errors become Error(invalid_input) naming
/// `source`, the line and column, and quoting the offending line.
Json parse_document(std::string_view text, const std::string& source = "<input>");

/// Accepts "p/q", "p", decimal strings, and JSON integers. Floating-point
/// numbers are rejected.
Rational rational_from(const Json& j, const std::string& where);
Json rational_json(const Rational& r);

/// Which structure a document describes, from its keys.
enum class StructureKind { diversity, process, metric, cuts, unknown };
StructureKind detect_kind(const Json& j);

/// Raw tables are what the file says before the axioms are checked, so that
/// validation failures can be reported with their witness.
struct DiversityTable {
  std::vector<std::string> labels;
  std::vector<Rational> values;
  bool semi = false;
};
struct ProcessTable {
  std::vector<std::string> index, states;
  std::vector<Rational> pmf;
  bool semi = false;
};
struct MetricTable {
  std::vector<std::string> labels;
  std::vector<Rational> matrix;
  bool semi = false;
};

DiversityTable diversity_table(const Json& j);
ProcessTable process_table(const Json& j);
MetricTable metric_table(const Json& j);

FiniteDiversity diversity_from_json(const Json& j);
FiniteProcess process_from_json(const Json& j);
FiniteMetric metric_from_json(const Json& j);
CutWeights cuts_from_json(const Json& j);

/// Emitted structures carry "semi": true exactly when they are degenerate,
/// so they re-parse and re-validate.
Json to_json(const FiniteDiversity& d);
Json to_json(const FiniteProcess& p);
Json to_json(const FiniteMetric& m);
Json to_json(const CutWeights& w);

Json set_json(SubsetMask set, const std::vector<std::string>& labels);

/// Label list to point indices of a structure.
std::vector<std::size_t> indices_from_json(const Json& j, const std::vector<std::string>& labels,
                                           const std::string& where);

Json witness_json(const DiversityViolation& v, const std::vector<std::string>& labels);
Json witness_json(const ProcessViolation& v, const std::vector<std::string>& index,
                  const std::vector<std::string>& states);
Json witness_json(const MetricViolation& v, const std::vector<std::string>& labels);
Json witness_json(const NotL1Witness& w, const std::vector<std::string>& labels);
Json witness_json(const PentagonalWitness& w, const std::vector<std::string>& labels);

Json coupling_json(const Coupling& c, std::size_t states, std::size_t length, const std::vector<std::string>& names);
Json chain_json(const std::vector<ChainStep>& steps);
Json k23_json(const K23Report& r);

template <class S>
Json rich_json(const RichResult<S>& r) {
  Json report = Json::array();
  for (const auto& e : r.report) {
    Json base = Json::array();
    for (std::size_t b : e.base) base.push_back(r.structure.label(b));
    report.push_back({{"template", e.template_index},
                      {"base", base},
                      {"best_d_inf", rational_json(e.best_d_inf)},
                      {"best_point", e.best_point ? Json(r.structure.label(*e.best_point)) : Json()},
                      {"satisfied", e.satisfied}});
  }
  return {{"structure", to_json(r.structure)},
          {"added", r.added},
          {"size_capped", r.size_capped},
          {"report", report}};
}

}  // namespace fraisse::io
