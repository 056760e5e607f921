#include "fraisse/json_io.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fraisse::io {
namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(ErrorCode::invalid_input, where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing \"") + key + "\"");
  return *it;
}

std::vector<std::string> label_list(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of labels");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) bad(where + "[" + std::to_string(i) + "]", "labels must be strings");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

std::vector<std::string> point_labels(const Json& j, const char* key, const std::string& where) {
  auto labels = label_list(field(j, key, where), where + "." + key);
  if (labels.size() > kMaxPoints)
    fail(ErrorCode::size_limit, where + "." + key + ": " + std::to_string(labels.size()) + " points, at most " +
                                    std::to_string(kMaxPoints) + " are supported");
  try {
    check_labels(labels, kMaxPoints);
  } catch (const Error& e) {
    bad(where + "." + key, e.what());
  }
  return labels;
}

bool semi_flag(const Json& j) {
  auto it = j.find("semi");
  if (it == j.end()) return false;
  if (!it->is_boolean()) bad("semi", "expected true or false");
  return it->get<bool>();
}

SubsetMask mask_of(const Json& j, const std::vector<std::string>& labels, const std::string& where) {
  SubsetMask m = 0;
  for (std::size_t i : indices_from_json(j, labels, where)) {
    if (contains(m, i)) bad(where, "label \"" + labels[i] + "\" repeated");
    m |= bit(i);
  }
  return m;
}

std::string line_context(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1, start = 0;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i)
    if (text[i] == '\n') {
      ++line;
      start = i + 1;
    }
  std::size_t end = text.find('\n', start);
  if (end == std::string_view::npos) end = text.size();
  const std::size_t column = offset - start + (offset < text.size() ? 1 : 0);
  return "line " + std::to_string(line) + ", column " + std::to_string(column) + "\n  " +
         std::string(text.substr(start, end - start));
}

}  // namespace

Json parse_document(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::string msg = e.what();
    if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    const std::size_t at = e.byte == 0 ? 0 : e.byte - 1;
    fail(ErrorCode::invalid_input, source + ": " + line_context(text, at) + "\n" + msg);
  }
}

Rational rational_from(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      bad(where, e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_unsigned()) return Rational(j.get<unsigned long long>());
  if (j.is_number_float()) bad(where, "floating-point numbers are not accepted; write \"p/q\"");
  bad(where, "expected a rational string \"p/q\"");
}

Json rational_json(const Rational& r) { return to_string(r); }

StructureKind detect_kind(const Json& j) {
  if (!j.is_object()) return StructureKind::unknown;
  if (j.contains("delta")) return StructureKind::diversity;
  if (j.contains("pmf")) return StructureKind::process;
  if (j.contains("cuts")) return StructureKind::cuts;
  if (j.contains("d")) return StructureKind::metric;
  return StructureKind::unknown;
}

std::vector<std::size_t> indices_from_json(const Json& j, const std::vector<std::string>& labels,
                                           const std::string& where) {
  std::vector<std::size_t> out;
  for (const auto& name : label_list(j, where)) {
    auto it = std::find(labels.begin(), labels.end(), name);
    if (it == labels.end()) bad(where, "unknown label \"" + name + "\"");
    out.push_back(static_cast<std::size_t>(it - labels.begin()));
  }
  return out;
}

DiversityTable diversity_table(const Json& j) {
  DiversityTable t;
  t.labels = point_labels(j, "points", "diversity");
  t.semi = semi_flag(j);
  const Json& delta = field(j, "delta", "diversity");
  if (!delta.is_array()) bad("diversity.delta", "expected an array");
  const SubsetMask full = full_mask(t.labels.size());
  t.values.assign(std::size_t{full} + 1, Rational(0));
  std::vector<bool> seen(std::size_t{full} + 1, false);
  for (std::size_t i = 0; i < delta.size(); ++i) {
    const std::string where = "diversity.delta[" + std::to_string(i) + "]";
    const SubsetMask s = mask_of(field(delta[i], "set", where), t.labels, where + ".set");
    if (cardinality(s) < 2) bad(where, "sets of size 0 or 1 must not be listed");
    if (seen[s]) bad(where, "set listed twice");
    seen[s] = true;
    t.values[s] = rational_from(field(delta[i], "value", where), where + ".value");
  }
  for (SubsetMask s = 0; s <= full; ++s)
    if (cardinality(s) >= 2 && !seen[s]) {
      std::string names;
      for (std::size_t k : members(s)) names += (names.empty() ? "" : ",") + t.labels[k];
      bad("diversity.delta", "no value for set {" + names + "}");
    }
  return t;
}

ProcessTable process_table(const Json& j) {
  ProcessTable t;
  t.index = point_labels(j, "index", "process");
  t.states = label_list(field(j, "states", "process"), "process.states");
  if (t.states.empty()) bad("process.states", "at least one state is required");
  if (std::set<std::string>(t.states.begin(), t.states.end()).size() != t.states.size())
    bad("process.states", "duplicate state");
  t.semi = semi_flag(j);
  const std::size_t count = outcome_count(t.states.size(), t.index.size());
  t.pmf.assign(count, Rational(0));
  std::vector<bool> seen(count, false);
  const Json& pmf = field(j, "pmf", "process");
  if (!pmf.is_array()) bad("process.pmf", "expected an array");
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    const std::string where = "process.pmf[" + std::to_string(i) + "]";
    auto digits = indices_from_json(field(pmf[i], "outcome", where), t.states, where + ".outcome");
    if (digits.size() != t.index.size())
      bad(where + ".outcome", "expected " + std::to_string(t.index.size()) + " states");
    const std::size_t u = encode_outcome(digits, t.states.size());
    if (seen[u]) bad(where, "outcome listed twice");
    seen[u] = true;
    t.pmf[u] = rational_from(field(pmf[i], "prob", where), where + ".prob");
  }
  return t;
}

MetricTable metric_table(const Json& j) {
  MetricTable t;
  t.labels = point_labels(j, "points", "metric");
  t.semi = semi_flag(j);
  const Json& d = field(j, "d", "metric");
  const std::size_t n = t.labels.size();
  if (!d.is_array() || d.size() != n) bad("metric.d", "expected " + std::to_string(n) + " rows");
  for (std::size_t i = 0; i < n; ++i) {
    const std::string where = "metric.d[" + std::to_string(i) + "]";
    if (!d[i].is_array() || d[i].size() != n) bad(where, "expected " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k)
      t.matrix.push_back(rational_from(d[i][k], where + "[" + std::to_string(k) + "]"));
  }
  return t;
}

FiniteDiversity diversity_from_json(const Json& j) {
  auto t = diversity_table(j);
  return FiniteDiversity::validate(std::move(t.labels), std::move(t.values), t.semi);
}

FiniteProcess process_from_json(const Json& j) {
  auto t = process_table(j);
  return FiniteProcess::validate(std::move(t.index), std::move(t.states), std::move(t.pmf), t.semi);
}

FiniteMetric metric_from_json(const Json& j) {
  auto t = metric_table(j);
  return FiniteMetric::validate(std::move(t.labels), std::move(t.matrix), t.semi);
}

CutWeights cuts_from_json(const Json& j) {
  auto labels = point_labels(j, "points", "cuts");
  const Json& anchor = field(j, "anchor", "cuts");
  if (!anchor.is_string()) bad("cuts.anchor", "expected a label");
  auto it = std::find(labels.begin(), labels.end(), anchor.get<std::string>());
  if (it == labels.end()) bad("cuts.anchor", "unknown label \"" + anchor.get<std::string>() + "\"");
  const std::size_t a = static_cast<std::size_t>(it - labels.begin());
  CutWeights w(labels, a);
  const Json& cuts = field(j, "cuts", "cuts");
  if (!cuts.is_array()) bad("cuts.cuts", "expected an array");
  std::set<SubsetMask> seen;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const std::string where = "cuts.cuts[" + std::to_string(i) + "]";
    const SubsetMask side = mask_of(field(cuts[i], "side", where), labels, where + ".side");
    if (side == 0) bad(where + ".side", "empty side");
    if (contains(side, a)) bad(where + ".side", "sides are written without the anchor");
    if (!seen.insert(side).second) bad(where, "split listed twice");
    Rational weight = rational_from(field(cuts[i], "weight", where), where + ".weight");
    if (weight < 0) bad(where + ".weight", "weights must be nonnegative");
    w.set_weight(side, std::move(weight));
  }
  return w;
}

Json set_json(SubsetMask set, const std::vector<std::string>& labels) {
  Json out = Json::array();
  for (std::size_t i : members(set)) out.push_back(labels[i]);
  return out;
}

Json to_json(const FiniteDiversity& d) {
  Json delta = Json::array();
  const SubsetMask full = full_mask(d.size());
  for (std::size_t k = 2; k <= d.size(); ++k)
    for (SubsetMask s = 0; s <= full; ++s)
      if (cardinality(s) == k) delta.push_back({{"set", set_json(s, d.labels())}, {"value", rational_json(d.value(s))}});
  Json out = {{"points", d.labels()}, {"delta", delta}};
  if (d.is_semi()) out["semi"] = true;
  return out;
}

Json to_json(const FiniteProcess& p) {
  Json pmf = Json::array();
  for (std::size_t u = 0; u < p.pmf().size(); ++u) {
    if (p.prob(u) == 0) continue;
    Json outcome = Json::array();
    for (std::size_t s : decode_outcome(u, p.state_count(), p.size())) outcome.push_back(p.states()[s]);
    pmf.push_back({{"outcome", outcome}, {"prob", rational_json(p.prob(u))}});
  }
  Json out = {{"index", p.labels()}, {"states", p.states()}, {"pmf", pmf}};
  if (p.is_semi()) out["semi"] = true;
  return out;
}

Json to_json(const FiniteMetric& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.size(); ++k) row.push_back(rational_json(m.at(i, k)));
    rows.push_back(row);
  }
  Json out = {{"points", m.labels()}, {"d", rows}};
  if (m.is_semi()) out["semi"] = true;
  return out;
}

Json to_json(const CutWeights& w) {
  Json cuts = Json::array();
  for (SubsetMask u : w.splits())
    if (w.weight(u) != 0) cuts.push_back({{"side", set_json(u, w.labels())}, {"weight", rational_json(w.weight(u))}});
  return {{"points", w.labels()}, {"anchor", w.labels()[w.anchor()]}, {"cuts", cuts}};
}

Json witness_json(const DiversityViolation& v, const std::vector<std::string>& labels) {
  using K = DiversityViolation::Kind;
  Json out;
  switch (v.kind) {
    case K::negative:
      out = {{"kind", "negative"}, {"set", set_json(v.set, labels)}, {"value", rational_json(v.lhs)}};
      break;
    case K::zero_value:
      out = {{"kind", "zero_value"}, {"set", set_json(v.set, labels)}};
      break;
    case K::monotonicity:
      out = {{"kind", "monotonicity"}, {"A", set_json(v.set, labels)}, {"x", labels[v.point]}};
      break;
    case K::triangle:
      out = {{"kind", "triangle"},
             {"A", set_json(v.set, labels)},
             {"b", labels[v.point]},
             {"C", set_json(v.other, labels)}};
      break;
  }
  if (v.kind == K::monotonicity || v.kind == K::triangle) {
    out["lhs"] = rational_json(v.lhs);
    out["rhs"] = rational_json(v.rhs);
  }
  out["message"] = v.describe(labels);
  return out;
}

Json witness_json(const ProcessViolation& v, const std::vector<std::string>& index,
                  const std::vector<std::string>& states) {
  using K = ProcessViolation::Kind;
  Json out;
  switch (v.kind) {
    case K::negative: {
      Json outcome = Json::array();
      for (std::size_t s : decode_outcome(v.outcome, states.size(), index.size())) outcome.push_back(states[s]);
      out = {{"kind", "negative"}, {"outcome", outcome}};
      break;
    }
    case K::total_not_one: out = {{"kind", "total_not_one"}, {"total", rational_json(v.total)}}; break;
    case K::degenerate: out = {{"kind", "degenerate"}, {"pair", {index[v.i], index[v.j]}}}; break;
  }
  out["message"] = v.describe(index, states);
  return out;
}

Json witness_json(const MetricViolation& v, const std::vector<std::string>& labels) {
  static const std::map<MetricViolation::Kind, const char*> names = {
      {MetricViolation::Kind::asymmetric, "asymmetric"},
      {MetricViolation::Kind::nonzero_diagonal, "nonzero_diagonal"},
      {MetricViolation::Kind::negative, "negative"},
      {MetricViolation::Kind::zero_distance, "zero_distance"},
      {MetricViolation::Kind::triangle, "triangle"}};
  Json out = {{"kind", names.at(v.kind)}, {"i", labels[v.i]}, {"j", labels[v.j]}};
  if (v.kind == MetricViolation::Kind::triangle) out["k"] = labels[v.k];
  out["message"] = v.describe();
  return out;
}

Json witness_json(const NotL1Witness& w, const std::vector<std::string>& labels) {
  Json out;
  if (w.kind == NotL1Witness::Kind::mismatch)
    out = {{"kind", "mismatch"},
           {"set", set_json(w.set, labels)},
           {"reconstructed", rational_json(w.reconstructed)},
           {"actual", rational_json(w.actual)}};
  else
    out = {{"kind", "negative_weight"}, {"split", set_json(w.split, labels)}, {"weight", rational_json(w.weight)}};
  out["message"] = w.describe(labels);
  return out;
}

Json witness_json(const PentagonalWitness& w, const std::vector<std::string>& labels) {
  return {{"S3", {labels[w.s3[0]], labels[w.s3[1]], labels[w.s3[2]]}},
          {"T2", {labels[w.t2[0]], labels[w.t2[1]]}},
          {"value", rational_json(w.value)}};
}

Json coupling_json(const Coupling& c, std::size_t states, std::size_t length, const std::vector<std::string>& names) {
  auto outcome = [&](std::size_t u) {
    Json o = Json::array();
    for (std::size_t s : decode_outcome(u, states, length)) o.push_back(names[s]);
    return o;
  };
  Json entries = Json::array();
  for (const auto& e : c.entries)
    entries.push_back({{"left", outcome(e.left)}, {"right", outcome(e.right)}, {"prob", rational_json(e.prob)}});
  return {{"entries", entries}, {"mismatch", rational_json(c.mismatch())}};
}

Json chain_json(const std::vector<ChainStep>& steps) {
  Json out = Json::array();
  for (const auto& s : steps)
    out.push_back({{"p", s.p},
                   {"d_inf", rational_json(s.d_inf)},
                   {"d_succ", s.d_succ ? rational_json(*s.d_succ) : Json()},
                   {"ok", s.ok},
                   {"tolerance", rational_json(s.tolerance)},
                   {"oracle_d_inf", rational_json(s.oracle_d_inf)},
                   {"d_z", rational_json(s.d_z)}});
  return out;
}

Json k23_json(const K23Report& r) {
  return {{"certified", r.certified()},
          {"k23", to_json(r.k23)},
          {"k23_pentagonal", rational_json(r.k23_pentagonal)},
          {"k23_l1", r.k23_l1},
          {"left", to_json(r.left)},
          {"right", to_json(r.right)},
          {"left_l1", r.left_weights.has_value()},
          {"right_l1", r.right_weights.has_value()},
          {"left_weights", r.left_weights ? to_json(*r.left_weights) : Json()},
          {"right_weights", r.right_weights ? to_json(*r.right_weights) : Json()},
          {"gamma_range", {rational_json(r.gamma_lo), rational_json(r.gamma_hi)}},
          {"endpoints_valid", r.endpoints_valid},
          {"outside_invalid", r.outside_invalid},
          {"pentagonal", {{"constant", rational_json(r.constant)}, {"slope", rational_json(r.slope)}}},
          {"pentagonal_positive_on_range", r.violated_on_interval}};
}

}  // namespace fraisse::io
