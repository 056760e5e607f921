#include "fraisse/fraisse.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::ordered_json;

// Thrown for anything that should end the run with exit code 2.
struct Usage {
  std::string message;
};

struct Options {
  std::vector<std::string> files;
  std::string left, right;
  std::string anchor;
  std::string epsilon = "0";
  std::string oracle = "noise";
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::size_t steps = 10;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Usage{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Text {
  std::string source;
  std::string json;
};

Text input(const Options& o, std::size_t i) {
  if (i >= o.files.size()) throw Usage{"missing input file " + std::to_string(i + 1)};
  return {o.files[i], read_file(o.files[i])};
}

// Library status to process exit code; violations are reported by the caller.
int check(fr_status s) {
  if (s == FR_OK || s == FR_VIOLATION) return static_cast<int>(s);
  std::string what = fr_last_error();
  if (s == FR_INTERNAL) what = "internal error: " + what;
  throw Usage{what};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  fr_string_free(s);
  return out;
}

template <class T, void (*Free)(T*)>
struct Owned {
  T* p = nullptr;
  Owned() = default;
  Owned(const Owned&) = delete;
  Owned(Owned&& o) noexcept : p(o.p) { o.p = nullptr; }
  Owned& operator=(Owned&& o) noexcept {
    std::swap(p, o.p);
    return *this;
  }
  ~Owned() { Free(p); }
};
using Diversity = Owned<fr_diversity, fr_diversity_free>;
using Process = Owned<fr_process, fr_process_free>;
using Metric = Owned<fr_metric, fr_metric_free>;
using Cuts = Owned<fr_cuts, fr_cuts_free>;

fr_kind kind_of(const Text& t) {
  fr_kind k = FR_KIND_UNKNOWN;
  check(fr_detect_kind(t.json.c_str(), t.source.c_str(), &k));
  return k;
}

Diversity diversity(const Text& t) {
  Diversity d;
  check(fr_diversity_parse(t.json.c_str(), t.source.c_str(), &d.p));
  return d;
}

Process process(const Text& t) {
  Process p;
  check(fr_process_parse(t.json.c_str(), t.source.c_str(), &p.p));
  return p;
}

Metric metric(const Text& t) {
  Metric m;
  check(fr_metric_parse(t.json.c_str(), t.source.c_str(), &m.p));
  return m;
}

Json to_json(const fr_diversity* d) {
  char* s = nullptr;
  check(fr_diversity_to_json(d, &s));
  return Json::parse(take(s));
}

Json to_json(const fr_process* p) {
  char* s = nullptr;
  check(fr_process_to_json(p, &s));
  return Json::parse(take(s));
}

Json to_json(const fr_metric* m) {
  char* s = nullptr;
  check(fr_metric_to_json(m, &s));
  return Json::parse(take(s));
}

Json to_json(const fr_cuts* w) {
  char* s = nullptr;
  check(fr_cuts_to_json(w, &s));
  return Json::parse(take(s));
}

// Runs a report-producing call and hands back its exit code and report.
template <class F>
std::pair<int, Json> report(F&& f) {
  char* s = nullptr;
  const int code = check(f(&s));
  std::string text = take(s);
  return {code, text.empty() ? Json() : Json::parse(text)};
}

template <class Handle, fr_status (*Label)(const Handle*, size_t, char**), size_t (*Size)(const Handle*)>
std::vector<std::string> labels(const Handle* h) {
  std::vector<std::string> out;
  for (size_t i = 0; i < Size(h); ++i) {
    char* s = nullptr;
    check(Label(h, i, &s));
    out.push_back(take(s));
  }
  return out;
}

std::vector<std::string> split_labels(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

// --left/--right pick points by label; by default the whole structure in order.
std::vector<size_t> tuple(const std::string& spec, const std::vector<std::string>& names, const char* which) {
  std::vector<size_t> out;
  if (spec.empty()) {
    for (size_t i = 0; i < names.size(); ++i) out.push_back(i);
    return out;
  }
  for (const auto& l : split_labels(spec)) {
    size_t i = 0;
    while (i < names.size() && names[i] != l) ++i;
    if (i == names.size()) throw Usage{std::string(which) + " tuple: unknown label \"" + l + "\""};
    out.push_back(i);
  }
  return out;
}

size_t anchor_index(const std::string& anchor, const std::vector<std::string>& names) {
  if (anchor.empty()) return 0;
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == anchor) return i;
  throw Usage{"--anchor: unknown label \"" + anchor + "\""};
}

void require_seed(const Options& o, const char* cmd) {
  if (!o.seed_given) throw Usage{std::string(cmd) + " is randomized and needs an explicit --seed"};
}

Json member(const Json& doc, const char* key, const std::string& source) {
  if (!doc.is_object() || !doc.contains(key)) throw Usage{source + ": missing \"" + key + "\""};
  return doc.at(key);
}

Json parse_problem(const Text& t) {
  fr_kind ignored;
  check(fr_detect_kind(t.json.c_str(), t.source.c_str(), &ignored));  // reports syntax errors with line context
  return Json::parse(t.json);
}

std::vector<size_t> base_of(const Json& base, const std::vector<std::string>& names, const std::string& source) {
  if (!base.is_array()) throw Usage{source + ": \"base\" must be a list of labels"};
  std::vector<size_t> out;
  for (const auto& l : base) {
    if (!l.is_string()) throw Usage{source + ": \"base\" must be a list of labels"};
    size_t i = 0;
    while (i < names.size() && names[i] != l.get<std::string>()) ++i;
    if (i == names.size()) throw Usage{source + ": unknown base label \"" + l.get<std::string>() + "\""};
    out.push_back(i);
  }
  return out;
}

std::string scalar(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

bool flat(const Json& j) {
  if (!j.is_structured()) return true;
  if (!j.is_array()) return false;
  for (const auto& v : j)
    if (v.is_structured()) return false;
  return true;
}

std::string inline_text(const Json& j) {
  if (!j.is_array()) return scalar(j);
  std::string out = "{";
  for (std::size_t i = 0; i < j.size(); ++i) out += (i ? "," : "") + scalar(j[i]);
  return out + "}";
}

// Objects whose fields are all scalars or flat lists go on one line.
void render_text(const Json& j, const std::string& indent, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (flat(v)) {
        os << indent << k << ": " << inline_text(v) << "\n";
      } else {
        os << indent << k << ":\n";
        render_text(v, indent + "  ", os);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      bool compact = v.is_object();
      if (compact)
        for (const auto& [k, x] : v.items()) compact = compact && flat(x);
      if (!compact) {
        if (flat(v)) {
          os << indent << inline_text(v) << "\n";
        } else {
          os << indent << "-\n";
          render_text(v, indent + "  ", os);
        }
        continue;
      }
      os << indent;
      bool first = true;
      for (const auto& [k, x] : v.items()) {
        os << (first ? "" : "  ") << k << " " << inline_text(x);
        first = false;
      }
      os << "\n";
    }
  } else {
    os << indent << scalar(j) << "\n";
  }
}

void emit(const Options& o, const Json& j) {
  std::ostringstream ss;
  if (o.format == "text")
    render_text(j, "", ss);
  else
    ss << j.dump(2) << "\n";
  if (o.out.empty()) {
    std::cout << ss.str();
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Usage{"cannot write " + o.out};
  f << ss.str();
}

int run_validate(const Options& o) {
  Text t = input(o, 0);
  auto [code, r] = report([&](char** s) { return fr_check(t.json.c_str(), t.source.c_str(), s); });
  emit(o, r);
  return code;
}

int run_induced_metric(const Options& o) {
  Text t = input(o, 0);
  Metric m;
  switch (kind_of(t)) {
    case FR_KIND_DIVERSITY: check(fr_diversity_induced_metric(diversity(t).p, &m.p)); break;
    case FR_KIND_PROCESS: check(fr_process_induced_metric(process(t).p, &m.p)); break;
    case FR_KIND_METRIC: m = metric(t); break;
    default: throw Usage{t.source + ": expected a diversity or a process"};
  }
  emit(o, to_json(m.p));
  return 0;
}

int run_process_amalgamate(const Options& o) {
  Text a = input(o, 0), b = input(o, 1);
  Process p1 = process(a), p2 = process(b);
  auto [code, r] = report([&](char** s) { return fr_process_amalgamate(p1.p, p2.p, s); });
  emit(o, r);
  return code;
}

int run_amalgamate(const Options& o) {
  Text a = input(o, 0), b = input(o, 1);
  if (kind_of(a) == FR_KIND_PROCESS) return run_process_amalgamate(o);
  Diversity d1 = diversity(a), d2 = diversity(b), out;
  check(fr_diversity_amalgamate(d1.p, d2.p, &out.p));
  emit(o, to_json(out.p));
  return 0;
}

int run_join(const Options& o) {
  Text a = input(o, 0), b = input(o, 1);
  if (kind_of(a) == FR_KIND_PROCESS) {
    Process p1 = process(a), p2 = process(b), out;
    check(fr_process_join(p1.p, p2.p, &out.p));
    emit(o, to_json(out.p));
    return 0;
  }
  Diversity d1 = diversity(a), d2 = diversity(b), out;
  check(fr_diversity_join(d1.p, d2.p, &out.p));
  emit(o, to_json(out.p));
  return 0;
}

int run_quotient(const Options& o) {
  Diversity d = diversity(input(o, 0)), out;
  check(fr_diversity_quotient(d.p, &out.p));
  emit(o, to_json(out.p));
  return 0;
}

Json tuples(const Options& o) {
  Text a = input(o, 0), b = input(o, 1);
  if (kind_of(a) == FR_KIND_PROCESS) {
    Process p1 = process(a), p2 = process(b);
    auto ia = tuple(o.left, labels<fr_process, fr_process_label, fr_process_size>(p1.p), "left");
    auto ib = tuple(o.right, labels<fr_process, fr_process_label, fr_process_size>(p2.p), "right");
    if (ia.size() != ib.size()) throw Usage{"tuples have different lengths"};
    return report([&](char** s) { return fr_process_tuples(p1.p, ia.data(), p2.p, ib.data(), ia.size(), s); }).second;
  }
  Diversity d1 = diversity(a), d2 = diversity(b);
  auto ia = tuple(o.left, labels<fr_diversity, fr_diversity_label, fr_diversity_size>(d1.p), "left");
  auto ib = tuple(o.right, labels<fr_diversity, fr_diversity_label, fr_diversity_size>(d2.p), "right");
  if (ia.size() != ib.size()) throw Usage{"tuples have different lengths"};
  return report([&](char** s) { return fr_diversity_tuples(d1.p, ia.data(), d2.p, ib.data(), ia.size(), s); }).second;
}

int run_dinfty(const Options& o) {
  Json r = tuples(o);
  emit(o, {{"d_inf", r["d_inf"]}});
  return 0;
}

int run_dk_bounds(const Options& o) {
  Json r = tuples(o);
  Json out = {{"d_inf", r["d_inf"]}, {"lower", r["lower"]}, {"upper", r["upper"]}, {"joint", r["joint"]}};
  emit(o, out);
  return 0;
}

int run_couple(const Options& o) {
  Process p1 = process(input(o, 0)), p2 = process(input(o, 1));
  auto [code, r] = report([&](char** s) { return fr_process_couple(p1.p, p2.p, s); });
  emit(o, r);
  return code;
}

int run_decompose(const Options& o) {
  Diversity d = diversity(input(o, 0));
  const size_t anchor = anchor_index(o.anchor, labels<fr_diversity, fr_diversity_label, fr_diversity_size>(d.p));
  auto [code, r] = report([&](char** s) { return fr_diversity_decompose(d.p, anchor, nullptr, s); });
  emit(o, r);
  return code;
}

int run_l1_amalgamate(const Options& o) {
  Diversity d1 = diversity(input(o, 0)), d2 = diversity(input(o, 1));
  const size_t anchor = anchor_index(o.anchor, labels<fr_diversity, fr_diversity_label, fr_diversity_size>(d1.p));
  auto [code, r] = report([&](char** s) { return fr_diversity_l1_amalgamate(d1.p, d2.p, anchor, s); });
  emit(o, r);
  return code;
}

Metric metric_input(const Text& t) {
  if (kind_of(t) != FR_KIND_DIVERSITY) return metric(t);
  Metric m;
  check(fr_diversity_induced_metric(diversity(t).p, &m.p));
  return m;
}

int run_check_l1_metric(const Options& o) {
  Metric m = metric_input(input(o, 0));
  Cuts w;
  const int code = check(fr_metric_is_l1(m.p, &w.p));
  if (code == 0)
    emit(o, {{"l1", true}, {"weights", to_json(w.p)}});
  else
    emit(o, {{"l1", false}, {"witness", "the metric lies outside the cut cone (phase-1 simplex infeasible)"}});
  return code;
}

int run_pentagonal(const Options& o) {
  Metric m = metric_input(input(o, 0));
  auto [code, r] = report([&](char** s) { return fr_metric_pentagonal(m.p, s); });
  emit(o, r);
  return code;
}

int run_k23(const Options& o) {
  auto [code, r] = report([](char** s) { return fr_k23_report(s); });
  emit(o, r);
  return code;
}

int run_chain(const Options& o) {
  const fr_oracle oracle = o.oracle == "exact" ? FR_ORACLE_EXACT : FR_ORACLE_NOISE;
  if (oracle == FR_ORACLE_NOISE) require_seed(o, "chain");
  Text t = input(o, 0);
  const Json doc = parse_problem(t);
  const Text amb{t.source + ":ambient", member(doc, "ambient", t.source).dump()};
  const Text patch{t.source + ":patch", member(doc, "patch", t.source).dump()};
  const Json base = member(doc, "base", t.source);
  std::pair<int, Json> r;
  if (kind_of(amb) == FR_KIND_PROCESS) {
    Process a = process(amb), p = process(patch);
    auto b = base_of(base, labels<fr_process, fr_process_label, fr_process_size>(a.p), t.source);
    r = report([&](char** s) { return fr_process_chain(a.p, b.data(), b.size(), p.p, oracle, o.seed, o.steps, s); });
  } else {
    Diversity a = diversity(amb), p = diversity(patch);
    auto b = base_of(base, labels<fr_diversity, fr_diversity_label, fr_diversity_size>(a.p), t.source);
    r = report([&](char** s) { return fr_diversity_chain(a.p, b.data(), b.size(), p.p, oracle, o.seed, o.steps, s); });
  }
  emit(o, r.second["steps"]);
  if (r.first != 0) std::cerr << "chain failed: " << r.second["failure"].get<std::string>() << "\n";
  return r.first;
}

int run_build_rich(const Options& o) {
  require_seed(o, "build-rich");
  Text t = input(o, 0);
  const Json doc = parse_problem(t);
  const Text start{t.source + ":start", member(doc, "start", t.source).dump()};
  const Json catalog = member(doc, "catalog", t.source);
  if (!catalog.is_array()) throw Usage{t.source + ": \"catalog\" must be a list of structures"};
  std::vector<Text> items;
  for (std::size_t i = 0; i < catalog.size(); ++i)
    items.push_back({t.source + ":catalog[" + std::to_string(i) + "]", catalog[i].dump()});
  std::pair<int, Json> r;
  if (kind_of(start) == FR_KIND_PROCESS) {
    Process s = process(start);
    std::vector<Process> owned;
    std::vector<const fr_process*> ptrs;
    for (const auto& it : items) ptrs.push_back(owned.emplace_back(process(it)).p);
    r = report([&](char** out) {
      return fr_process_build_rich(s.p, ptrs.data(), ptrs.size(), o.steps, o.epsilon.c_str(), o.seed, out);
    });
  } else {
    Diversity s = diversity(start);
    std::vector<Diversity> owned;
    owned.reserve(items.size());
    std::vector<const fr_diversity*> ptrs;
    for (const auto& it : items) ptrs.push_back(owned.emplace_back(diversity(it)).p);
    r = report([&](char** out) {
      return fr_diversity_build_rich(s.p, ptrs.data(), ptrs.size(), o.steps, o.epsilon.c_str(), o.seed, out);
    });
  }
  emit(o, r.second);
  return r.first;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite diversities, stochastic processes and L1 structures with exact rational arithmetic"};
  app.require_subcommand(1);
  Options o;

  struct Command {
    const char* name;
    const char* help;
    std::size_t files;
    int (*run)(const Options&);
  };
  const std::vector<Command> commands = {
      {"validate", "check a structure file and report the first violated axiom", 1, run_validate},
      {"induced-metric", "pairwise metric of a diversity or process", 1, run_induced_metric},
      {"amalgamate", "minimal one-point amalgam of two diversities (or processes)", 2, run_amalgamate},
      {"join", "disjoint union (independent product for processes)", 2, run_join},
      {"quotient", "merge points of a semidiversity at distance 0", 1, run_quotient},
      {"dinfty", "largest predicate difference between two tuples", 2, run_dinfty},
      {"dk-bounds", "certified lower and upper bounds on the embedding distance", 2, run_dk_bounds},
      {"couple", "optimal coupling of two joint laws", 2, run_couple},
      {"process-amalgamate", "one-point amalgam of two processes with its bounds", 2, run_process_amalgamate},
      {"decompose", "cut weights of an L1 diversity, or a witness that there are none", 1, run_decompose},
      {"l1-amalgamate", "one-point amalgam of two L1 diversities", 2, run_l1_amalgamate},
      {"check-l1-metric", "cut-cone membership of a metric on at most 6 points", 1, run_check_l1_metric},
      {"pentagonal", "search for a pentagonal inequality violation", 1, run_pentagonal},
      {"counterexample-k23", "the five-point pair with no L1 amalgam", 0, run_k23},
      {"chain", "exact-extension chain from a problem file {ambient, base, patch}", 1, run_chain},
      {"build-rich", "grow a structure against a catalog from {start, catalog}", 1, run_build_rich},
  };

  const Command* chosen = nullptr;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    if (c.files == 1) sub->add_option("file", o.files, "input JSON")->required()->expected(1);
    if (c.files == 2) sub->add_option("files", o.files, "two input JSON files")->required()->expected(2);
    sub->add_option("--out", o.out, "write the report here instead of stdout");
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    if (std::string(c.name) == "dinfty" || std::string(c.name) == "dk-bounds") {
      sub->add_option("--left", o.left, "comma-separated labels of the first tuple");
      sub->add_option("--right", o.right, "comma-separated labels of the second tuple");
    }
    if (std::string(c.name) == "decompose" || std::string(c.name) == "l1-amalgamate")
      sub->add_option("--anchor", o.anchor, "label of the anchor point (default: the first point)");
    if (std::string(c.name) == "chain" || std::string(c.name) == "build-rich") {
      sub->add_option("--seed", o.seed, "random seed")->each([&](const std::string&) { o.seed_given = true; });
      sub->add_option("--steps", o.steps, "chain steps, or builder rounds");
    }
    if (std::string(c.name) == "chain")
      sub->add_option("--oracle", o.oracle, "exact or noise")->check(CLI::IsMember({"exact", "noise"}));
    if (std::string(c.name) == "build-rich") sub->add_option("--epsilon", o.epsilon, "tolerance p/q");
    sub->callback([&chosen, &c] { chosen = &c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return chosen->run(o);
  } catch (const Usage& u) {
    std::cerr << "error: " << u.message << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
