#include "fraisse/fraisse.h"

#include "fraisse/diversity.hpp"
#include "fraisse/extension.hpp"
#include "fraisse/json_io.hpp"
#include "fraisse/l1cut.hpp"
#include "fraisse/stochastic.hpp"

#include <cstring>
#include <new>
#include <string>

struct fr_diversity {
  fraisse::FiniteDiversity value;
};
struct fr_process {
  fraisse::FiniteProcess value;
};
struct fr_metric {
  fraisse::FiniteMetric value;
};
struct fr_cuts {
  fraisse::CutWeights value;
};

namespace {

using namespace fraisse;
using io::Json;

thread_local std::string last_error;

fr_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return FR_INVALID_INPUT;
    case ErrorCode::precondition: return FR_PRECONDITION;
    case ErrorCode::size_limit: return FR_SIZE_LIMIT;
    case ErrorCode::internal: return FR_INTERNAL;
  }
  return FR_INTERNAL;
}

template <class F>
fr_status guard(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const Json& j) {
  if (out) *out = dup(j.dump(2));
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::invalid_input, std::string(what) + " is null");
}

Json parse(const char* json, const char* source) {
  need(json, "json");
  return io::parse_document(json, source ? source : "<input>");
}

std::vector<std::size_t> index_list(const std::size_t* p, std::size_t n) {
  if (n > 0) need(p, "index array");
  return std::vector<std::size_t>(p, p + n);
}

template <class Handle, class T>
fr_status emit(Handle** out, T value) {
  need(out, "out");
  *out = new Handle{std::move(value)};
  return FR_OK;
}

Json invalid_report(const char* kind, Json witness) {
  return {{"kind", kind}, {"valid", false}, {"witness", std::move(witness)}};
}

template <class S>
Json chain_report(const ChainRun<S>& run) {
  return {{"ok", run.ok()},
          {"failure", run.failure},
          {"cauchy_ok", run.cauchy_ok},
          {"steps", io::chain_json(run.steps)},
          {"ambient", io::to_json(run.ambient)}};
}

template <class S>
std::vector<S> catalog_of(const std::vector<const S*>& items) {
  std::vector<S> out;
  for (const S* s : items) out.push_back(*s);
  return out;
}

}  // namespace

extern "C" {

const char* fr_version(void) { return "0.1.0"; }

const char* fr_last_error(void) { return last_error.c_str(); }

void fr_string_free(char* s) { std::free(s); }

fr_status fr_detect_kind(const char* json, const char* source, fr_kind* out) {
  return guard([&] {
    need(out, "out");
    switch (io::detect_kind(parse(json, source))) {
      case io::StructureKind::diversity: *out = FR_KIND_DIVERSITY; break;
      case io::StructureKind::process: *out = FR_KIND_PROCESS; break;
      case io::StructureKind::metric: *out = FR_KIND_METRIC; break;
      case io::StructureKind::cuts: *out = FR_KIND_CUTS; break;
      case io::StructureKind::unknown: *out = FR_KIND_UNKNOWN; break;
    }
    return FR_OK;
  });
}

fr_status fr_check(const char* json, const char* source, char** report) {
  return guard([&] {
    const Json doc = parse(json, source);
    switch (io::detect_kind(doc)) {
      case io::StructureKind::diversity: {
        auto t = io::diversity_table(doc);
        if (auto v = FiniteDiversity::find_violation(t.labels.size(), t.values, t.semi)) {
          put(report, invalid_report("diversity", io::witness_json(*v, t.labels)));
          return FR_VIOLATION;
        }
        auto d = FiniteDiversity::unchecked(t.labels, t.values);
        put(report, {{"kind", "diversity"}, {"valid", true}, {"points", d.size()}, {"semi", d.is_semi()}});
        return FR_OK;
      }
      case io::StructureKind::process: {
        auto t = io::process_table(doc);
        if (auto v = FiniteProcess::find_violation(t.index.size(), t.states.size(), t.pmf, t.semi)) {
          put(report, invalid_report("process", io::witness_json(*v, t.index, t.states)));
          return FR_VIOLATION;
        }
        auto p = FiniteProcess::unchecked(t.index, t.states, t.pmf);
        put(report, {{"kind", "process"}, {"valid", true}, {"points", p.size()}, {"semi", p.is_semi()}});
        return FR_OK;
      }
      case io::StructureKind::metric: {
        auto t = io::metric_table(doc);
        if (auto v = FiniteMetric::find_violation(t.labels.size(), t.matrix, t.semi)) {
          put(report, invalid_report("metric", io::witness_json(*v, t.labels)));
          return FR_VIOLATION;
        }
        auto m = FiniteMetric::validate(t.labels, t.matrix, t.semi);
        put(report, {{"kind", "metric"}, {"valid", true}, {"points", m.size()}, {"semi", m.is_semi()}});
        return FR_OK;
      }
      case io::StructureKind::cuts: {
        auto w = io::cuts_from_json(doc);
        put(report, {{"kind", "cuts"}, {"valid", true}, {"points", w.size()}});
        return FR_OK;
      }
      case io::StructureKind::unknown: break;
    }
    fail(ErrorCode::invalid_input, "cannot tell which structure the document describes");
  });
}

fr_status fr_diversity_parse(const char* json, const char* source, fr_diversity** out) {
  return guard([&] { return emit(out, io::diversity_from_json(parse(json, source))); });
}

void fr_diversity_free(fr_diversity* d) { delete d; }

fr_status fr_diversity_to_json(const fr_diversity* d, char** out) {
  return guard([&] {
    need(d, "diversity");
    put(out, io::to_json(d->value));
    return FR_OK;
  });
}

size_t fr_diversity_size(const fr_diversity* d) { return d ? d->value.size() : 0; }

fr_status fr_diversity_label(const fr_diversity* d, size_t i, char** out) {
  return guard([&] {
    need(d, "diversity");
    need(out, "out");
    if (i >= d->value.size()) fail(ErrorCode::invalid_input, "point index out of range");
    *out = dup(d->value.label(i));
    return FR_OK;
  });
}

fr_status fr_diversity_value(const fr_diversity* d, uint32_t set, char** out) {
  return guard([&] {
    need(d, "diversity");
    need(out, "out");
    if ((set & ~full_mask(d->value.size())) != 0) fail(ErrorCode::invalid_input, "set mentions points outside the structure");
    *out = dup(to_string(d->value.value(set)));
    return FR_OK;
  });
}

fr_status fr_diversity_induced_metric(const fr_diversity* d, fr_metric** out) {
  return guard([&] {
    need(d, "diversity");
    return emit(out, induced_metric(d->value));
  });
}

fr_status fr_diversity_amalgamate(const fr_diversity* d1, const fr_diversity* d2, fr_diversity** out) {
  return guard([&] {
    need(d1, "first diversity");
    need(d2, "second diversity");
    return emit(out, amalgamate_one_point(d1->value, d2->value));
  });
}

fr_status fr_diversity_join(const fr_diversity* d1, const fr_diversity* d2, fr_diversity** out) {
  return guard([&] {
    need(d1, "first diversity");
    need(d2, "second diversity");
    return emit(out, join(d1->value, d2->value));
  });
}

fr_status fr_diversity_quotient(const fr_diversity* d, fr_diversity** out) {
  return guard([&] {
    need(d, "diversity");
    return emit(out, quotient(d->value));
  });
}

fr_status fr_diversity_decompose(const fr_diversity* d, size_t anchor, fr_cuts** out, char** report) {
  return guard([&] {
    need(d, "diversity");
    Decomposition dec = decompose(d->value, anchor);
    if (!dec.is_l1()) {
      put(report, {{"l1", false}, {"witness", io::witness_json(*dec.witness, d->value.labels())}});
      return FR_VIOLATION;
    }
    put(report, {{"l1", true}, {"weights", io::to_json(*dec.weights)}});
    if (out) *out = new fr_cuts{*dec.weights};
    return FR_OK;
  });
}

fr_status fr_diversity_l1_amalgamate(const fr_diversity* d1, const fr_diversity* d2, size_t anchor, char** report) {
  return guard([&] {
    need(d1, "first diversity");
    need(d2, "second diversity");
    for (const fr_diversity* d : {d1, d2}) {
      Decomposition dec = decompose(d->value, anchor);
      if (!dec.is_l1()) {
        put(report, {{"l1", false},
                     {"input", d == d1 ? 1 : 2},
                     {"witness", io::witness_json(*dec.witness, d->value.labels())}});
        return FR_VIOLATION;
      }
    }
    L1Amalgam a = amalgamate_l1(d1->value, d2->value, anchor);
    put(report, {{"joint", io::to_json(a.joint)},
                 {"weights", io::to_json(a.weights)},
                 {"distance", io::rational_json(a.distance)},
                 {"split_sum", io::rational_json(a.split_sum)},
                 {"formula_sum", io::rational_json(a.formula_sum)},
                 {"bound", io::rational_json(a.bound)}});
    return FR_OK;
  });
}

fr_status fr_diversity_tuples(const fr_diversity* a, const size_t* ia, const fr_diversity* b, const size_t* ib,
                              size_t n, char** report) {
  return guard([&] {
    need(a, "first diversity");
    need(b, "second diversity");
    DiversityTuple ta(a->value, index_list(ia, n)), tb(b->value, index_list(ib, n));
    const Rational d = d_infty(ta, tb);
    DiversityJointEmbedding e = dk_upper_embedding(ta, tb);
    put(report, {{"d_inf", io::rational_json(d)},
                 {"lower", io::rational_json(dk_lower_bound(ta, tb))},
                 {"upper", io::rational_json(e.bound)},
                 {"joint", io::to_json(e.joint)}});
    return FR_OK;
  });
}

fr_status fr_diversity_chain(const fr_diversity* ambient, const size_t* base, size_t base_len,
                             const fr_diversity* patch, fr_oracle oracle, uint64_t seed, size_t steps,
                             char** report) {
  return guard([&] {
    need(ambient, "ambient");
    need(patch, "patch");
    auto o = oracle == FR_ORACLE_EXACT ? diversity_exact_oracle() : diversity_noise_oracle(seed);
    auto run = extension_chain(ambient->value, index_list(base, base_len), patch->value, o,
                               diversity_bap_constant(), steps);
    put(report, chain_report(run));
    return run.ok() ? FR_OK : FR_VIOLATION;
  });
}

fr_status fr_diversity_build_rich(const fr_diversity* start, const fr_diversity* const* catalog, size_t count,
                                  size_t rounds, const char* epsilon, uint64_t seed, char** report) {
  return guard([&] {
    need(start, "start");
    need(epsilon, "epsilon");
    std::vector<const FiniteDiversity*> items;
    for (size_t i = 0; i < count; ++i) {
      need(catalog[i], "catalog entry");
      items.push_back(&catalog[i]->value);
    }
    auto r = build_rich_structure(start->value, catalog_of(items), rounds, parse_rational(epsilon), seed);
    put(report, io::rich_json(r));
    return FR_OK;
  });
}

fr_status fr_process_parse(const char* json, const char* source, fr_process** out) {
  return guard([&] { return emit(out, io::process_from_json(parse(json, source))); });
}

void fr_process_free(fr_process* p) { delete p; }

fr_status fr_process_to_json(const fr_process* p, char** out) {
  return guard([&] {
    need(p, "process");
    put(out, io::to_json(p->value));
    return FR_OK;
  });
}

size_t fr_process_size(const fr_process* p) { return p ? p->value.size() : 0; }

fr_status fr_process_label(const fr_process* p, size_t i, char** out) {
  return guard([&] {
    need(p, "process");
    need(out, "out");
    if (i >= p->value.size()) fail(ErrorCode::invalid_input, "point index out of range");
    *out = dup(p->value.label(i));
    return FR_OK;
  });
}

fr_status fr_process_induced_metric(const fr_process* p, fr_metric** out) {
  return guard([&] {
    need(p, "process");
    return emit(out, induced_metric(p->value));
  });
}

fr_status fr_process_amalgamate(const fr_process* p1, const fr_process* p2, char** report) {
  return guard([&] {
    need(p1, "first process");
    need(p2, "second process");
    ProcessAmalgam a = amalgamate_one_point(p1->value, p2->value);
    put(report, {{"joint", io::to_json(a.joint)},
                 {"distance", io::rational_json(a.distance)},
                 {"weighted_tv", io::rational_json(a.weighted_tv)},
                 {"half_l1", io::rational_json(a.half_l1)},
                 {"bound", io::rational_json(a.bound)}});
    return FR_OK;
  });
}

fr_status fr_process_join(const fr_process* p1, const fr_process* p2, fr_process** out) {
  return guard([&] {
    need(p1, "first process");
    need(p2, "second process");
    return emit(out, join_independent(p1->value, p2->value));
  });
}

fr_status fr_process_couple(const fr_process* p1, const fr_process* p2, char** report) {
  return guard([&] {
    need(p1, "first process");
    need(p2, "second process");
    const auto& a = p1->value;
    const auto& b = p2->value;
    if (a.size() != b.size() || a.states() != b.states())
      fail(ErrorCode::invalid_input, "coupled laws need the same number of points and the same states");
    Coupling c = optimal_coupling(a.pmf(), b.pmf());
    Json out = io::coupling_json(c, a.state_count(), a.size(), a.states());
    out["total_variation"] = io::rational_json(total_variation(a.pmf(), b.pmf()));
    put(report, out);
    return FR_OK;
  });
}

fr_status fr_process_tuples(const fr_process* a, const size_t* ia, const fr_process* b, const size_t* ib, size_t n,
                            char** report) {
  return guard([&] {
    need(a, "first process");
    need(b, "second process");
    ProcessTuple ta(a->value, index_list(ia, n)), tb(b->value, index_list(ib, n));
    const Rational d = d_infty(ta, tb);
    ProcessJointEmbedding e = dk_upper_embedding(ta, tb);
    put(report, {{"d_inf", io::rational_json(d)},
                 {"lower", io::rational_json(dk_lower_bound(ta, tb))},
                 {"upper", io::rational_json(e.bound)},
                 {"total_variation", io::rational_json(e.total_variation)},
                 {"joint", io::to_json(e.joint)}});
    return FR_OK;
  });
}

fr_status fr_process_chain(const fr_process* ambient, const size_t* base, size_t base_len, const fr_process* patch,
                           fr_oracle oracle, uint64_t seed, size_t steps, char** report) {
  return guard([&] {
    need(ambient, "ambient");
    need(patch, "patch");
    auto o = oracle == FR_ORACLE_EXACT ? process_exact_oracle() : process_noise_oracle(seed);
    auto run = extension_chain(ambient->value, index_list(base, base_len), patch->value, o,
                               process_bap_constant(ambient->value.state_count()), steps);
    put(report, chain_report(run));
    return run.ok() ? FR_OK : FR_VIOLATION;
  });
}

fr_status fr_process_build_rich(const fr_process* start, const fr_process* const* catalog, size_t count,
                                size_t rounds, const char* epsilon, uint64_t seed, char** report) {
  return guard([&] {
    need(start, "start");
    need(epsilon, "epsilon");
    std::vector<const FiniteProcess*> items;
    for (size_t i = 0; i < count; ++i) {
      need(catalog[i], "catalog entry");
      items.push_back(&catalog[i]->value);
    }
    auto r = build_rich_structure(start->value, catalog_of(items), rounds, parse_rational(epsilon), seed);
    put(report, io::rich_json(r));
    return FR_OK;
  });
}

fr_status fr_metric_parse(const char* json, const char* source, fr_metric** out) {
  return guard([&] { return emit(out, io::metric_from_json(parse(json, source))); });
}

void fr_metric_free(fr_metric* m) { delete m; }

fr_status fr_metric_to_json(const fr_metric* m, char** out) {
  return guard([&] {
    need(m, "metric");
    put(out, io::to_json(m->value));
    return FR_OK;
  });
}

fr_status fr_metric_is_l1(const fr_metric* m, fr_cuts** out) {
  return guard([&] {
    need(m, "metric");
    auto w = is_l1_metric(m->value);
    if (!w) return FR_VIOLATION;
    if (out) *out = new fr_cuts{*w};
    return FR_OK;
  });
}

fr_status fr_metric_pentagonal(const fr_metric* m, char** report) {
  return guard([&] {
    need(m, "metric");
    auto w = find_pentagonal_violation(m->value);
    if (!w) {
      put(report, {{"violated", false}});
      return FR_OK;
    }
    put(report, {{"violated", true}, {"witness", io::witness_json(*w, m->value.labels())}});
    return FR_VIOLATION;
  });
}

fr_status fr_cuts_parse(const char* json, const char* source, fr_cuts** out) {
  return guard([&] { return emit(out, io::cuts_from_json(parse(json, source))); });
}

void fr_cuts_free(fr_cuts* w) { delete w; }

fr_status fr_cuts_to_json(const fr_cuts* w, char** out) {
  return guard([&] {
    need(w, "cuts");
    put(out, io::to_json(w->value));
    return FR_OK;
  });
}

fr_status fr_cuts_diversity(const fr_cuts* w, fr_diversity** out) {
  return guard([&] {
    need(w, "cuts");
    return emit(out, cut_diversity(w->value));
  });
}

fr_status fr_k23_report(char** report) {
  return guard([&] {
    K23Report r = nap_counterexample();
    put(report, io::k23_json(r));
    return r.certified() ? FR_OK : FR_VIOLATION;
  });
}

}  // extern "C"
