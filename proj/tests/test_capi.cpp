#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "fraisse/fraisse.h"

#include <fstream>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(FRAISSE_TEST_DATA) + "/" + name);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Takes ownership of a library string.
json take(char* s) {
  REQUIRE(s != nullptr);
  json j = json::parse(s);
  fr_string_free(s);
  return j;
}

std::string take_text(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  fr_string_free(s);
  return out;
}

fr_diversity* load_diversity(const std::string& name) {
  fr_diversity* d = nullptr;
  REQUIRE(fr_diversity_parse(slurp(name).c_str(), name.c_str(), &d) == FR_OK);
  return d;
}

fr_process* load_process(const std::string& name) {
  fr_process* p = nullptr;
  REQUIRE(fr_process_parse(slurp(name).c_str(), name.c_str(), &p) == FR_OK);
  return p;
}

const char* kTwoPoint = R"({"points": ["x", "y"], "delta": [{"set": ["x", "y"], "value": "1"}]})";

}  // namespace

TEST_CASE("version and error state") {
  CHECK(std::string(fr_version()).size() > 0);
  fr_diversity* d = nullptr;
  CHECK(fr_diversity_parse("{", "broken", &d) == FR_INVALID_INPUT);
  CHECK(d == nullptr);
  CHECK(std::string(fr_last_error()).find("broken") != std::string::npos);
  REQUIRE(fr_diversity_parse(kTwoPoint, nullptr, &d) == FR_OK);
  CHECK(std::string(fr_last_error()).empty());
  fr_diversity_free(d);
  fr_diversity_free(nullptr);
  fr_string_free(nullptr);
}

TEST_CASE("kind detection") {
  const std::pair<const char*, fr_kind> cases[] = {{"div_z1.json", FR_KIND_DIVERSITY},
                                                   {"proc_w.json", FR_KIND_PROCESS},
                                                   {"metric_k23.json", FR_KIND_METRIC}};
  for (const auto& [file, kind] : cases) {
    fr_kind k = FR_KIND_UNKNOWN;
    CHECK(fr_detect_kind(slurp(file).c_str(), file, &k) == FR_OK);
    CHECK(k == kind);
  }
  fr_kind k = FR_KIND_DIVERSITY;
  CHECK(fr_detect_kind(R"({"cuts": []})", nullptr, &k) == FR_OK);
  CHECK(k == FR_KIND_CUTS);
  CHECK(fr_detect_kind(R"({"other": 1})", nullptr, &k) == FR_OK);
  CHECK(k == FR_KIND_UNKNOWN);
}

TEST_CASE("parse errors carry positions") {
  fr_diversity* d = nullptr;
  CHECK(fr_diversity_parse(slurp("malformed.json").c_str(), "malformed.json", &d) == FR_INVALID_INPUT);
  const std::string msg = fr_last_error();
  CHECK(msg.find("malformed.json: line") == 0);
  CHECK(msg.find("column") != std::string::npos);
}

TEST_CASE("bad inputs map to status codes") {
  fr_diversity* d = nullptr;
  CHECK(fr_diversity_parse(R"({"points": ["x", "y"], "delta": [{"set": ["x", "y"], "value": 1.5}]})", nullptr, &d) ==
        FR_INVALID_INPUT);
  CHECK(fr_diversity_parse(R"({"points": ["x", "y"], "delta": [{"set": ["x", "q"], "value": "1"}]})", nullptr, &d) ==
        FR_INVALID_INPUT);
  CHECK(std::string(fr_last_error()).find("q") != std::string::npos);
  CHECK(fr_diversity_parse(slurp("triangle_violation.json").c_str(), nullptr, &d) == FR_PRECONDITION);
  CHECK(d == nullptr);
  CHECK(fr_diversity_parse(nullptr, nullptr, &d) == FR_INVALID_INPUT);
  std::string big = R"({"points": [)";
  for (int i = 0; i < 17; ++i) big += (i ? ",\"p" : "\"p") + std::to_string(i) + "\"";
  big += R"(], "delta": []})";
  CHECK(fr_diversity_parse(big.c_str(), nullptr, &d) == FR_SIZE_LIMIT);
}

TEST_CASE("fr_check reports witnesses") {
  char* report = nullptr;
  CHECK(fr_check(slurp("triangle_violation.json").c_str(), nullptr, &report) == FR_VIOLATION);
  const json r = take(report);
  CHECK(r["valid"] == false);
  CHECK(r["witness"]["kind"] == "triangle");
  CHECK(r["witness"]["A"] == json::array({"x"}));
  CHECK(r["witness"]["b"] == "y");
  CHECK(r["witness"]["C"] == json::array({"z"}));
  CHECK(r["witness"]["lhs"] == "3");
  CHECK(r["witness"]["rhs"] == "2");
  CHECK(fr_check(slurp("proc_z.json").c_str(), nullptr, &report) == FR_OK);
  CHECK(take(report)["valid"] == true);
}

TEST_CASE("diversity round trip and amalgam") {
  fr_diversity* d1 = load_diversity("div_z1.json");
  fr_diversity* d2 = load_diversity("div_z2.json");
  CHECK(fr_diversity_size(d1) == 3);
  char* s = nullptr;
  REQUIRE(fr_diversity_label(d1, 2, &s) == FR_OK);
  CHECK(take_text(s) == "z1");
  CHECK(fr_diversity_label(d1, 7, &s) == FR_INVALID_INPUT);

  REQUIRE(fr_diversity_to_json(d1, &s) == FR_OK);
  const std::string text = take_text(s);
  fr_diversity* again = nullptr;
  REQUIRE(fr_diversity_parse(text.c_str(), nullptr, &again) == FR_OK);
  REQUIRE(fr_diversity_to_json(again, &s) == FR_OK);
  CHECK(take_text(s) == text);
  fr_diversity_free(again);

  fr_diversity* am = nullptr;
  REQUIRE(fr_diversity_amalgamate(d1, d2, &am) == FR_OK);
  REQUIRE(fr_diversity_size(am) == 4);
  const std::pair<std::uint32_t, const char*> want[] = {{0b1100, "1"}, {0b1101, "2"}, {0b1110, "2"}, {0b1111, "3"}};
  for (const auto& [mask, value] : want) {
    REQUIRE(fr_diversity_value(am, mask, &s) == FR_OK);
    CHECK(take_text(s) == value);
  }
  CHECK(fr_diversity_value(am, 1u << 6, &s) == FR_INVALID_INPUT);
  fr_diversity_free(am);

  CHECK(fr_diversity_amalgamate(d1, d1, &am) == FR_INVALID_INPUT);

  const size_t idx[] = {0, 1, 2};
  REQUIRE(fr_diversity_tuples(d1, idx, d2, idx, 3, &s) == FR_OK);
  const json t = take(s);
  CHECK(t["d_inf"] == "1");
  CHECK(t["lower"] == "1/3");
  CHECK(t["upper"] == "1");
  const size_t bad[] = {0, 1, 9};
  CHECK(fr_diversity_tuples(d1, bad, d2, idx, 3, &s) == FR_INVALID_INPUT);

  fr_metric* m = nullptr;
  REQUIRE(fr_diversity_induced_metric(d1, &m) == FR_OK);
  REQUIRE(fr_metric_to_json(m, &s) == FR_OK);
  CHECK(take(s)["d"][0][2] == "1");
  fr_metric_free(m);
  fr_diversity_free(d1);
  fr_diversity_free(d2);
}

TEST_CASE("join and quotient") {
  fr_diversity *p = nullptr, *q = nullptr, *j = nullptr, *r = nullptr;
  REQUIRE(fr_diversity_parse(R"({"points": ["p"], "delta": []})", nullptr, &p) == FR_OK);
  REQUIRE(fr_diversity_parse(R"({"points": ["q"], "delta": []})", nullptr, &q) == FR_OK);
  REQUIRE(fr_diversity_join(p, q, &j) == FR_OK);
  char* s = nullptr;
  REQUIRE(fr_diversity_to_json(j, &s) == FR_OK);
  CHECK(take(s)["semi"] == true);
  REQUIRE(fr_diversity_quotient(j, &r) == FR_OK);
  CHECK(fr_diversity_size(r) == 1);
  CHECK(fr_diversity_join(p, p, &j) == FR_INVALID_INPUT);
  for (auto* d : {p, q, j, r}) fr_diversity_free(d);
}

TEST_CASE("cut decomposition") {
  fr_diversity* d = load_diversity("not_l1.json");
  fr_cuts* w = nullptr;
  char* report = nullptr;
  CHECK(fr_diversity_decompose(d, 0, &w, &report) == FR_VIOLATION);
  CHECK(w == nullptr);
  const json r = take(report);
  CHECK(r["witness"]["reconstructed"] == "3");
  CHECK(r["witness"]["actual"] == "2");
  fr_diversity_free(d);

  const char* cuts = R"({"points": ["1", "2", "3"], "anchor": "1",
    "cuts": [{"side": ["2"], "weight": "2"}, {"side": ["3"], "weight": "1"}]})";
  REQUIRE(fr_cuts_parse(cuts, nullptr, &w) == FR_OK);
  fr_diversity* cd = nullptr;
  REQUIRE(fr_cuts_diversity(w, &cd) == FR_OK);
  char* s = nullptr;
  REQUIRE(fr_diversity_value(cd, 0b110, &s) == FR_OK);
  CHECK(take_text(s) == "3");
  fr_cuts* back = nullptr;
  REQUIRE(fr_diversity_decompose(cd, 0, &back, &report) == FR_OK);
  if (report) fr_string_free(report);
  char *a = nullptr, *b = nullptr;
  REQUIRE(fr_cuts_to_json(w, &a) == FR_OK);
  REQUIRE(fr_cuts_to_json(back, &b) == FR_OK);
  CHECK(take(a) == take(b));
  fr_cuts_free(w);
  fr_cuts_free(back);
  fr_diversity_free(cd);

  CHECK(fr_cuts_parse(R"({"points": ["1", "2"], "anchor": "1", "cuts": [{"side": ["2"], "weight": "-1"}]})", nullptr,
                      &w) == FR_INVALID_INPUT);
}

TEST_CASE("processes") {
  fr_process* w = load_process("proc_w.json");
  fr_process* z = load_process("proc_z.json");
  char* s = nullptr;
  REQUIRE(fr_process_amalgamate(w, z, &s) == FR_OK);
  const json am = take(s);
  CHECK(am["distance"] == "1");
  CHECK(am["weighted_tv"] == "1");
  CHECK(am["half_l1"] == "1");
  CHECK(am["bound"] == "1");
  REQUIRE(fr_process_couple(w, z, &s) == FR_OK);
  const json c = take(s);
  CHECK(c["mismatch"] == c["total_variation"]);
  CHECK(c["mismatch"] == "1");
  const size_t idx[] = {0, 1};
  REQUIRE(fr_process_tuples(w, idx, z, idx, 2, &s) == FR_OK);
  const json t = take(s);
  CHECK(t["d_inf"] == "1/2");
  CHECK(t["lower"] == "1/4");
  fr_metric* m = nullptr;
  REQUIRE(fr_process_induced_metric(z, &m) == FR_OK);
  REQUIRE(fr_metric_to_json(m, &s) == FR_OK);
  CHECK(take(s)["d"][0][1] == "1");
  fr_metric_free(m);

  REQUIRE(fr_process_to_json(w, &s) == FR_OK);
  const std::string text = take_text(s);
  CHECK(json::parse(text)["semi"] == true);
  fr_process* again = nullptr;
  REQUIRE(fr_process_parse(text.c_str(), nullptr, &again) == FR_OK);
  REQUIRE(fr_process_to_json(again, &s) == FR_OK);
  CHECK(take_text(s) == text);
  fr_process_free(again);
  fr_process_free(w);
  fr_process_free(z);

  fr_process* bad = nullptr;
  CHECK(fr_process_parse(R"({"index": ["a"], "states": ["0", "1"], "pmf": [{"outcome": ["0"], "prob": "1/2"}]})",
                         nullptr, &bad) == FR_PRECONDITION);
}

TEST_CASE("metrics and the counterexample") {
  fr_metric* m = nullptr;
  REQUIRE(fr_metric_parse(slurp("metric_k23.json").c_str(), nullptr, &m) == FR_OK);
  fr_cuts* w = nullptr;
  CHECK(fr_metric_is_l1(m, &w) == FR_VIOLATION);
  CHECK(w == nullptr);
  char* s = nullptr;
  CHECK(fr_metric_pentagonal(m, &s) == FR_VIOLATION);
  CHECK(take(s)["witness"]["value"] == "2");
  fr_metric_free(m);

  REQUIRE(fr_metric_parse(R"({"points": ["a", "b", "c"], "d": [["0", "1", "2"], ["1", "0", "1"], ["2", "1", "0"]]})",
                          nullptr, &m) == FR_OK);
  REQUIRE(fr_metric_is_l1(m, &w) == FR_OK);
  REQUIRE(w != nullptr);
  fr_cuts_free(w);
  fr_metric_free(m);

  REQUIRE(fr_k23_report(&s) == FR_OK);
  const json r = take(s);
  CHECK(r["certified"] == true);
  CHECK(r["left_l1"] == true);
  CHECK(r["right_l1"] == true);
  CHECK(r["k23_pentagonal"] == "2");
}

TEST_CASE("chains and rich structures") {
  const json problem = json::parse(slurp("chain_diversity.json"));
  fr_diversity *ambient = nullptr, *patch = nullptr;
  REQUIRE(fr_diversity_parse(problem["ambient"].dump().c_str(), nullptr, &ambient) == FR_OK);
  REQUIRE(fr_diversity_parse(problem["patch"].dump().c_str(), nullptr, &patch) == FR_OK);
  const size_t base[] = {0, 1};
  char* s = nullptr;
  REQUIRE(fr_diversity_chain(ambient, base, 2, patch, FR_ORACLE_NOISE, 7, 6, &s) == FR_OK);
  const json run = take(s);
  CHECK(run["ok"] == true);
  CHECK(run["cauchy_ok"] == true);
  CHECK(run["steps"].size() == 6);
  for (const auto& st : run["steps"]) CHECK(st["oracle_d_inf"] == st["tolerance"]);
  REQUIRE(fr_diversity_chain(ambient, base, 2, patch, FR_ORACLE_EXACT, 0, 3, &s) == FR_OK);
  CHECK(take(s)["steps"][2]["d_inf"] == "0");
  const size_t wrong[] = {0, 5};
  CHECK(fr_diversity_chain(ambient, wrong, 2, patch, FR_ORACLE_EXACT, 0, 3, &s) == FR_INVALID_INPUT);

  const fr_diversity* catalog[] = {patch};
  REQUIRE(fr_diversity_build_rich(ambient, catalog, 1, 5, "0", 11, &s) == FR_OK);
  const json rich = take(s);
  for (const auto& e : rich["report"]) CHECK(e["satisfied"] == true);
  CHECK(fr_diversity_build_rich(ambient, catalog, 1, 5, "x", 11, &s) == FR_INVALID_INPUT);
  fr_diversity_free(ambient);
  fr_diversity_free(patch);
}
