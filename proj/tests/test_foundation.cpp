#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace fraisse;
using support::iota;

namespace {

FiniteDiversity div3(const std::string& z, int xz, int yz, int xyz) {
  std::vector<Rational> v(8);
  v[0b011] = 2;
  v[0b101] = xz;
  v[0b110] = yz;
  v[0b111] = xyz;
  return FiniteDiversity::validate({"x", "y", z}, v);
}

FiniteProcess pair_law(const std::string& second, Rational p00, Rational p10, Rational p01, Rational p11) {
  return FiniteProcess::validate({"a", second}, {"0", "1"}, {p00, p10, p01, p11}, true);
}

}  // namespace

TEST_CASE("rational parsing is exact and canonical") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("  7 ") == Rational(7));
  CHECK(parse_rational("+.5") == Rational(1, 2));
  CHECK(to_string(parse_rational("10/5")) == "2");
  CHECK(parse_rational("010") == 10);
  CHECK(parse_rational("007/010") == Rational(7, 10));
  CHECK(parse_rational("0.08") == Rational(2, 25));
  CHECK(to_string(parse_rational("-3/9")) == "-1/3");
  CHECK(parse_rational("123456789012345678901234567890/3") ==
        Rational(Integer("41152263004115226300411522630")));
  for (const char* bad : {"", "1/0", "a", "1/2/3", "1.2.3", "--1", "1/-2", "0x10", "."}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), Error);
  }
}

TEST_CASE("powers of two") {
  CHECK(pow2(0) == 1);
  CHECK(pow2(5) == 32);
  CHECK(pow2(-3) == Rational(1, 8));
  CHECK(pow_int(Rational(2, 3), 3) == Rational(8, 27));
}

TEST_CASE("int64 scaling keeps values exact or declines") {
  std::vector<Rational> v{Rational(1, 2), Rational(-3, 4), Rational(5)};
  auto s = scale_to_int64(v, std::int64_t{1} << 60);
  REQUIRE(s);
  CHECK(s->denominator == 4);
  CHECK(s->values == std::vector<std::int64_t>{2, -3, 20});
  std::vector<Rational> huge{Rational(Integer(1) << 70)};
  CHECK_FALSE(scale_to_int64(huge, std::int64_t{1} << 60));
}

TEST_CASE("subset helpers") {
  CHECK(full_mask(0) == 0u);
  CHECK(full_mask(3) == 7u);
  CHECK(cardinality(0b1011) == 3);
  CHECK(members(0b1010) == std::vector<std::size_t>{1, 3});
  std::vector<SubsetMask> seen;
  for_each_subset(0b101, [&](SubsetMask s) { seen.push_back(s); });
  CHECK(seen == std::vector<SubsetMask>{0b000, 0b001, 0b100, 0b101});
  CHECK(image(0b101, {3, 0, 3}) == bit(3));
}

TEST_CASE("metric validation reports the failing triple") {
  CHECK_NOTHROW(FiniteMetric::validate({"a", "b"}, {0, 1, 1, 0}));
  auto v = FiniteMetric::find_violation(3, {0, 1, 5, 1, 0, 1, 5, 1, 0}, false);
  REQUIRE(v);
  CHECK(v->kind == MetricViolation::Kind::triangle);
  CHECK(FiniteMetric::find_violation(2, {0, 1, 2, 0}, false)->kind == MetricViolation::Kind::asymmetric);
  CHECK(FiniteMetric::find_violation(2, {0, 0, 0, 0}, false)->kind == MetricViolation::Kind::zero_distance);
  CHECK_FALSE(FiniteMetric::find_violation(2, {0, 0, 0, 0}, true));
  CHECK_THROWS_AS(FiniteMetric::validate({"a", "a"}, {0, 1, 1, 0}), Error);
}

TEST_CASE("diversity d_infty and its lower bound on the worked pair") {
  const auto d1 = div3("z1", 1, 1, 2), d2 = div3("z2", 2, 2, 3);
  DiversityTuple a(d1, {0, 1, 2}), b(d2, {0, 1, 2});
  CHECK(d_infty(a, b) == 1);
  CHECK(dk_lower_bound(a, b) == Rational(1, 3));
  CHECK(d_infty(a, a) == 0);
  CHECK(dk_lower_bound(a, a) == 0);
  CHECK(d_infty(b, a) == d_infty(a, b));
}

TEST_CASE("process d_infty and its lower bound on the worked pair") {
  const auto p = pair_law("w", Rational(1, 2), 0, 0, Rational(1, 2));
  const auto q = pair_law("z", 0, Rational(1, 2), Rational(1, 2), 0);
  ProcessTuple a(p, {0, 1}), b(q, {0, 1});
  CHECK(d_infty(a, b) == Rational(1, 2));
  CHECK(dk_lower_bound(a, b) == Rational(1, 4));
  CHECK(d_infty(a, a) == 0);
}

TEST_CASE("repeated tuple entries collapse to the underlying set") {
  const auto d = div3("z", 1, 1, 2);
  const auto e = div3("z", 1, 1, 2);
  // (x, y, x) against (x, y, y): position set {0,2} is {x} vs {x,y}.
  DiversityTuple a(d, {0, 1, 0}), b(e, {0, 1, 1});
  CHECK(d_infty(a, b) == 2);
  CHECK(d_infty(a, b) == support::brute_d_infty(d, {0, 1, 0}, e, {0, 1, 1}));
  CHECK(positional_structure(a, "t").distance(0, 2) == 0);
}

TEST_CASE("d_infty rejects mismatched tuples") {
  const auto d = div3("z", 1, 1, 2);
  CHECK_THROWS_AS(d_infty(DiversityTuple(d, {0, 1}), DiversityTuple(d, {0})), Error);
  CHECK_THROWS_AS(DiversityTuple(d, {0, 5}), Error);
  const auto p = pair_law("w", Rational(1, 2), 0, 0, Rational(1, 2));
  const auto q = FiniteProcess::validate({"a", "w"}, {"x", "y"}, {Rational(1, 2), 0, 0, Rational(1, 2)}, true);
  CHECK_THROWS_AS(d_infty(ProcessTuple(p, {0}), ProcessTuple(q, {0})), Error);
}

TEST_CASE("d_infty is a pseudometric on diversity tuples") {
  support::Rng g(101);
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<FiniteDiversity> ds;
    for (int i = 0; i < 3; ++i) ds.push_back(support::random_diversity(g, 2 + trial % 3));
    const std::size_t k = 1 + trial % 4;
    std::vector<DiversityTuple> ts;
    for (auto& d : ds) {
      std::vector<std::size_t> e;
      for (std::size_t i = 0; i < k; ++i) e.push_back(std::uniform_int_distribution<std::size_t>(0, d.size() - 1)(g));
      ts.emplace_back(d, e);
    }
    const Rational ab = d_infty(ts[0], ts[1]), bc = d_infty(ts[1], ts[2]), ac = d_infty(ts[0], ts[2]);
    CHECK(ab == d_infty(ts[1], ts[0]));
    CHECK(d_infty(ts[0], ts[0]) == 0);
    CHECK(ac <= ab + bc);
    CHECK(ab == support::brute_d_infty(ds[0], ts[0].entries(), ds[1], ts[1].entries()));
  }
}

TEST_CASE("d_infty is a pseudometric on process tuples") {
  support::Rng g(202);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t s = 2 + trial % 2;
    std::vector<FiniteProcess> ps;
    for (int i = 0; i < 3; ++i) ps.push_back(support::random_process(g, 2 + trial % 2, s));
    const std::size_t k = 1 + trial % 3;
    std::vector<ProcessTuple> ts;
    for (auto& p : ps) {
      std::vector<std::size_t> e;
      for (std::size_t i = 0; i < k; ++i) e.push_back(std::uniform_int_distribution<std::size_t>(0, p.size() - 1)(g));
      ts.emplace_back(p, e);
    }
    const Rational ab = d_infty(ts[0], ts[1]), bc = d_infty(ts[1], ts[2]), ac = d_infty(ts[0], ts[2]);
    CHECK(ab == d_infty(ts[1], ts[0]));
    CHECK(d_infty(ts[2], ts[2]) == 0);
    CHECK(ac <= ab + bc);
    CHECK(ab == support::brute_d_infty(ps[0], ts[0].entries(), ps[1], ts[1].entries()));
  }
}
