#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace fraisse;
using support::iota;

namespace {

// Values listed by mask for points in label order.
FiniteDiversity make(std::vector<std::string> labels, std::vector<int> values, bool semi = false) {
  std::vector<Rational> v(values.begin(), values.end());
  return FiniteDiversity::validate(std::move(labels), std::move(v), semi);
}

FiniteDiversity ext(const std::string& z, int xz, int yz, int xyz) {
  return make({"x", "y", z}, {0, 0, 0, 2, 0, xz, yz, xyz});
}

// Diameter diversity of the K(2,3) path metric on a,b,c | z1,z2.
FiniteDiversity k23_diameter() {
  const std::vector<std::string> l{"a", "b", "c", "z1", "z2"};
  auto side = [](std::size_t i) { return i < 3 ? 0 : 1; };
  std::vector<Rational> v(32);
  for (SubsetMask s = 1; s < 32; ++s) {
    Rational diam(0);
    for (std::size_t i : members(s))
      for (std::size_t j : members(s))
        if (i != j) diam = std::max(diam, Rational(side(i) == side(j) ? 2 : 1));
    v[s] = diam;
  }
  return FiniteDiversity::validate(l, v);
}

}  // namespace

TEST_CASE("validate accepts and rejects the small examples") {
  CHECK_NOTHROW(make({"x", "y"}, {0, 0, 0, 1}));
  try {
    make({"x", "y", "z"}, {0, 0, 0, 1, 0, 1, 1, 3});
    FAIL("expected a triangle violation");
  } catch (const DiversityError& e) {
    const auto& v = e.violation();
    CHECK(v.kind == DiversityViolation::Kind::triangle);
    CHECK(v.lhs == 3);
    CHECK(v.rhs == 2);
    CHECK(v.set == 0b001);
    CHECK(v.point == 1);
    CHECK(v.other == 0b100);
  }
  CHECK_NOTHROW(k23_diameter());
}

TEST_CASE("validate reports zero values, negatives and monotonicity") {
  auto zero = FiniteDiversity::find_violation(2, std::vector<Rational>{0, 0, 0, 0}, false);
  REQUIRE(zero);
  CHECK(zero->kind == DiversityViolation::Kind::zero_value);
  CHECK_FALSE(FiniteDiversity::find_violation(2, std::vector<Rational>{0, 0, 0, 0}, true));
  auto neg = FiniteDiversity::find_violation(2, std::vector<Rational>{0, 0, 0, -1}, true);
  REQUIRE(neg);
  CHECK(neg->kind == DiversityViolation::Kind::negative);
  auto mono = FiniteDiversity::find_violation(3, std::vector<Rational>{0, 0, 0, 2, 0, 2, 2, 1}, false);
  REQUIRE(mono);
  CHECK(mono->kind == DiversityViolation::Kind::monotonicity);
  CHECK_THROWS_AS(FiniteDiversity::validate({"x", "y"}, {0, 1, 0, 1}), Error);
}

TEST_CASE("validate agrees with the full triangle axiom") {
  // Full D2 over all A, C and nonempty B, checked on random tables that are
  // valid or nearly so.
  support::Rng g(7);
  int valid = 0, invalid = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + trial % 2;
    auto v = support::random_diversity(g, n).values();
    if (trial % 2 == 0) {
      const SubsetMask s = std::uniform_int_distribution<SubsetMask>(3, full_mask(n))(g);
      if (cardinality(s) >= 2) v[s] += support::rnd(g, -6, 6, 2);
    }
    bool full_ok = true;
    const SubsetMask full = full_mask(n);
    for (SubsetMask s = 0; s <= full; ++s) {
      if (cardinality(s) >= 2 && v[s] <= 0) full_ok = false;
    }
    for (SubsetMask a = 0; a <= full && full_ok; ++a)
      for (SubsetMask b = 1; b <= full && full_ok; ++b)
        for (SubsetMask c = 0; c <= full && full_ok; ++c)
          if (v[a | b] + v[b | c] < v[a | c]) full_ok = false;
    const bool fast_ok = !FiniteDiversity::find_violation(n, v, false);
    CHECK(fast_ok == full_ok);
    (full_ok ? valid : invalid)++;
  }
  CHECK(valid > 50);
  CHECK(invalid > 20);
}

TEST_CASE("induced metrics") {
  auto m = induced_metric(make({"x", "y"}, {0, 0, 0, 1}));
  CHECK(m.matrix() == std::vector<Rational>{0, 1, 1, 0});
  auto k = induced_metric(k23_diameter());
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      const int want = i == j ? 0 : ((i < 3) == (j < 3) ? 2 : 1);
      CHECK(k.at(i, j) == want);
    }
  support::Rng g(8);
  for (int trial = 0; trial < 100; ++trial) {
    auto d = support::random_diversity(g, 2 + trial % 5);
    CHECK_FALSE(FiniteMetric::find_violation(d.size(), induced_metric(d).matrix(), false));
  }
}

TEST_CASE("restrict and select") {
  const auto d = ext("z", 1, 1, 2);
  auto one = restrict(d, bit(1));
  CHECK(one.size() == 1);
  CHECK(one.label(0) == "y");
  CHECK(restrict(d, full_mask(3)) == d);
  CHECK_THROWS_AS(restrict(d, 0), Error);
  auto r = restrict(d, 0b101);
  CHECK(r.labels() == std::vector<std::string>{"x", "z"});
  CHECK(r.distance(0, 1) == 1);
  std::vector<std::size_t> order{2, 0};
  CHECK(select(d, order).value(0b11) == 1);
}

TEST_CASE("minimal amalgam of the worked pair") {
  const auto d1 = ext("z1", 1, 1, 2), d2 = ext("z2", 2, 2, 3);
  const auto a = amalgamate_one_point(d1, d2);
  REQUIRE(a.labels() == std::vector<std::string>{"x", "y", "z1", "z2"});
  CHECK(a.value(0b1100) == 1);
  CHECK(a.value(0b1101) == 2);
  CHECK(a.value(0b1110) == 2);
  CHECK(a.value(0b1111) == 3);
  CHECK(restrict(a, 0b0111) == d1);
  CHECK(restrict(a, 0b1011).values() == d2.values());
  CHECK_FALSE(FiniteDiversity::find_violation(4, a.values(), true));
  DiversityTuple t1(d1, iota(3)), t2(d2, iota(3));
  CHECK(a.distance(2, 3) <= d_infty(t1, t2));
  CHECK(d_infty(t1, t2) == 1);
}

TEST_CASE("identical extensions amalgamate to a semidiversity") {
  const auto d1 = ext("z1", 1, 1, 2);
  const auto d2 = make({"x", "y", "z2"}, {0, 0, 0, 2, 0, 1, 1, 2});
  const auto a = amalgamate_one_point(d1, d2);
  CHECK(a.distance(2, 3) == 0);
  CHECK(a.is_semi());
  auto q = quotient(a);
  CHECK(q.size() == 3);
  CHECK(q == d1);
  CHECK_FALSE(q.is_semi());
}

TEST_CASE("amalgamation rejects inputs that disagree on the base") {
  const auto d1 = ext("z1", 1, 1, 2);
  const auto d2 = make({"x", "y", "z2"}, {0, 0, 0, 3, 0, 2, 2, 3});
  CHECK_THROWS_AS(amalgamate_one_point(d1, d2), Error);
  CHECK_THROWS_AS(amalgamate_one_point(d1, d1), Error);
}

TEST_CASE("amalgam properties on random agreeing pairs") {
  support::Rng g(9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 3;
    auto [d1, d2] = support::random_agreeing_pair(g, n);
    const auto a = amalgamate_one_point(d1, d2);
    const SubsetMask base = full_mask(n), z1 = bit(n), z2 = bit(n + 1);
    CHECK_FALSE(FiniteDiversity::find_violation(n + 2, a.values(), true));
    CHECK(restrict(a, base | z1).values() == d1.values());
    CHECK(restrict(a, base | z2).values() == d2.values());
    bool minimal = true;
    Rational gap(0);
    for (SubsetMask s = 0; s <= base; ++s) {
      gap = std::max(gap, abs(d1.value(s | bit(n)) - d2.value(s | bit(n))));
      for (SubsetMask b = 0; b <= base; ++b) {
        if (a.value(s | z1 | z2) < d1.value(s | b | bit(n)) - d2.value(b | bit(n))) minimal = false;
        if (a.value(s | z1 | z2) < d2.value(s | b | bit(n)) - d1.value(b | bit(n))) minimal = false;
      }
    }
    CHECK(minimal);
    CHECK(a.distance(n, n + 1) == gap);
    CHECK(a.distance(n, n + 1) <= support::brute_d_infty(d1, iota(n + 1), d2, iota(n + 1)));
    CHECK(support::brute_lipschitz(a));
    CHECK_FALSE(find_lipschitz_violation(a));
  }
}

TEST_CASE("amalgam values are attained by some bridge") {
  // The minimal amalgam takes, on each set with both new points, the largest
  // of its lower bounds; check that some bound meets it with equality.
  support::Rng g(10);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 3;
    auto [d1, d2] = support::random_agreeing_pair(g, n);
    const auto a = amalgamate_one_point(d1, d2);
    const SubsetMask base = full_mask(n);
    for (SubsetMask s = 0; s <= base; ++s) {
      const Rational v = a.value(s | bit(n) | bit(n + 1));
      bool attained = v == d1.value(s | bit(n)) || v == d2.value(s | bit(n));
      for (SubsetMask b = 0; b <= base && !attained; ++b)
        attained = v == d1.value(s | b | bit(n)) - d2.value(b | bit(n)) ||
                   v == d2.value(s | b | bit(n)) - d1.value(b | bit(n));
      CHECK(attained);
    }
  }
}

TEST_CASE("extend_over_base") {
  support::Rng g(11);
  SUBCASE("nothing to absorb") {
    const auto d = ext("z", 1, 1, 2);
    const auto y = restrict(d, 0b011);
    CHECK(extend_over_base(y, d) == d);
  }
  SUBCASE("two patches in turn reproduce the amalgam") {
    const auto d1 = ext("z1", 1, 1, 2), d2 = ext("z2", 2, 2, 3);
    const auto y = restrict(d1, 0b011);
    const auto step1 = extend_over_base(y, d1);
    const auto step2 = extend_over_base(step1, d2);
    CHECK(step2 == amalgamate_one_point(d1, d2));
  }
  SUBCASE("random ambient, random patch") {
    for (int trial = 0; trial < 100; ++trial) {
      const auto y = support::random_diversity(g, 3 + trial % 2, "y");
      const std::vector<std::size_t> base{2, 0};
      const auto b = select(y, base);
      const auto v = support::shift_extension(b, b.diameter() + support::rnd(g, 0, 6, 2));
      const auto patch = FiniteDiversity::validate({"y2", "y0", "new"}, v);
      const auto out = extend_over_base(y, patch, base);
      CHECK_FALSE(FiniteDiversity::find_violation(out.size(), out.values(), true));
      CHECK(restrict(out, full_mask(y.size())) == y);
      std::vector<std::size_t> back{2, 0, y.size()};
      CHECK(select(out, back).values() == patch.values());
    }
  }
  SUBCASE("patch must agree with the ambient") {
    const auto y = make({"x", "y"}, {0, 0, 0, 5});
    CHECK_THROWS_AS(extend_over_base(y, ext("z", 1, 1, 2)), Error);
  }
}

TEST_CASE("join") {
  const auto p = FiniteDiversity::validate({"p"}, {0, 0});
  const auto q = FiniteDiversity::validate({"q"}, {0, 0});
  const auto j0 = join(p, q);
  CHECK(j0.distance(0, 1) == 0);
  CHECK(j0.is_semi());
  CHECK(quotient(j0).size() == 1);
  const auto a = make({"a1", "a2"}, {0, 0, 0, 1});
  const auto b = make({"b1", "b2"}, {0, 0, 0, 1});
  const auto j = join(a, b);
  CHECK_FALSE(FiniteDiversity::find_violation(4, j.values(), false));
  CHECK(j.value(0b0101) == 1);
  CHECK(j.value(0b1111) == 1);
  CHECK(restrict(j, 0b0011) == a);
  CHECK_THROWS_AS(join(a, a), Error);
}

TEST_CASE("quotient keeps strict diversities and merges zero-distance points") {
  const auto d = ext("z", 1, 1, 2);
  CHECK(quotient(d) == d);
  const auto semi = make({"x", "x2", "y"}, {0, 0, 0, 0, 0, 3, 3, 3}, true);
  CHECK(quotient_representatives(semi) == std::vector<std::size_t>{0, 2});
  const auto q = quotient(semi);
  CHECK(q.labels() == std::vector<std::string>{"x", "y"});
  CHECK(q.distance(0, 1) == 3);
}

TEST_CASE("joint embeddings on the worked pair") {
  const auto d1 = ext("z1", 1, 1, 2), d2 = ext("z2", 2, 2, 3);
  DiversityTuple a(d1, iota(3)), b(d2, iota(3));
  const auto up = dk_upper_embedding(a, b);
  CHECK(up.bound <= 1);
  CHECK(dk_lower_bound(a, b) <= up.bound);
  CHECK(restrict(up.joint, 0b000111).values() == d1.values());
  CHECK(restrict(up.joint, 0b111000).values() == d2.values());
  const auto same = dk_upper_embedding(a, a);
  CHECK(same.bound == 0);
}

TEST_CASE("the sequential chain embedding can exceed d_infty") {
  // Three points where the chain glues x first and the minimal extensions
  // then leave z far apart.
  const auto a = make({"x", "y", "z"}, {0, 0, 0, 3, 0, 2, 3, 4});
  const auto b = make({"x", "y", "z"}, {0, 0, 0, 4, 0, 2, 4, 4});
  DiversityTuple ta(a, iota(3)), tb(b, iota(3));
  REQUIRE(d_infty(ta, tb) == 1);
  const auto chain = dk_chain_embedding(ta, tb);
  CHECK(chain.bound == 2);
  CHECK_FALSE(FiniteDiversity::find_violation(6, chain.joint.values(), true));
  const auto coupled = dk_coupled_embedding(ta, tb);
  CHECK(coupled.bound <= 1);
  const auto best = dk_upper_embedding(ta, tb);
  CHECK(best.bound <= 1);
}

TEST_CASE("joint embedding sandwich on random tuples") {
  support::Rng g(12);
  for (int trial = 0; trial < 150; ++trial) {
    const auto d1 = support::random_diversity(g, 2 + trial % 3, "u");
    const auto d2 = support::random_diversity(g, 2 + (trial / 3) % 3, "v");
    const std::size_t k = 1 + trial % 4;
    std::vector<std::size_t> e1, e2;
    for (std::size_t i = 0; i < k; ++i) {
      e1.push_back(std::uniform_int_distribution<std::size_t>(0, d1.size() - 1)(g));
      e2.push_back(std::uniform_int_distribution<std::size_t>(0, d2.size() - 1)(g));
    }
    DiversityTuple a(d1, e1), b(d2, e2);
    const Rational d = support::brute_d_infty(d1, e1, d2, e2);
    for (const auto& emb : {dk_coupled_embedding(a, b), dk_upper_embedding(a, b)}) {
      CHECK(d / Rational(static_cast<long>(k)) <= emb.bound);
      CHECK(emb.bound <= d);
      CHECK_FALSE(FiniteDiversity::find_violation(2 * k, emb.joint.values(), true));
      CHECK(restrict(emb.joint, full_mask(k)).values() == positional_structure(a, "a").values());
      CHECK(restrict(emb.joint, full_mask(2 * k) & ~full_mask(k)).values() == positional_structure(b, "b").values());
      Rational worst(0);
      for (std::size_t i = 0; i < k; ++i) worst = std::max(worst, emb.joint.distance(i, k + i));
      CHECK(worst == emb.bound);
    }
  }
}

TEST_CASE("predicates are 1-Lipschitz in every random diversity") {
  support::Rng g(13);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = support::random_diversity(g, 2 + trial % 5);
    CHECK(support::brute_lipschitz(d));
    CHECK_FALSE(find_lipschitz_violation(d));
  }
}
