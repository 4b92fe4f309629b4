#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "baernstein/primal.hpp"

#include <random>

using namespace baernstein;

namespace {

FamilyOracle schreier(bool ordered = false) {
  FamilySpec spec;
  spec.kind = FamilySpec::Kind::schreier1;
  spec.ordered = ordered;
  return FamilyOracle(spec);
}

FamilyOracle transfinite(const std::string& alpha, unsigned k, unsigned depth,
                         unsigned alphabet = 0) {
  FamilySpec spec;
  spec.kind = FamilySpec::Kind::transfinite;
  spec.alpha = parse_ordinal(alpha);
  spec.k = k;
  spec.space = Space{Space::Kind::tuples, depth, alphabet};
  return FamilyOracle(spec);
}

SparseVector nat_vec(std::initializer_list<std::pair<std::uint64_t, const char*>> entries) {
  SparseVector x(Space{Space::Kind::naturals, 0, 0});
  for (auto& [n, v] : entries) x.set(Point::natural(n), parse_rational(v));
  return x;
}

PointSet nats(std::initializer_list<std::uint64_t> ns) {
  PointSet out;
  for (auto n : ns) out.push_back(Point::natural(n));
  return out;
}

SparseVector random_nat_vec(std::mt19937_64& rng, unsigned max_support) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<std::uint64_t> pt(1, 9);
  std::uniform_int_distribution<unsigned> sz(0, max_support);
  SparseVector x(Space{Space::Kind::naturals, 0, 0});
  unsigned target = sz(rng);
  while (x.support_size() < target) x.set(Point::natural(pt(rng)), Rational(num(rng), den(rng)));
  return x;
}

SparseVector random_tuple_vec(std::mt19937_64& rng, unsigned depth, unsigned alphabet,
                              unsigned max_support) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<std::uint32_t> coord(1, alphabet);
  std::uniform_int_distribution<unsigned> sz(0, max_support);
  SparseVector x(Space{Space::Kind::tuples, depth, alphabet});
  unsigned target = sz(rng);
  while (x.support_size() < target) {
    std::vector<std::uint32_t> c(depth);
    for (auto& v : c) v = coord(rng);
    x.set(Point::tuple(std::move(c)), Rational(num(rng), den(rng)));
  }
  return x;
}

void check_certificate(const FamilyOracle& family, const SparseVector& x,
                       const NormResult& res) {
  // blocks are family members, pairwise disjoint, and reproduce the value
  for (const auto& f : res.certificate) CHECK(family.member(f));
  CHECK(block_functional_sq(x.abs(), res.certificate) == res.norm_sq);
}

}  // namespace

TEST_CASE("block functional: signed sums, overlap is an error") {
  auto x = nat_vec({{1, "1"}, {2, "-1"}, {3, "2"}});
  CHECK(block_functional_sq(x, {nats({1, 2})}) == 0);
  CHECK(block_functional_sq(x, {nats({1, 3}), nats({2})}) == 10);
  CHECK_THROWS_AS(block_functional_sq(x, {nats({1, 2}), nats({2, 3})}), domain_error);
}

TEST_CASE("schreier1 values with certificates") {
  auto fam = schreier();
  SUBCASE("e4 + e5: one admissible block") {
    auto res = norm_sq(fam, nat_vec({{4, "1"}, {5, "1"}}));
    CHECK(res.norm_sq == 4);
    REQUIRE(res.certificate.size() == 1);
    CHECK(res.certificate[0] == nats({4, 5}));
  }
  SUBCASE("e1 + e2: forced into singletons") {
    auto res = norm_sq(fam, nat_vec({{1, "1"}, {2, "1"}}));
    CHECK(res.norm_sq == 2);
    REQUIRE(res.certificate.size() == 2);
    CHECK(res.certificate[0] == nats({1}));
    CHECK(res.certificate[1] == nats({2}));
  }
  SUBCASE("mixed signs use absolute values") {
    auto res = norm_sq(fam, nat_vec({{4, "1"}, {5, "-1"}}));
    CHECK(res.norm_sq == 4);
  }
  SUBCASE("e1 + e2 + e3") {
    // {2,3} in S1, point 1 alone: 1 + 4
    auto res = norm_sq(fam, nat_vec({{1, "1"}, {2, "1"}, {3, "1"}}));
    CHECK(res.norm_sq == 5);
  }
  SUBCASE("rational coefficients") {
    auto res = norm_sq(fam, nat_vec({{2, "1/2"}, {3, "1/3"}}));
    CHECK(res.norm_sq == Rational(25, 36));
  }
  SUBCASE("zero vector") {
    auto res = norm_sq(fam, SparseVector(Space{Space::Kind::naturals, 0, 0}));
    CHECK(res.norm_sq == 0);
    CHECK(res.certificate.empty());
  }
}

TEST_CASE("certificates are deterministic and valid") {
  auto fam = schreier();
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    auto x = random_nat_vec(rng, 6);
    auto a = norm_sq(fam, x);
    auto b = norm_sq(fam, x);
    CHECK(a.norm_sq == b.norm_sq);
    CHECK(a.certificate == b.certificate);
    check_certificate(fam, x, a);
  }
}

TEST_CASE("DP agrees with the brute-force oracle (schreier1)") {
  for (bool ordered : {false, true}) {
    auto fam = schreier(ordered);
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 80; ++trial) {
      auto x = random_nat_vec(rng, 6);
      auto fast = norm_sq(fam, x);
      auto slow = norm_sq_bruteforce(fam, x);
      CHECK(fast.norm_sq == slow.norm_sq);
      check_certificate(fam, x, fast);
    }
  }
}

TEST_CASE("DP agrees with the brute-force oracle (transfinite)") {
  std::mt19937_64 rng(303);
  for (const std::string& alpha : {std::string("1"), std::string("2"), std::string("w")}) {
    auto fam = transfinite(alpha, 1, 3, 3);
    for (int trial = 0; trial < 40; ++trial) {
      auto x = random_tuple_vec(rng, 3, 3, 5);
      auto fast = norm_sq(fam, x);
      auto slow = norm_sq_bruteforce(fam, x);
      CHECK(fast.norm_sq == slow.norm_sq);
      check_certificate(fam, x, fast);
    }
  }
}

TEST_CASE("ordered-blocks value never exceeds the unordered value") {
  auto unord = schreier(false);
  auto ord = schreier(true);
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 80; ++trial) {
    auto x = random_nat_vec(rng, 7);
    CHECK(norm_sq(ord, x).norm_sq <= norm_sq(unord, x).norm_sq);
  }
}

TEST_CASE("invariances: signs, homogeneity") {
  auto fam = schreier();
  std::mt19937_64 rng(505);
  std::bernoulli_distribution flip(0.5);
  for (int trial = 0; trial < 60; ++trial) {
    auto x = random_nat_vec(rng, 6);
    Rational base = norm_sq(fam, x).norm_sq;
    // flip signs arbitrarily
    SparseVector y(x.space());
    for (const auto& [p, v] : x.coords()) y.set(p, flip(rng) ? -v : v);
    CHECK(norm_sq(fam, y).norm_sq == base);
    // |c x| = |c| |x| squared
    Rational c(-3, 2);
    CHECK(norm_sq(fam, c * x).norm_sq == c * c * base);
  }
}

TEST_CASE("l2 lower bound and l1 upper bound") {
  auto fam = schreier();
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 60; ++trial) {
    auto x = random_nat_vec(rng, 7);
    Rational v = norm_sq(fam, x).norm_sq;
    CHECK(v >= x.l2_sq());
    CHECK(v <= x.l1() * x.l1());
  }
}

TEST_CASE("lower 2-estimate for disjointly supported vectors") {
  auto fam = schreier();
  std::mt19937_64 rng(707);
  int done = 0;
  while (done < 50) {
    auto x = random_nat_vec(rng, 4);
    auto y = random_nat_vec(rng, 4);
    if (!x.disjoint_from(y)) continue;
    ++done;
    Rational vx = norm_sq(fam, x).norm_sq;
    Rational vy = norm_sq(fam, y).norm_sq;
    Rational vxy = norm_sq(fam, x + y).norm_sq;
    CHECK(vxy >= vx + vy);
  }
}

TEST_CASE("larger superscript never increases the norm") {
  std::mt19937_64 rng(808);
  auto f1 = transfinite("2", 1, 4, 3);
  auto f2 = transfinite("2", 2, 4, 3);
  auto f3 = transfinite("2", 3, 4, 3);
  for (int trial = 0; trial < 40; ++trial) {
    auto x = random_tuple_vec(rng, 4, 3, 5);
    Rational v1 = norm_sq(f1, x).norm_sq;
    Rational v2 = norm_sq(f2, x).norm_sq;
    Rational v3 = norm_sq(f3, x).norm_sq;
    CHECK(v3 <= v2);
    CHECK(v2 <= v1);
  }
}

TEST_CASE("norm is monotone in alpha") {
  std::mt19937_64 rng(909);
  auto f1 = transfinite("1", 1, 3, 3);
  auto f2 = transfinite("2", 1, 3, 3);
  auto fw = transfinite("w", 1, 3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    auto x = random_tuple_vec(rng, 3, 3, 5);
    Rational v1 = norm_sq(f1, x).norm_sq;
    Rational v2 = norm_sq(f2, x).norm_sq;
    Rational vw = norm_sq(fw, x).norm_sq;
    CHECK(v1 <= v2);
    CHECK(v2 <= vw);
  }
}

TEST_CASE("support guard") {
  Guards tight;
  tight.max_support = 3;
  FamilySpec spec;
  spec.kind = FamilySpec::Kind::schreier1;
  FamilyOracle fam(spec, tight);
  auto x = nat_vec({{1, "1"}, {2, "1"}, {3, "1"}, {4, "1"}});
  CHECK_THROWS_AS(norm_sq(fam, x), domain_error);
}

TEST_CASE("space mismatch is an error") {
  auto fam = schreier();
  SparseVector x(Space{Space::Kind::tuples, 3, 3});
  x.set(Point::tuple({1, 1, 1}), 1);
  CHECK_THROWS_AS(norm_sq(fam, x), domain_error);
}
