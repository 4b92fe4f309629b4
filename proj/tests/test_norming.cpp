#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "baernstein/norming.hpp"

#include <random>

using namespace baernstein;

namespace {

FamilyOracle schreier() {
  FamilySpec spec;
  spec.kind = FamilySpec::Kind::schreier1;
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

SparseVector random_nat_vec(std::mt19937_64& rng, unsigned min_support, unsigned max_support) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<std::uint64_t> pt(1, 9);
  std::uniform_int_distribution<unsigned> sz(min_support, max_support);
  SparseVector x(Space{Space::Kind::naturals, 0, 0});
  unsigned target = sz(rng);
  while (x.support_size() < target) {
    int a = num(rng);
    if (a == 0) a = 1;
    x.set(Point::natural(pt(rng)), Rational(a, den(rng)));
  }
  return x;
}

bool is_dyadic_power(const Rational& r) {
  // r = 1 / 2^s for some s >= 0
  if (r <= 0 || r > 1) return false;
  Rational v = r;
  while (v < 1) v *= 2;
  return v == 1;
}

}  // namespace

TEST_CASE("validate_functional rejects malformed input") {
  NormingFunctional f;
  f.blocks = {{1, Rational(1, 2), nats({1})}, {-1, Rational(1, 2), nats({2, 3})}};
  CHECK_NOTHROW(validate_functional(f));

  auto broken = f;
  broken.blocks[0].sign = 2;
  CHECK_THROWS_AS(validate_functional(broken), domain_error);

  broken = f;
  broken.blocks[0].coeff = 0;
  CHECK_THROWS_AS(validate_functional(broken), domain_error);

  broken = f;
  broken.blocks[0].set = {};
  CHECK_THROWS_AS(validate_functional(broken), domain_error);

  broken = f;
  broken.blocks[1].set = nats({1, 3});  // overlaps block 0
  CHECK_THROWS_AS(validate_functional(broken), domain_error);

  broken = f;
  broken.blocks[0].coeff = 1;  // 1 + 1/4 > 1
  CHECK_THROWS_AS(validate_functional(broken), domain_error);
}

TEST_CASE("apply_functional: signed block sums at exact scale") {
  NormingFunctional f;
  f.blocks = {{1, Rational(1, 2), nats({1, 2})}, {-1, Rational(1, 2), nats({3})}};
  auto x = nat_vec({{1, "1"}, {2, "2"}, {3, "4"}});
  ScaledValue v = apply_functional(f, x);
  CHECK(v.numer == Rational(-1, 2));  // (3 - 4) / 2
  CHECK(v.scale_sq == 1);
  CHECK(v.value_sq() == Rational(1, 4));
  CHECK(v.sign() == -1);
}

TEST_CASE("extract: nonnegative vectors are normed exactly") {
  auto fam = schreier();
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    SparseVector x = random_nat_vec(rng, 1, 6).abs();
    Rational ns = norm_sq(fam, x).norm_sq;
    auto f = extract_norming(fam, x);
    CHECK(f.coeff_sq_sum() == 1);
    ScaledValue v = apply_functional(f, x);
    CHECK(v.sign() == 1);
    CHECK(v.value_sq() == ns);  // f(x) = ||x|| exactly
  }
}

TEST_CASE("extract: signed vectors reach at least half the norm") {
  auto fam = schreier();
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    auto x = random_nat_vec(rng, 1, 6);
    Rational ns = norm_sq(fam, x).norm_sq;
    auto f = extract_norming(fam, x);
    ScaledValue v = apply_functional(f, x);
    CHECK(v.sign() == 1);
    CHECK(v.value_sq() * 4 >= ns);  // f(x) >= ||x|| / 2
    CHECK(v.value_sq() <= ns);      // and never exceeds ||x||
  }
}

TEST_CASE("extracted functionals act within the unit dual ball") {
  auto fam = schreier();
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 40; ++trial) {
    auto x = random_nat_vec(rng, 1, 5);
    auto z = random_nat_vec(rng, 1, 5);
    auto f = extract_norming(fam, x);
    ScaledValue v = apply_functional(f, z);
    CHECK(v.value_sq() <= norm_sq(fam, z).norm_sq);
  }
}

TEST_CASE("discretize: coefficient rounding to powers of two") {
  // a = 1 stays 1; a = 1/sqrt(2) and a = 3/5 both round down to 1/2
  NormingFunctional unit;
  unit.blocks = {{1, 1, nats({1})}};
  auto d = discretize_norming(unit);
  CHECK(d.blocks[0].coeff == 1);
  CHECK(d.dyadic);
  CHECK(d.scale_sq == 1);

  NormingFunctional root2;
  root2.blocks = {{1, 1, nats({1})}};
  root2.scale_sq = 2;  // a = 1/sqrt(2)
  CHECK(discretize_norming(root2).blocks[0].coeff == Rational(1, 2));

  NormingFunctional threefifths;
  threefifths.blocks = {{1, Rational(3, 5), nats({1})}};
  CHECK(discretize_norming(threefifths).blocks[0].coeff == Rational(1, 2));

  NormingFunctional small;
  small.blocks = {{-1, Rational(1, 5), nats({2})}};
  // a^2 = 1/25: minimal 4^-s <= 1/25 is 4^-3 = 1/64
  CHECK(discretize_norming(small).blocks[0].coeff == Rational(1, 8));
}

TEST_CASE("discretize preserves signs, sets and validity") {
  auto fam = schreier();
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 40; ++trial) {
    auto x = random_nat_vec(rng, 1, 6);
    auto f = extract_norming(fam, x);
    auto d = discretize_norming(f);
    CHECK(d.dyadic);
    CHECK(d.scale_sq == 1);
    CHECK(d.coeff_sq_sum() <= 1);
    REQUIRE(d.blocks.size() == f.blocks.size());
    for (std::size_t i = 0; i < d.blocks.size(); ++i) {
      CHECK(d.blocks[i].sign == f.blocks[i].sign);
      CHECK(d.blocks[i].set == f.blocks[i].set);
      CHECK(is_dyadic_power(d.blocks[i].coeff));
      // rounded coefficient lies in (a/2, a]
      Rational a_sq = f.blocks[i].coeff * f.blocks[i].coeff / f.scale_sq;
      Rational c_sq = d.blocks[i].coeff * d.blocks[i].coeff;
      CHECK(c_sq <= a_sq);
      CHECK(4 * c_sq > a_sq);
    }
  }
}

TEST_CASE("discretized extraction reaches at least a quarter of the norm") {
  auto fam = schreier();
  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 60; ++trial) {
    auto x = random_nat_vec(rng, 1, 6);
    Rational ns = norm_sq(fam, x).norm_sq;
    auto d = discretize_norming(extract_norming(fam, x));
    ScaledValue v = apply_functional(d, x);
    CHECK(v.sign() == 1);
    CHECK(v.value_sq() * 16 >= ns);  // f(x) >= ||x|| / 4
    CHECK(v.value_sq() <= ns);
  }
}

TEST_CASE("extraction requires a nonzero vector") {
  auto fam = schreier();
  CHECK_THROWS_AS(extract_norming(fam, SparseVector(Space{Space::Kind::naturals, 0, 0})),
                  domain_error);
}
