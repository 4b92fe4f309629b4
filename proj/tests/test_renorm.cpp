#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "baernstein/renorm.hpp"

#include <random>

using namespace baernstein;

namespace {

Space tuple_space(unsigned depth, unsigned alphabet = 0) {
  return Space{Space::Kind::tuples, depth, alphabet};
}

SparseVector random_tuple_vec(std::mt19937_64& rng, const Space& sp, unsigned max_support) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<std::uint32_t> coord(1, sp.alphabet ? sp.alphabet : 3);
  std::uniform_int_distribution<unsigned> sz(1, max_support);
  SparseVector x(sp);
  unsigned target = sz(rng);
  while (x.support_size() < target) {
    std::vector<std::uint32_t> c(sp.depth);
    for (auto& v : c) v = coord(rng);
    int a = num(rng);
    if (a == 0) a = 1;
    x.set(Point::tuple(std::move(c)), Rational(a, den(rng)));
  }
  return x;
}

}  // namespace

TEST_CASE("lambda table") {
  RenormContext ctx(tuple_space(3, 3));
  CHECK(ctx.lambda_sq(parse_ordinal("0")) == 1);
  CHECK(ctx.lambda_sq(parse_ordinal("1")) == 2);
  CHECK(ctx.lambda_sq(parse_ordinal("2")) == 3);
  CHECK(ctx.lambda_sq(parse_ordinal("w")) == 2);
  CHECK(ctx.lambda_sq(parse_ordinal("w*1+1")) == 3);
  CHECK(ctx.lambda_sq(parse_ordinal("w*2")) == 2);
  CHECK(ctx.lambda_sq(parse_ordinal("w^2")) == 2);
}

TEST_CASE("base case and successor recursion") {
  Space sp = tuple_space(3, 3);
  RenormContext ctx(sp);
  SparseVector x(sp);
  x.set(Point::tuple({1, 2, 3}), Rational(3, 2));
  x.set(Point::tuple({1, 2, 1}), Rational(-1, 2));
  CHECK(ctx.triple_norm_sq(parse_ordinal("0"), 1, x) == x.l2_sq());
  Rational n1 = norm_sq(ctx.oracle(parse_ordinal("1"), 1), x).norm_sq;
  CHECK(ctx.triple_norm_sq(parse_ordinal("1"), 1, x) == n1 + x.l2_sq());
}

TEST_CASE("limit value on a single support point") {
  // |||e_p|||^2_w = 1 + sum_r 2^-r lambda_r^-2 |||e_p|||^2_r + tail = 2
  Space sp = tuple_space(3, 3);
  RenormContext ctx(sp);
  SparseVector x(sp);
  x.set(Point::tuple({2, 1, 3}), 1);
  CHECK(ctx.triple_norm_sq(parse_ordinal("w"), 1, x) == 2);
  CHECK(ctx.triple_norm_sq(parse_ordinal("w"), 2, x) == 2);
  // and scaling: |||c e_p|||^2 = 2 c^2
  SparseVector cx = Rational(3, 5) * x;
  CHECK(ctx.triple_norm_sq(parse_ordinal("w"), 1, cx) == Rational(18, 25));
}

TEST_CASE("truncation consistency: extending the tail does not change the value") {
  Space sp = tuple_space(3, 3);
  RenormContext ctx(sp);
  std::mt19937_64 rng(111);
  for (const char* alpha : {"w", "w*2", "w^2"}) {
    Ordinal a = parse_ordinal(alpha);
    for (int trial = 0; trial < 10; ++trial) {
      auto x = random_tuple_vec(rng, sp, 4);
      unsigned R = std::max(1u, x.max_pairwise_distance());
      Rational v = ctx.triple_norm_sq(a, 1, x);
      CHECK(ctx.triple_norm_sq(a, 1, x, R + 1) == v);
      CHECK(ctx.triple_norm_sq(a, 1, x, R + 3) == v);
    }
  }
}

TEST_CASE("equivalence bracket: base norm <= renorm <= lambda^2 * base norm") {
  Space sp = tuple_space(3, 3);
  RenormContext ctx(sp);
  std::mt19937_64 rng(222);
  for (const char* alpha : {"1", "2", "w", "w*1+1"}) {
    Ordinal a = parse_ordinal(alpha);
    Rational lam = ctx.lambda_sq(a);
    for (int trial = 0; trial < 15; ++trial) {
      auto x = random_tuple_vec(rng, sp, 4);
      Rational base = norm_sq(ctx.oracle(a, 1), x).norm_sq;
      Rational triple = ctx.triple_norm_sq(a, 1, x);
      CHECK(base <= triple);
      CHECK(triple <= lam * base);
    }
  }
}

TEST_CASE("renorm homogeneity and l2 floor") {
  Space sp = tuple_space(3, 3);
  RenormContext ctx(sp);
  std::mt19937_64 rng(333);
  Ordinal a = parse_ordinal("w");
  for (int trial = 0; trial < 15; ++trial) {
    auto x = random_tuple_vec(rng, sp, 4);
    Rational v = ctx.triple_norm_sq(a, 1, x);
    Rational c(-5, 3);
    CHECK(ctx.triple_norm_sq(a, 1, c * x) == c * c * v);
    CHECK(v >= x.l2_sq());
  }
}

TEST_CASE("renorm is monotone in the tail superscript argument") {
  // larger k shrinks every family in the recursion, so the value decreases
  Space sp = tuple_space(4, 3);
  RenormContext ctx(sp);
  std::mt19937_64 rng(444);
  for (int trial = 0; trial < 12; ++trial) {
    auto x = random_tuple_vec(rng, sp, 4);
    Rational v1 = ctx.triple_norm_sq(parse_ordinal("2"), 1, x);
    Rational v2 = ctx.triple_norm_sq(parse_ordinal("2"), 2, x);
    Rational v3 = ctx.triple_norm_sq(parse_ordinal("2"), 3, x);
    CHECK(v3 <= v2);
    CHECK(v2 <= v1);
  }
}

TEST_CASE("KT renorm") {
  Space sp = tuple_space(4, 0);
  RenormContext ctx(sp, Guards{}, /*kt=*/true);
  SUBCASE("single branch point") {
    SparseVector x(sp);
    x.set(Point::tuple({1, 1, 1, 1}), 1);
    CHECK(kt_renorm_sq(ctx, x) == 2);  // 1 + 1
  }
  SUBCASE("two branches at distance >= 3 combine into one block") {
    SparseVector x(sp);
    x.set(Point::tuple({1, 1, 1, 1}), 1);
    x.set(Point::tuple({1, 1, 2, 1}), 1);  // distance 3
    CHECK(kt_renorm_sq(ctx, x) == 6);  // (1+1)^2 + 2
  }
  SUBCASE("branch-invalid support is rejected") {
    SparseVector x(sp);
    x.set(Point::tuple({2, 1, 1, 1}), 1);
    CHECK_THROWS_AS(kt_renorm_sq(ctx, x), domain_error);
  }
}

TEST_CASE("direct-sum norm on X + X*") {
  Space sp = tuple_space(4, 0);
  RenormContext ctx(sp, Guards{}, /*kt=*/true);
  FamilySpec dual_spec;
  dual_spec.kind = FamilySpec::Kind::schreier1;
  FamilyOracle dual_fam(dual_spec);

  SparseVector x(sp);
  x.set(Point::tuple({1, 1, 1, 1}), 1);
  SparseVector ystar(Space{Space::Kind::naturals, 0, 0});
  ystar.set(Point::natural(3), 1);
  ystar.set(Point::natural(4), 1);

  // supp ystar = {3,4} is a single admissible block: dual norm is exactly 1,
  // Day part is 1/4 + 1/16, KT part is 2.
  Interval v = y_norm_sq(ctx, dual_fam, x, ystar);
  CHECK(v.converged);
  CHECK(v.lower == v.upper);
  CHECK(v.lower == Rational(2) + 1 + Rational(5, 16));

  // zero components degrade gracefully
  Interval only_dual = y_norm_sq(ctx, dual_fam, SparseVector(sp), ystar);
  CHECK(only_dual.lower == Rational(1) + Rational(5, 16));
  Interval only_primal = y_norm_sq(ctx, dual_fam, x, SparseVector(ystar.space()));
  CHECK(only_primal.lower == 2);
  CHECK(only_primal.upper == 2);
}
