#ifndef BAERNSTEIN_NORMING_HPP
#define BAERNSTEIN_NORMING_HPP

#include "baernstein/primal.hpp"

#include <vector>

namespace baernstein {

/// One signed block of a norming functional sum_i eps_i a_i 1_{F_i}.
/// Coefficients are a_i = coeff_i / sqrt(scale_sq) so that functionals
/// extracted from a norm certificate (a_i = b_i / ||x||) stay exact.
struct FunctionalBlock {
  int sign = 1;           // +1 or -1
  Rational coeff;         // positive
  PointSet set;
};

struct NormingFunctional {
  std::vector<FunctionalBlock> blocks;
  Rational scale_sq = 1;  // common scale; 1 for dyadic functionals
  bool dyadic = false;

  /// sum a_i^2 = (sum coeff_i^2) / scale_sq; must be <= 1 for a valid
  /// functional.
  Rational coeff_sq_sum() const {
    Rational s = 0;
    for (const auto& b : blocks) s += b.coeff * b.coeff;
    return s / scale_sq;
  }
};

/// Value of a functional at x, as c / sqrt(scale_sq) with c rational.
/// value_sq carries the exact square; the sign is that of c.
struct ScaledValue {
  Rational numer;     // signed
  Rational scale_sq;  // >= 1

  Rational value_sq() const { return numer * numer / scale_sq; }
  int sign() const { return numer < 0 ? -1 : (numer > 0 ? 1 : 0); }
  double approx() const { return to_double(numer) / std::sqrt(to_double(scale_sq)); }
};

inline void validate_functional(const NormingFunctional& f) {
  std::set<Point> seen;
  for (const auto& b : f.blocks) {
    if (b.sign != 1 && b.sign != -1) throw domain_error("functional block sign must be +-1");
    if (b.coeff <= 0) throw domain_error("functional block coefficient must be positive");
    if (b.set.empty()) throw domain_error("functional block with empty set");
    for (const auto& p : b.set)
      if (!seen.insert(p).second)
        throw domain_error("functional blocks overlap at " + p.str());
  }
  if (f.scale_sq <= 0) throw domain_error("functional scale must be positive");
  if (f.coeff_sq_sum() > 1) throw domain_error("functional has sum a_i^2 > 1");
}

/// sum_i eps_i a_i (sum_{gamma in F_i} x_gamma); |value| <= ||x|| whenever
/// sum a_i^2 <= 1 (tested, not assumed).
inline ScaledValue apply_functional(const NormingFunctional& f, const SparseVector& x) {
  validate_functional(f);
  Rational c = 0;
  for (const auto& b : f.blocks) {
    Rational s = 0;
    for (const auto& p : b.set) s += x.at(p);
    c += Rational(b.sign) * b.coeff * s;
  }
  return {c, f.scale_sq};
}

/// Builds a functional attaining at least ||x||/2 from the optimal norm
/// certificate: block coefficients b_i / ||x||, each block reduced to the
/// heavier of its positive/negative coordinate parts (positive on ties).
inline NormingFunctional extract_norming(const FamilyOracle& family, const SparseVector& x) {
  if (x.is_zero()) throw domain_error("cannot extract a norming functional for the zero vector");
  NormResult res = norm_sq(family, x);
  NormingFunctional f;
  f.scale_sq = res.norm_sq;
  for (const auto& g : res.certificate) {
    Rational b = 0;       // sum of |x| over the block
    Rational pos = 0, neg = 0;
    PointSet hpos, hneg;
    for (const auto& p : g) {
      Rational v = x.at(p);
      if (v > 0) {
        pos += v;
        hpos.push_back(p);
      } else if (v < 0) {
        neg -= v;
        hneg.push_back(p);
      }
      b += v < 0 ? -v : v;
    }
    if (b == 0) continue;
    FunctionalBlock blk;
    blk.coeff = b;
    if (pos >= neg) {
      blk.sign = 1;
      blk.set = hpos;
    } else {
      blk.sign = -1;
      blk.set = hneg;
    }
    f.blocks.push_back(std::move(blk));
  }
  f.dyadic = false;
  validate_functional(f);
  return f;
}

/// Replaces each coefficient a by the largest power 2^-s with 2^-s <= a
/// (so 2^-s lies in (a/2, a]). The result is dyadic with sum 4^-s(i) <= 1;
/// composed with extract_norming the applied value is >= ||x||/4.
inline NormingFunctional discretize_norming(const NormingFunctional& f) {
  validate_functional(f);
  NormingFunctional out;
  out.scale_sq = 1;
  out.dyadic = true;
  for (const auto& b : f.blocks) {
    // a^2 = coeff^2 / scale_sq <= 1; find minimal s with 4^-s <= a^2
    Rational a_sq = b.coeff * b.coeff / f.scale_sq;
    Rational w(1);  // 4^-s
    while (w > a_sq) w /= 4;
    Rational coeff = sqrt_lower(w, 0);  // exact: w is a power of 1/4
    FunctionalBlock blk;
    blk.sign = b.sign;
    blk.coeff = coeff;
    blk.set = b.set;
    out.blocks.push_back(std::move(blk));
  }
  validate_functional(out);
  return out;
}

}  // namespace baernstein

#endif  // BAERNSTEIN_NORMING_HPP
