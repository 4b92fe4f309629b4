#ifndef BAERNSTEIN_RENORM_HPP
#define BAERNSTEIN_RENORM_HPP

#include "baernstein/dual.hpp"
#include "baernstein/primal.hpp"

#include <map>
#include <memory>
#include <string>

namespace baernstein {

/// Evaluation context for the transfinite 2R renormings: owns one family
/// oracle per (alpha, k) over a fixed tuple space, and the lambda table of
/// equivalence-constant squares.
class RenormContext {
public:
  explicit RenormContext(Space space, Guards guards = {}, bool kt = false)
      : space_(space), guards_(guards), kt_(kt) {
    if (space_.kind != Space::Kind::tuples)
      throw domain_error("renorm context requires a tuple space");
  }

  const Space& space() const { return space_; }

  const FamilyOracle& oracle(const Ordinal& alpha, unsigned k) {
    std::string key = alpha.str() + "#" + std::to_string(k);
    auto it = oracles_.find(key);
    if (it == oracles_.end()) {
      FamilySpec spec;
      spec.kind = FamilySpec::Kind::transfinite;
      spec.alpha = alpha;
      spec.k = k;
      spec.kt = kt_;
      spec.space = space_;
      it = oracles_.emplace(key, std::make_unique<FamilyOracle>(spec, guards_)).first;
    }
    return *it->second;
  }

  /// lambda_0^2 = 1; lambda_{b+}^2 = 1 + lambda_b^2; lambda_a^2 = 2 for
  /// limits (with C_r = lambda_{a_r}, the series sum 2^-r C_r^-2
  /// lambda_{a_r}^2 telescopes to 1).
  Rational lambda_sq(const Ordinal& alpha) {
    auto it = lambda_.find(alpha.str());
    if (it != lambda_.end()) return it->second;
    Rational v;
    if (alpha.is_zero())
      v = 1;
    else if (alpha.is_successor())
      v = 1 + lambda_sq(alpha.predecessor());
    else
      v = 2;
    lambda_.emplace(alpha.str(), v);
    return v;
  }

  /// Exact squared 2R renorm |||x|||^2_{alpha,k}.
  ///   alpha = 0:        sum x_gamma^2
  ///   successor b+:     ||x||^2_{alpha,k} + |||x|||^2_{b,k}
  ///   limit:            ||x||^2_{alpha,k}
  ///                     + sum_{r<=R} 2^-r lambda_{a_r}^-2 |||x|||^2_{a_r, max(r,k)}
  ///                     + 2^-R sum x_gamma^2
  /// with R = max(1, D), D the max pairwise distance on supp x. For r > D
  /// every trace of F^{(max(r,k))}_{a_r} on supp x is singletons-only, so
  /// the r-th term is exactly 2^-r sum x^2 and the tail sums in closed form.
  /// min_terms > R forces an explicitly extended truncation (used by the
  /// truncation-consistency checks); the result must be identical.
  Rational triple_norm_sq(const Ordinal& alpha, unsigned k, const SparseVector& x,
                          unsigned min_terms = 0) {
    if (k < 1) throw domain_error("superscript k must be >= 1");
    if (x.is_zero()) return 0;
    if (!(x.space() == space_)) throw domain_error("vector space does not match context");
    if (alpha.is_zero()) return x.l2_sq();
    if (alpha.is_successor())
      return norm_sq(oracle(alpha, k), x).norm_sq + triple_norm_sq(alpha.predecessor(), k, x);
    unsigned D = x.max_pairwise_distance();
    unsigned R = std::max(1u, D);
    if (min_terms > R) R = min_terms;
    Rational total = norm_sq(oracle(alpha, k), x).norm_sq;
    Rational pow2(1);
    for (unsigned r = 1; r <= R; ++r) {
      pow2 /= 2;
      Ordinal ar = alpha.fundamental_sequence(r);
      total += pow2 / lambda_sq(ar) * triple_norm_sq(ar, std::max(r, k), x);
    }
    total += pow2 * x.l2_sq();
    return total;
  }

private:
  Space space_;
  Guards guards_;
  bool kt_;
  std::map<std::string, std::unique_ptr<FamilyOracle>> oracles_;
  std::map<std::string, Rational> lambda_;
};

/// KT renorm |||x|||^2 = ||x||_1^2 + ||x||^2_{l2}, over the branch-
/// constrained family (sharp >= 3 on top of the alpha = 1 rule).
inline Rational kt_renorm_sq(RenormContext& ctx, const SparseVector& x) {
  for (const auto& [p, v] : x.coords())
    if (!branch_valid(p)) throw domain_error("point " + p.str() + " is not branch-valid");
  return norm_sq(ctx.oracle(Ordinal::finite(1), 1), x).norm_sq + x.l2_sq();
}

/// Direct-sum norm on Y = X + X*: ||(x, y*)||^2 bracketed by the dual solver.
inline Interval y_norm_sq(RenormContext& kt_ctx, const FamilyOracle& dual_family,
                          const SparseVector& x, const SparseVector& ystar,
                          const Rational& tol = Rational(1, 1000000)) {
  Rational primal = x.is_zero() ? Rational(0) : kt_renorm_sq(kt_ctx, x);
  Interval dual = dual_triple_norm_sq(dual_family, ystar, tol);
  return {primal + dual.lower, primal + dual.upper, dual.converged};
}

}  // namespace baernstein

#endif  // BAERNSTEIN_RENORM_HPP
