#ifndef BAERNSTEIN_PROBES_HPP
#define BAERNSTEIN_PROBES_HPP

#include "baernstein/dual.hpp"
#include "baernstein/renorm.hpp"

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace baernstein {

/// A norm handle reports the squared norm as an interval; exact norms
/// return zero-width intervals.
using NormSqHandle = std::function<Interval(const SparseVector&)>;

inline NormSqHandle base_norm_handle(const FamilyOracle& family) {
  return [&family](const SparseVector& x) -> Interval {
    Rational v = norm_sq(family, x).norm_sq;
    return {v, v, true};
  };
}

inline NormSqHandle triple_norm_handle(RenormContext& ctx, Ordinal alpha, unsigned k) {
  return [&ctx, alpha, k](const SparseVector& x) -> Interval {
    Rational v = ctx.triple_norm_sq(alpha, k, x);
    return {v, v, true};
  };
}

inline NormSqHandle dual_norm_sq_handle(const FamilyOracle& family,
                                        Rational tol = Rational(1, 1000000)) {
  return [&family, tol](const SparseVector& y) -> Interval {
    if (y.is_zero()) return {0, 0, true};
    DualResult d = dual_norm(family, y, tol);
    return {d.lower * d.lower, d.upper * d.upper, d.converged};
  };
}

inline NormSqHandle dual_triple_norm_handle(const FamilyOracle& family,
                                            Rational tol = Rational(1, 1000000)) {
  return [&family, tol](const SparseVector& y) -> Interval {
    return dual_triple_norm_sq(family, y, tol);
  };
}

struct DeltaRow {
  unsigned m = 0, n = 0;          // 1-based indices into the sequence
  Interval sum_norm_sq;           // ||x_m + x_n||^2
  Interval delta;                 // ||x_m+x_n||^2 - 2(||x_m||^2 + ||x_n||^2)
};

struct DeltaReport {
  std::string label;
  std::vector<DeltaRow> rows;
};

/// The Delta statistic for every pair m < n; exact where the norm handle
/// is exact, bracketed otherwise.
inline DeltaReport delta_matrix(std::string label, const NormSqHandle& handle,
                                const std::vector<SparseVector>& xs) {
  DeltaReport rep;
  rep.label = std::move(label);
  std::vector<Interval> norms;
  for (const auto& x : xs) norms.push_back(handle(x));
  for (std::size_t m = 0; m < xs.size(); ++m)
    for (std::size_t n = m + 1; n < xs.size(); ++n) {
      Interval sum = handle(xs[m] + xs[n]);
      Interval delta{sum.lower - 2 * (norms[m].upper + norms[n].upper),
                     sum.upper - 2 * (norms[m].lower + norms[n].lower),
                     sum.converged && norms[m].converged && norms[n].converged};
      rep.rows.push_back({static_cast<unsigned>(m + 1), static_cast<unsigned>(n + 1),
                          sum, delta});
    }
  return rep;
}

inline void write_csv(std::ostream& os, const DeltaReport& rep) {
  os << "m,n,norm_sq_sum,delta_lower,delta_upper\n";
  for (const auto& r : rep.rows)
    os << r.m << "," << r.n << ","
       << format_rational((r.sum_norm_sq.lower + r.sum_norm_sq.upper) / 2) << ","
       << format_rational(r.delta.lower) << "," << format_rational(r.delta.upper) << "\n";
}

/// Non-2R witness in the dual of the original Baernstein space:
/// y_n = e*_3 + e*_n (n = 4..9) has ||y_n||_* = 1 while every pairwise sum
/// has dual norm 2, so Delta tends to 0 with no convergence.
inline DeltaReport scenario_dual_non2r(Rational tol = Rational(1, 1000000)) {
  FamilySpec spec;
  spec.kind = FamilySpec::Kind::schreier1;
  FamilyOracle family(spec);
  std::vector<SparseVector> ys;
  for (unsigned n = 4; n <= 9; ++n) {
    SparseVector y(family.space());
    y.set(Point::natural(3), 1);
    y.set(Point::natural(n), 1);
    ys.push_back(std::move(y));
  }
  return delta_matrix("dual-non2r", dual_norm_sq_handle(family, tol), ys);
}

struct Lemma42Row {
  unsigned n = 0;
  Interval value;  // bracket for ||y + delta*y_n||_*
};

struct Lemma42Report {
  Rational delta;
  Interval target;  // bracket for sqrt(1 + delta^2)
  std::vector<Lemma42Row> rows;
  std::vector<SparseVector> perturbations;  // the y_n used, for reproducibility
};

/// Finite-scale trend toward lim ||y + delta*y_n||_* = sqrt(1 + delta^2):
/// y = e*_3 and y_n = c_n sum_{i<=n} 1_{F_i} with F_i = {2i+2, 2i+3}
/// disjoint Schreier sets avoiding supp y and c_n a rational approximation
/// of n^{-1/2} from below (so ||y_n||_inf -> 0).
inline Lemma42Report scenario_lemma42(const Rational& delta, unsigned n_max,
                                      Rational tol = Rational(1, 1000)) {
  if (delta <= 0 || delta > 4) throw domain_error("lemma42 requires 0 < delta <= 4");
  if (n_max > 8) throw domain_error("lemma42 requires n_max <= 8");
  FamilySpec spec;
  spec.kind = FamilySpec::Kind::schreier1;
  Guards guards;
  guards.max_support = 18;
  guards.max_support_dual = 18;
  guards.max_ground = 18;
  FamilyOracle family(spec, guards);
  Lemma42Report rep;
  rep.delta = delta;
  rep.target = {sqrt_lower(1 + delta * delta, 96), sqrt_upper(1 + delta * delta, 96), true};
  for (unsigned n = 1; n <= n_max; ++n) {
    Rational c = sqrt_lower(Rational(1, n), 32);
    SparseVector v(family.space());
    v.set(Point::natural(3), 1);
    SparseVector yn(family.space());
    for (unsigned i = 1; i <= n; ++i) {
      yn.set(Point::natural(2 * i + 2), c);
      yn.set(Point::natural(2 * i + 3), c);
    }
    SparseVector total = v + (delta * yn);
    DualResult d = dual_norm(family, total, tol);
    rep.rows.push_back({n, {d.lower, d.upper, d.converged}});
    rep.perturbations.push_back(std::move(yn));
  }
  return rep;
}

inline void write_csv(std::ostream& os, const Lemma42Report& rep) {
  os << "n,value_lower,value_upper,target_lower,target_upper\n";
  for (const auto& r : rep.rows)
    os << r.n << "," << format_rational(r.value.lower) << "," << format_rational(r.value.upper)
       << "," << format_rational(rep.target.lower) << "," << format_rational(rep.target.upper)
       << "\n";
}

}  // namespace baernstein

#endif  // BAERNSTEIN_PROBES_HPP
