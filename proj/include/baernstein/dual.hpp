#ifndef BAERNSTEIN_DUAL_HPP
#define BAERNSTEIN_DUAL_HPP

#include "baernstein/primal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace baernstein {

/// Day's norm squared: sum of 4^{-i} a_i^2 over the decreasing
/// rearrangement of |coords|; this equals the sup over all injections by
/// the rearrangement inequality.
inline Rational day_norm_sq(const SparseVector& y) {
  std::vector<Rational> mags;
  for (const auto& [p, v] : y.coords()) mags.push_back(v < 0 ? -v : v);
  std::sort(mags.begin(), mags.end(), std::greater<Rational>());
  Rational total = 0;
  Rational weight(1, 4);
  for (const auto& a : mags) {
    total += weight * a * a;
    weight /= 4;
  }
  return total;
}

/// Bracket for the dual Baernstein norm with re-verifiable certificates.
struct DualResult {
  Rational lower;  // = <x_hat, y> for x_hat with norm_sq(x_hat) <= 1
  Rational upper;  // sum of certified block-max l2 terms over a decomposition
  bool converged = false;
  bool sign_flipped = false;  // y was replaced by |y| (1-unconditionality)

  SparseVector lower_certificate;                 // x_hat
  std::vector<std::vector<PointSet>> upper_partitions;
  std::vector<SparseVector> upper_parts;          // parts sum to |y|

  Rational value() const { return (lower + upper) / 2; }
  Rational gap() const { return upper - lower; }
};

namespace detail {

// Double-precision view of the trace DP for the dual solver's inner loops.
struct DualWorkspace {
  const MaskTable& tab;
  unsigned n;
  std::uint32_t full;
  std::vector<double> yv;          // |y| per support index
  std::vector<double> val;         // DP scratch
  std::vector<std::uint32_t> choice;

  DualWorkspace(const MaskTable& t, const SparseVector& yabs) : tab(t) {
    n = static_cast<unsigned>(t.support.size());
    full = (std::uint32_t(1) << n) - 1;
    for (const auto& p : t.support) yv.push_back(to_double(yabs.at(p)));
    val.assign(full + 1, 0.0);
    choice.assign(full + 1, 0);
  }

  // Squared Baernstein norm of x >= 0 plus the argmax full partition.
  double norm_sq(const std::vector<double>& x, std::vector<std::uint32_t>* partition) {
    std::vector<double> s1(full + 1, 0.0);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      unsigned low = static_cast<unsigned>(std::countr_zero(mask));
      s1[mask] = s1[mask & (mask - 1)] + x[low];
    }
    val[0] = 0.0;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      unsigned low = static_cast<unsigned>(std::countr_zero(mask));
      std::uint32_t rest = mask & (mask - 1);
      double best = -1.0;
      std::uint32_t bestT = 0;
      for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
        std::uint32_t t = sub | (std::uint32_t(1) << low);
        if (tab.admissible[t]) {
          double cand = s1[t] * s1[t] + val[mask ^ t];
          if (cand > best) {
            best = cand;
            bestT = t;
          }
        }
        if (sub == 0) break;
      }
      val[mask] = best;
      choice[mask] = bestT;
    }
    if (partition) {
      partition->clear();
      std::uint32_t mask = full;
      while (mask) {
        partition->push_back(choice[mask]);
        mask ^= choice[mask];
      }
    }
    return val[full];
  }
};

inline Rational round_to_rational(double v, std::int64_t den) {
  if (!(v > 0)) return 0;
  double scaled = v * static_cast<double>(den);
  if (scaled > 9.0e18) throw domain_error("dual solver: value too large to rationalize");
  return Rational(Integer(static_cast<std::int64_t>(std::llround(scaled))), Integer(den));
}

}  // namespace detail

/// Brackets ||y||_* = sup{<x,y> : ||x|| <= 1}. The lower bound comes from
/// a feasible primal vector certified by an exact norm evaluation; the
/// upper bound from a decomposition y = sum y_P across full partitions of
/// supp y into family members, each term measured by the l2 norm of its
/// block maxima (the dual of the P-block seminorm).
inline DualResult dual_norm(const FamilyOracle& family, const SparseVector& y,
                            const Rational& tol = Rational(1, 1000000),
                            std::uint64_t iteration_budget = 0) {
  if (tol <= 0 || tol >= 1) throw domain_error("dual norm tolerance must be in (0,1)");
  if (!(y.space() == family.space()) && !y.is_zero())
    throw domain_error("vector space does not match the family's space");
  DualResult out;
  out.lower_certificate = SparseVector(family.space());
  if (y.is_zero()) {
    out.lower = out.upper = 0;
    out.converged = true;
    return out;
  }
  const unsigned n = static_cast<unsigned>(y.support_size());
  if (n > family.guards().max_support_dual)
    throw domain_error("dual norm support guard exceeded: " + std::to_string(n) + " > " +
                       std::to_string(family.guards().max_support_dual));
  if (iteration_budget == 0) iteration_budget = family.guards().iteration_budget;

  // WLOG y >= 0 by 1-unconditionality of both norms.
  SparseVector ya = y.abs();
  out.sign_flipped = !(ya.coords() == y.coords());
  PointSet supp = ya.support();

  // Single-block identity: supp y in F gives ||y||_* = max|y_gamma| exactly.
  if (family.member(supp)) {
    Rational mx = 0;
    Point arg = supp.front();
    for (const auto& [p, v] : ya.coords())
      if (v > mx) {
        mx = v;
        arg = p;
      }
    out.lower = out.upper = mx;
    out.converged = true;
    out.lower_certificate.set(arg, 1);
    out.upper_partitions.push_back({supp});
    out.upper_parts.push_back(ya);
    return out;
  }

  detail::MaskTable tab(family, ya);
  detail::DualWorkspace ws(tab, ya);
  const std::uint32_t full = ws.full;

  // ---- numeric lower-bound search -------------------------------------
  std::set<std::vector<std::uint32_t>> partition_pool;
  auto note_partition = [&](std::vector<std::uint32_t> p) {
    std::sort(p.begin(), p.end());
    partition_pool.insert(std::move(p));
  };
  {
    std::vector<std::uint32_t> singles;
    for (unsigned i = 0; i < n; ++i) singles.push_back(std::uint32_t(1) << i);
    note_partition(singles);
  }

  double best_ratio = 0.0;
  std::vector<double> best_x(n, 0.0);
  auto consider = [&](std::vector<double> x) {
    for (auto& v : x) v = std::max(v, 0.0);
    std::vector<std::uint32_t> part;
    double ns = ws.norm_sq(x, &part);
    if (!(ns > 0)) return;
    note_partition(part);
    double dot = 0;
    for (unsigned i = 0; i < n; ++i) dot += x[i] * ws.yv[i];
    double ratio = dot / std::sqrt(ns);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      double inv = 1.0 / std::sqrt(ns);
      for (auto& v : x) v *= inv;
      best_x = x;
    }
  };

  // unit vectors and y itself
  for (unsigned i = 0; i < n; ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    consider(e);
  }
  consider(ws.yv);

  // group-constant candidates: coordinates sharing one |y| value move together
  std::vector<unsigned> group(n);
  std::vector<double> levels;
  for (unsigned i = 0; i < n; ++i) {
    auto it = std::find_if(levels.begin(), levels.end(),
                           [&](double L) { return std::abs(L - ws.yv[i]) < 1e-15; });
    if (it == levels.end()) {
      levels.push_back(ws.yv[i]);
      group[i] = static_cast<unsigned>(levels.size() - 1);
    } else {
      group[i] = static_cast<unsigned>(it - levels.begin());
    }
  }
  const unsigned G = static_cast<unsigned>(levels.size());
  {
    // cyclic golden-section ascent over group-constant vectors
    std::vector<double> g(G, 1.0);
    auto expand = [&](const std::vector<double>& gv) {
      std::vector<double> x(n);
      for (unsigned i = 0; i < n; ++i) x[i] = gv[group[i]];
      return x;
    };
    auto ratio_of = [&](const std::vector<double>& gv) {
      std::vector<double> x = expand(gv);
      double ns = ws.norm_sq(x, nullptr);
      if (!(ns > 0)) return 0.0;
      double dot = 0;
      for (unsigned i = 0; i < n; ++i) dot += x[i] * ws.yv[i];
      return dot / std::sqrt(ns);
    };
    for (unsigned sweep = 0; sweep < 6; ++sweep) {
      for (unsigned gi = 0; gi < G; ++gi) {
        double lo = 0.0, hi = 4.0;
        for (unsigned it = 0; it < 40; ++it) {
          double m1 = lo + (hi - lo) * 0.382, m2 = lo + (hi - lo) * 0.618;
          std::vector<double> a = g, b = g;
          a[gi] = m1;
          b[gi] = m2;
          if (ratio_of(a) < ratio_of(b))
            lo = m1;
          else
            hi = m2;
        }
        g[gi] = (lo + hi) / 2;
      }
    }
    consider(expand(g));
  }

  // normalized supergradient ascent from the best candidate so far
  {
    std::mt19937_64 rng(12345);
    std::vector<double> x = best_x;
    std::uint64_t iters = std::min<std::uint64_t>(iteration_budget, n <= 8 ? 2000 : 400);
    for (std::uint64_t it = 0; it < iters; ++it) {
      double eta = 0.5 / std::sqrt(static_cast<double>(it + 1));
      std::vector<double> nx = x;
      for (unsigned i = 0; i < n; ++i) nx[i] += eta * ws.yv[i];
      consider(nx);
      x = best_x;
      if (it % 50 == 49) {
        // small random restart component to escape kinks
        std::uniform_real_distribution<double> u(0.0, eta);
        for (unsigned i = 0; i < n; ++i) nx[i] = x[i] + u(rng);
        consider(nx);
        x = best_x;
      }
    }
  }

  // collect a few perturbed argmax partitions around the optimum
  {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> u(-1e-4, 1e-4);
    for (unsigned trial = 0; trial < 16; ++trial) {
      std::vector<double> x = best_x;
      for (auto& v : x) v = std::max(v + u(rng), 0.0);
      std::vector<std::uint32_t> part;
      if (ws.norm_sq(x, &part) > 0) note_partition(part);
    }
  }

  // ---- exact lower certificate ----------------------------------------
  const std::int64_t den = std::int64_t(1) << 24;
  {
    SparseVector xr(family.space());
    for (unsigned i = 0; i < n; ++i) xr.set(tab.support[i], detail::round_to_rational(best_x[i], den));
    Rational ns = xr.is_zero() ? Rational(0) : norm_sq(family, xr).norm_sq;
    if (ns > 0) {
      Rational s = sqrt_lower(Rational(1) / ns, 96);
      out.lower_certificate = s * xr;
      out.lower = out.lower_certificate.dot(ya);
    }
  }

  // ---- upper bound over the partition pool ----------------------------
  std::vector<std::vector<std::uint32_t>> parts_list(partition_pool.begin(), partition_pool.end());
  const std::size_t J = parts_list.size();
  auto block_of = [&](std::size_t j, unsigned coord) -> std::uint32_t {
    for (auto m : parts_list[j])
      if (m >> coord & 1) return m;
    return 0;
  };

  // subgradient descent on z_j >= 0 with sum_j z_j = y, objective
  // sum_j l2(block maxima of z_j)
  std::vector<std::vector<double>> z(J, std::vector<double>(n, 0.0));
  {
    // start on the best single partition
    std::size_t best_j = 0;
    double best_single = 1e300;
    for (std::size_t j = 0; j < J; ++j) {
      double s = 0;
      for (auto m : parts_list[j]) {
        double mx = 0;
        for (unsigned i = 0; i < n; ++i)
          if (m >> i & 1) mx = std::max(mx, ws.yv[i]);
        s += mx * mx;
      }
      s = std::sqrt(s);
      if (s < best_single) {
        best_single = s;
        best_j = j;
      }
    }
    z[best_j] = ws.yv;

    auto objective = [&]() {
      double total = 0;
      for (std::size_t j = 0; j < J; ++j) {
        double s = 0;
        for (auto m : parts_list[j]) {
          double mx = 0;
          for (unsigned i = 0; i < n; ++i)
            if (m >> i & 1) mx = std::max(mx, z[j][i]);
          s += mx * mx;
        }
        total += std::sqrt(s);
      }
      return total;
    };
    std::vector<std::vector<double>> bz = z;
    double bobj = objective();
    std::uint64_t iters = std::min<std::uint64_t>(iteration_budget, 4000);
    for (std::uint64_t it = 0; it < iters; ++it) {
      double eta = 0.2 * best_single / std::sqrt(static_cast<double>(it + 1));
      // subgradient: for each j, grad at argmax coordinate of each block
      std::vector<std::vector<double>> grad(J, std::vector<double>(n, 0.0));
      for (std::size_t j = 0; j < J; ++j) {
        double s = 0;
        std::vector<std::pair<unsigned, double>> arg;
        for (auto m : parts_list[j]) {
          double mx = 0;
          unsigned ai = 0;
          for (unsigned i = 0; i < n; ++i)
            if ((m >> i & 1) && z[j][i] >= mx) {
              mx = z[j][i];
              ai = i;
            }
          s += mx * mx;
          arg.push_back({ai, mx});
        }
        s = std::sqrt(s);
        if (s > 1e-300)
          for (auto [ai, mx] : arg) grad[j][ai] += mx / s;
      }
      for (std::size_t j = 0; j < J; ++j)
        for (unsigned i = 0; i < n; ++i) z[j][i] -= eta * grad[j][i];
      // project each coordinate onto {z_j(i) >= 0, sum_j z_j(i) = y_i}
      for (unsigned i = 0; i < n; ++i) {
        std::vector<double> col(J);
        for (std::size_t j = 0; j < J; ++j) col[j] = z[j][i];
        // Euclidean projection onto the scaled simplex
        std::vector<double> srt = col;
        std::sort(srt.begin(), srt.end(), std::greater<double>());
        double cum = 0, theta = 0;
        for (std::size_t j = 0; j < J; ++j) {
          cum += srt[j];
          double th = (cum - ws.yv[i]) / static_cast<double>(j + 1);
          if (j + 1 == J || srt[j + 1] <= th) {
            theta = th;
            break;
          }
        }
        for (std::size_t j = 0; j < J; ++j) z[j][i] = std::max(col[j] - theta, 0.0);
      }
      double obj = objective();
      if (obj < bobj) {
        bobj = obj;
        bz = z;
      }
    }
    z = bz;
  }

  // rationalize the decomposition; the last slot absorbs the residual so
  // the parts sum to y exactly
  {
    std::size_t sink = 0;  // index of the all-singletons partition
    for (std::size_t j = 0; j < J; ++j)
      if (parts_list[j].size() == n) sink = j;
    std::vector<SparseVector> parts(J, SparseVector(family.space()));
    for (unsigned i = 0; i < n; ++i) {
      Rational rem = ya.at(tab.support[i]);
      for (std::size_t j = 0; j < J; ++j) {
        if (j == sink) continue;
        Rational v = detail::round_to_rational(z[j][i], den);
        if (v > rem) v = rem;
        parts[j].set(tab.support[i], v);
        rem -= v;
      }
      parts[sink].set(tab.support[i], parts[sink].at(tab.support[i]) + rem);
    }
    Rational upper = 0;
    std::vector<std::vector<PointSet>> used_partitions;
    std::vector<SparseVector> used_parts;
    for (std::size_t j = 0; j < J; ++j) {
      if (parts[j].is_zero()) continue;
      Rational s = 0;
      std::vector<PointSet> blocks;
      for (auto m : parts_list[j]) {
        Rational mx = 0;
        for (unsigned i = 0; i < n; ++i)
          if (m >> i & 1) mx = std::max(mx, parts[j].at(tab.support[i]));
        s += mx * mx;
        blocks.push_back(tab.to_set(m));
      }
      upper += sqrt_upper(s, 96);
      used_partitions.push_back(std::move(blocks));
      used_parts.push_back(parts[j]);
    }
    out.upper = upper;
    out.upper_partitions = std::move(used_partitions);
    out.upper_parts = std::move(used_parts);
  }

  if (out.upper < out.lower)
    throw domain_error("dual norm bracket inverted; certificate verification failed");
  out.converged = (out.upper - out.lower) <= tol;
  return out;
}

/// Interval for the squared dual 2R renorming |||y|||^2 = ||y||_*^2 + ||y||_Day^2.
struct Interval {
  Rational lower;
  Rational upper;
  bool converged = true;
  Rational width() const { return upper - lower; }
};

inline Interval dual_triple_norm_sq(const FamilyOracle& family, const SparseVector& y,
                                    const Rational& tol = Rational(1, 1000000)) {
  if (y.is_zero()) return {0, 0, true};
  DualResult d = dual_norm(family, y, tol);
  Rational day = day_norm_sq(y);
  return {d.lower * d.lower + day, d.upper * d.upper + day, d.converged};
}

}  // namespace baernstein

#endif  // BAERNSTEIN_DUAL_HPP
