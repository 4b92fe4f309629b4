#ifndef BAERNSTEIN_PRIMAL_HPP
#define BAERNSTEIN_PRIMAL_HPP

#include "baernstein/family.hpp"
#include "baernstein/sparse_vector.hpp"

#include <bit>
#include <cstdint>
#include <vector>

namespace baernstein {

/// Norm value (exact squared rational) plus the optimal disjoint family.
struct NormResult {
  Rational norm_sq;
  std::vector<PointSet> certificate;
};

/// |(x; F_1,...,F_n)|_2^2 = sum of squared *signed* block sums. Callers
/// evaluating the Baernstein norm pass |x|.
inline Rational block_functional_sq(const SparseVector& x,
                                    const std::vector<PointSet>& blocks) {
  std::set<Point> seen;
  Rational total = 0;
  for (const auto& f : blocks) {
    Rational s = 0;
    for (const auto& p : f) {
      if (!seen.insert(p).second)
        throw domain_error("block functional: sets overlap at " + p.str());
      s += x.at(p);
    }
    total += s * s;
  }
  return total;
}

namespace detail {

// Lexicographic order on blocks viewed as ascending point-index sequences.
inline bool block_less(std::uint32_t a, std::uint32_t b) {
  std::uint32_t d = a ^ b;
  if (d == 0) return false;
  unsigned low = static_cast<unsigned>(std::countr_zero(d));
  bool a_holds = (a >> low) & 1;
  std::uint32_t other = a_holds ? b : a;
  bool other_continues = (other >> low) != 0;
  // holder has the smaller element at the first difference, unless the
  // other sequence is a proper prefix
  return a_holds ? other_continues : !other_continues;
}

inline bool cert_less(const std::vector<std::uint32_t>& a,
                      const std::vector<std::uint32_t>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (block_less(a[i], b[i])) return true;
    if (block_less(b[i], a[i])) return false;
  }
  return a.size() < b.size();
}

struct MaskTable {
  PointSet support;
  std::vector<Rational> value;      // |x_gamma| per support index
  std::vector<Rational> s1;         // block l1 sums per mask
  std::vector<char> admissible;     // family membership per mask

  MaskTable(const FamilyOracle& family, const SparseVector& x) {
    SparseVector ax = x.abs();
    support = ax.support();
    const unsigned n = static_cast<unsigned>(support.size());
    if (n >= 31) throw domain_error("support too large for mask table");
    const std::uint32_t size = std::uint32_t(1) << n;
    for (const auto& p : support) value.push_back(ax.at(p));
    s1.assign(size, Rational(0));
    admissible.assign(size, 0);
    for (std::uint32_t mask = 1; mask < size; ++mask) {
      unsigned low = static_cast<unsigned>(std::countr_zero(mask));
      s1[mask] = s1[mask & (mask - 1)] + value[low];
      if (std::popcount(mask) == 1) {
        admissible[mask] = 1;
      } else {
        PointSet sub;
        for (unsigned i = 0; i < n; ++i)
          if (mask >> i & 1) sub.push_back(support[i]);
        admissible[mask] = family.member(sub) ? 1 : 0;
      }
    }
  }

  PointSet to_set(std::uint32_t mask) const {
    PointSet out;
    for (unsigned i = 0; i < support.size(); ++i)
      if (mask >> i & 1) out.push_back(support[i]);
    return out;
  }
};

}  // namespace detail

/// Exact sup of Eq.-style block sums over disjoint families of family
/// members, by subset DP on the trace over supp x. Deterministic: among
/// optima the lexicographically least certificate is returned.
inline NormResult norm_sq(const FamilyOracle& family, const SparseVector& x) {
  if (x.is_zero()) return {Rational(0), {}};
  if (!(x.space() == family.space()))
    throw domain_error("vector space does not match the family's space");
  const unsigned n = static_cast<unsigned>(x.support_size());
  if (n > family.guards().max_support)
    throw domain_error("norm support guard exceeded: " + std::to_string(n) + " > " +
                       std::to_string(family.guards().max_support));
  detail::MaskTable tab(family, x);
  const std::uint32_t full = (std::uint32_t(1) << n) - 1;

  std::vector<Rational> best(full + 1, Rational(0));
  std::vector<std::vector<std::uint32_t>> cert(full + 1);

  if (!family.spec().ordered) {
    // best[S] = max over admissible T <= S containing min S of l1(T)^2 + best[S\T];
    // singletons make a full partition optimal.
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      unsigned low = static_cast<unsigned>(std::countr_zero(mask));
      std::uint32_t rest = mask & (mask - 1);
      bool have = false;
      for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
        std::uint32_t t = sub | (std::uint32_t(1) << low);
        if (tab.admissible[t]) {
          Rational cand = tab.s1[t] * tab.s1[t] + best[mask ^ t];
          bool take = false;
          if (!have || cand > best[mask]) {
            take = true;
          } else if (cand == best[mask]) {
            std::vector<std::uint32_t> cc;
            cc.push_back(t);
            cc.insert(cc.end(), cert[mask ^ t].begin(), cert[mask ^ t].end());
            take = detail::cert_less(cc, cert[mask]);
          }
          if (take) {
            best[mask] = std::move(cand);
            cert[mask].clear();
            cert[mask].push_back(t);
            cert[mask].insert(cert[mask].end(), cert[mask ^ t].begin(), cert[mask ^ t].end());
            have = true;
          }
        }
        if (sub == 0) break;
      }
    }
    NormResult out;
    out.norm_sq = best[full];
    for (auto m : cert[full]) out.certificate.push_back(tab.to_set(m));
    return out;
  }

  // Ordered-blocks variant: blocks satisfy max F_i < min F_{i+1}; skipped
  // points stay uncovered. Suffix DP over the sorted support.
  std::vector<Rational> f(n + 1, Rational(0));
  std::vector<std::vector<std::uint32_t>> fc(n + 1);
  for (int i = static_cast<int>(n) - 1; i >= 0; --i) {
    f[i] = f[i + 1];
    fc[i] = fc[i + 1];
    std::uint32_t suffix_rest = (full >> (i + 1)) << (i + 1);
    for (std::uint32_t sub = suffix_rest;; sub = (sub - 1) & suffix_rest) {
      std::uint32_t t = sub | (std::uint32_t(1) << i);
      if (tab.admissible[t]) {
        unsigned next = std::bit_width(t);  // first index past max(T)
        Rational cand = tab.s1[t] * tab.s1[t] + f[next];
        bool take = false;
        if (cand > f[i]) {
          take = true;
        } else if (cand == f[i]) {
          std::vector<std::uint32_t> cc;
          cc.push_back(t);
          cc.insert(cc.end(), fc[next].begin(), fc[next].end());
          take = detail::cert_less(cc, fc[i]);
        }
        if (take) {
          f[i] = std::move(cand);
          fc[i].clear();
          fc[i].push_back(t);
          fc[i].insert(fc[i].end(), fc[next].begin(), fc[next].end());
        }
      }
      if (sub == 0) break;
    }
  }
  NormResult out;
  out.norm_sq = f[0];
  for (auto m : fc[0]) out.certificate.push_back(tab.to_set(m));
  return out;
}

/// Independent oracle: exhaustively enumerates every disjoint family of
/// admissible subsets of supp x and evaluates the block functional on |x|.
inline NormResult norm_sq_bruteforce(const FamilyOracle& family, const SparseVector& x) {
  if (x.is_zero()) return {Rational(0), {}};
  if (!(x.space() == family.space()))
    throw domain_error("vector space does not match the family's space");
  const unsigned n = static_cast<unsigned>(x.support_size());
  if (n > family.guards().max_support_oracle)
    throw domain_error("brute-force support guard exceeded: " + std::to_string(n) + " > " +
                       std::to_string(family.guards().max_support_oracle));
  detail::MaskTable tab(family, x);
  const std::uint32_t full = (std::uint32_t(1) << n) - 1;
  const bool ordered = family.spec().ordered;
  SparseVector ax = x.abs();

  NormResult best{Rational(0), {}};
  std::vector<std::uint32_t> blocks;
  auto evaluate = [&]() {
    std::vector<PointSet> fam;
    for (auto m : blocks) fam.push_back(tab.to_set(m));
    Rational v = block_functional_sq(ax, fam);
    if (v > best.norm_sq) best = {v, fam};
  };
  // prev_max_bit = one past the highest covered index of the last block
  auto rec = [&](auto&& self, std::uint32_t remaining, unsigned prev_end) -> void {
    if (remaining == 0) {
      evaluate();
      return;
    }
    unsigned low = static_cast<unsigned>(std::countr_zero(remaining));
    std::uint32_t low_bit = std::uint32_t(1) << low;
    self(self, remaining ^ low_bit, prev_end);  // leave low uncovered
    if (ordered && low < prev_end) return;
    std::uint32_t rest = remaining ^ low_bit;
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      std::uint32_t t = sub | low_bit;
      if (tab.admissible[t]) {
        blocks.push_back(t);
        self(self, remaining ^ t, ordered ? std::bit_width(t) : prev_end);
        blocks.pop_back();
      }
      if (sub == 0) break;
    }
  };
  rec(rec, full, 0);
  return best;
}

}  // namespace baernstein

#endif  // BAERNSTEIN_PRIMAL_HPP
