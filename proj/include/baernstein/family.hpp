#ifndef BAERNSTEIN_FAMILY_HPP
#define BAERNSTEIN_FAMILY_HPP

#include "baernstein/config.hpp"
#include "baernstein/ordinal.hpp"
#include "baernstein/rational.hpp"

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <mutex>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace baernstein {

/// Ground-set descriptor shared by all Points of one vector space.
struct Space {
  enum class Kind { naturals, tuples };
  Kind kind = Kind::naturals;
  unsigned depth = 0;     // tuples: fixed tuple length D >= 1
  unsigned alphabet = 0;  // tuples: coordinates in 1..alphabet; 0 = unbounded

  bool operator==(const Space&) const = default;
};

/// A ground-set element: a positive natural, or a depth-D tuple of naturals
/// (a truncated branch of S^N).
struct Point {
  std::uint64_t nat = 0;
  std::vector<std::uint32_t> coords;  // empty for natural points

  static Point natural(std::uint64_t n) { return Point{n, {}}; }
  static Point tuple(std::vector<std::uint32_t> c) { return Point{0, std::move(c)}; }

  bool is_tuple() const { return !coords.empty(); }

  auto operator<=>(const Point&) const = default;

  std::string str() const {
    if (!is_tuple()) return std::to_string(nat);
    std::string out = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(coords[i]);
    }
    return out + ")";
  }
};

using PointSet = std::vector<Point>;  // kept sorted and duplicate-free

inline void canonicalize(PointSet& a) {
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
}

inline void validate_point(const Space& space, const Point& p) {
  if (space.kind == Space::Kind::naturals) {
    if (p.is_tuple()) throw domain_error("tuple point in a naturals space");
    if (p.nat < 1) throw domain_error("natural point must be >= 1");
  } else {
    if (!p.is_tuple()) throw domain_error("natural point in a tuple space");
    if (p.coords.size() != space.depth)
      throw domain_error("tuple point of depth " + std::to_string(p.coords.size()) +
                         " in a depth-" + std::to_string(space.depth) + " space");
    for (auto c : p.coords) {
      if (c < 1) throw domain_error("tuple coordinates must be >= 1");
      if (space.alphabet && c > space.alphabet)
        throw domain_error("tuple coordinate exceeds alphabet size");
    }
  }
}

/// p(1)=1 and p(i) in {1,...,i-1} for i >= 2.
inline bool branch_valid(const Point& p) {
  if (!p.is_tuple()) return false;
  if (p.coords[0] != 1) return false;
  for (std::size_t i = 1; i < p.coords.size(); ++i)
    if (p.coords[i] > i) return false;
  return true;
}

/// First disagreement index (1-based) of two distinct tuple points.
inline unsigned distance(const Point& p, const Point& q) {
  if (!p.is_tuple() || !q.is_tuple())
    throw domain_error("distance is defined for tuple points only");
  if (p.coords.size() != q.coords.size())
    throw domain_error("distance between points of different depth");
  for (std::size_t i = 0; i < p.coords.size(); ++i)
    if (p.coords[i] != q.coords[i]) return static_cast<unsigned>(i + 1);
  throw domain_error("distance of a point from itself is undefined");
}

/// A^# = min pairwise distance over a set of at least two tuple points.
inline unsigned sharp(const PointSet& a) {
  if (a.size() < 2) throw domain_error("sharp of a set with fewer than 2 points");
  unsigned best = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      unsigned d = distance(a[i], a[j]);
      if (best == 0 || d < best) best = d;
    }
  return best;
}

/// Declarative description of a compact hereditary family.
struct FamilySpec {
  enum class Kind { explicit_listing, schreier1, transfinite };
  Kind kind = Kind::schreier1;
  Ordinal alpha;                      // transfinite only
  unsigned k = 1;                     // superscript; trivial k=1 for naturals kinds
  bool kt = false;                    // KT branch constraint + sharp >= 3
  bool ordered = false;               // ordered-blocks norm variant (naturals only)
  std::vector<PointSet> sets;         // explicit listing

  Space space;  // the ground-set descriptor this family lives on
};

struct ValidationReport {
  bool hereditary = true;
  bool singletons = true;
  // (subset, superset) pairs where the superset is listed but the subset is not
  std::vector<std::pair<PointSet, PointSet>> hereditary_violations;
  std::vector<Point> missing_singletons;
  bool ok() const { return hereditary && singletons; }
};

/// Checks closure under subsets and presence of the empty set and all
/// singletons of the ground set.
inline ValidationReport validate_explicit(const std::vector<PointSet>& listing,
                                          const PointSet& ground) {
  ValidationReport rep;
  std::set<PointSet> have(listing.begin(), listing.end());
  for (const Point& p : ground) {
    if (!have.count({p})) {
      rep.singletons = false;
      rep.missing_singletons.push_back(p);
    }
  }
  if (!have.count({})) rep.singletons = false;
  for (const PointSet& f : listing) {
    // all one-element-removed subsets; closure under those gives full heredity
    for (std::size_t i = 0; i < f.size(); ++i) {
      PointSet g = f;
      g.erase(g.begin() + i);
      if (!have.count(g)) {
        rep.hereditary = false;
        rep.hereditary_violations.push_back({g, f});
      }
    }
  }
  return rep;
}

/// Membership oracle for one FamilySpec, with a memo table for the
/// transfinite recursion. Thread-safe; results independent of interleaving.
class FamilyOracle {
public:
  explicit FamilyOracle(FamilySpec spec, Guards guards = {})
      : spec_(std::move(spec)), guards_(guards) {
    if (spec_.k < 1) throw domain_error("family superscript k must be >= 1");
    if (spec_.kind == FamilySpec::Kind::transfinite) {
      if (spec_.space.kind != Space::Kind::tuples)
        throw domain_error("transfinite families require a tuple space");
    } else {
      if (spec_.space.kind != Space::Kind::naturals)
        throw domain_error("schreier1/explicit families require a naturals space");
      if (spec_.k != 1)
        throw domain_error("superscript k applies to tuple-space families only");
    }
    if (spec_.ordered && spec_.space.kind != Space::Kind::naturals)
      throw domain_error("ordered blocks apply to naturals ground sets only");
    if (spec_.kind == FamilySpec::Kind::explicit_listing) {
      for (auto& s : spec_.sets) canonicalize(s);
      for (const auto& s : spec_.sets) {
        for (const auto& p : s) validate_point(spec_.space, p);
        ground_.insert(ground_.end(), s.begin(), s.end());
      }
      canonicalize(ground_);
      auto rep = validate_explicit(spec_.sets, ground_);
      if (!rep.ok()) throw domain_error("explicit listing is not a valid family "
                                        "(hereditary/singleton check failed)");
      listed_.insert(spec_.sets.begin(), spec_.sets.end());
    }
  }

  const FamilySpec& spec() const { return spec_; }
  const Space& space() const { return spec_.space; }
  const Guards& guards() const { return guards_; }

  /// Decides A in F^(k) for the base family F of the spec.
  bool member(PointSet a) const {
    canonicalize(a);
    if (a.size() > guards_.max_ground)
      throw domain_error("membership guard exceeded: |A| = " + std::to_string(a.size()) +
                         " > " + std::to_string(guards_.max_ground));
    for (const auto& p : a) validate_point(spec_.space, p);
    if (spec_.kt)
      for (const auto& p : a)
        if (!branch_valid(p)) throw domain_error("point " + p.str() + " is not branch-valid");
    if (spec_.kind == FamilySpec::Kind::explicit_listing)
      for (const auto& p : a)
        if (!std::binary_search(ground_.begin(), ground_.end(), p))
          throw domain_error("point " + p.str() + " is not in the declared ground set");
    if (a.size() <= 1) return true;
    switch (spec_.kind) {
      case FamilySpec::Kind::schreier1:
        return a.size() <= a.front().nat;  // |A| <= min A
      case FamilySpec::Kind::explicit_listing:
        return listed_.count(a) > 0;
      case FamilySpec::Kind::transfinite: {
        unsigned s = sharp(a);
        unsigned keff = spec_.k;
        if (spec_.kt && keff < 3) keff = 3;
        if (s < keff) return false;
        return plain_member(spec_.alpha, a);
      }
    }
    return false;
  }

  /// Membership in the plain family F_alpha (no superscript), |A| >= 2.
  bool plain_member(const Ordinal& alpha, const PointSet& a) const {
    if (alpha.is_zero()) return false;
    std::string key = alpha.str() + "|" + encode(a);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    unsigned m = sharp(a);
    bool result;
    if (alpha.is_successor()) {
      if (a.size() <= m) {
        result = true;  // partition into singletons
      } else {
        result = min_parts(alpha.predecessor(), a) <= m;
      }
    } else {
      // limit: A in F_{alpha_r} with A^# >= r; only r <= A^# can succeed
      result = false;
      for (unsigned r = m; r >= 1; --r) {
        if (plain_member(alpha.fundamental_sequence(r), a)) {
          result = true;
          break;
        }
      }
    }
    std::lock_guard<std::mutex> lock(mutex_);
    memo_.emplace(std::move(key), result);
    return result;
  }

  /// All subsets of `ground` belonging to the family.
  std::vector<PointSet> trace(PointSet ground) const {
    canonicalize(ground);
    if (ground.size() > guards_.max_ground)
      throw domain_error("trace guard exceeded: |ground| = " + std::to_string(ground.size()));
    std::size_t n = ground.size();
    std::vector<PointSet> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
      PointSet a;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) a.push_back(ground[i]);
      if (member(a)) out.push_back(std::move(a));
    }
    return out;
  }

private:
  // Minimum number of nonempty F_beta parts in a partition of A;
  // bitmask DP over subsets of A (|A| <= max_ground <= 12).
  unsigned min_parts(const Ordinal& beta, const PointSet& a) const {
    const unsigned n = static_cast<unsigned>(a.size());
    const std::uint32_t full = (n >= 32) ? 0 : ((std::uint32_t(1) << n) - 1);
    const unsigned INF = n + 1;
    std::vector<unsigned> mp(full + 1, INF);
    mp[0] = 0;
    auto part_ok = [&](std::uint32_t mask) {
      if (std::popcount(mask) <= 1) return true;
      PointSet sub;
      for (unsigned i = 0; i < n; ++i)
        if (mask >> i & 1) sub.push_back(a[i]);
      return plain_member(beta, sub);
    };
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      unsigned low = static_cast<unsigned>(std::countr_zero(mask));
      // iterate submasks containing the lowest set bit
      std::uint32_t rest = mask & (mask - 1);
      for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
        std::uint32_t t = sub | (std::uint32_t(1) << low);
        if (mp[mask ^ t] + 1 < mp[mask] && part_ok(t))
          mp[mask] = mp[mask ^ t] + 1;
        if (sub == 0) break;
      }
    }
    return mp[full];
  }

  static std::string encode(const PointSet& a) {
    std::string out;
    for (const auto& p : a) {
      out += p.str();
      out += ';';
    }
    return out;
  }

  FamilySpec spec_;
  Guards guards_;
  PointSet ground_;              // explicit kind
  std::set<PointSet> listed_;    // explicit kind
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, bool> memo_;
};

}  // namespace baernstein

#endif  // BAERNSTEIN_FAMILY_HPP
