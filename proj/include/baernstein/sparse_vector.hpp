#ifndef BAERNSTEIN_SPARSE_VECTOR_HPP
#define BAERNSTEIN_SPARSE_VECTOR_HPP

#include "baernstein/family.hpp"
#include "baernstein/rational.hpp"

#include <map>
#include <vector>

namespace baernstein {

/// Finitely supported vector: a finite map Point -> exact rational.
/// Zero entries are never stored.
class SparseVector {
public:
  SparseVector() = default;
  explicit SparseVector(Space space) : space_(space) {}

  const Space& space() const { return space_; }
  const std::map<Point, Rational>& coords() const { return coords_; }

  void set(const Point& p, const Rational& value) {
    validate_point(space_, p);
    if (value == 0)
      coords_.erase(p);
    else
      coords_[p] = value;
  }

  Rational at(const Point& p) const {
    auto it = coords_.find(p);
    return it == coords_.end() ? Rational(0) : it->second;
  }

  PointSet support() const {
    PointSet s;
    s.reserve(coords_.size());
    for (const auto& [p, v] : coords_) s.push_back(p);
    return s;  // map order == sorted
  }

  std::size_t support_size() const { return coords_.size(); }
  bool is_zero() const { return coords_.empty(); }

  SparseVector abs() const {
    SparseVector out(space_);
    for (const auto& [p, v] : coords_) out.coords_[p] = v < 0 ? -v : v;
    return out;
  }

  Rational l2_sq() const {
    Rational s = 0;
    for (const auto& [p, v] : coords_) s += v * v;
    return s;
  }

  Rational l1() const {
    Rational s = 0;
    for (const auto& [p, v] : coords_) s += v < 0 ? -v : v;
    return s;
  }

  friend SparseVector operator+(const SparseVector& a, const SparseVector& b) {
    if (!(a.space_ == b.space_) && !a.is_zero() && !b.is_zero())
      throw domain_error("adding vectors from different spaces");
    SparseVector out = a.is_zero() ? SparseVector(b.space_) : a;
    for (const auto& [p, v] : b.coords_) out.set(p, out.at(p) + v);
    return out;
  }

  friend SparseVector operator*(const Rational& c, const SparseVector& a) {
    SparseVector out(a.space_);
    if (c == 0) return out;
    for (const auto& [p, v] : a.coords_) out.coords_[p] = c * v;
    return out;
  }

  bool disjoint_from(const SparseVector& b) const {
    for (const auto& [p, v] : coords_)
      if (b.coords_.count(p)) return false;
    return true;
  }

  /// Max pairwise first-disagreement distance over the support (tuple
  /// spaces); 0 when the support has fewer than two points.
  unsigned max_pairwise_distance() const {
    PointSet s = support();
    unsigned best = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j)
        best = std::max(best, distance(s[i], s[j]));
    return best;
  }

  Rational dot(const SparseVector& b) const {
    Rational s = 0;
    for (const auto& [p, v] : coords_) s += v * b.at(p);
    return s;
  }

private:
  Space space_;
  std::map<Point, Rational> coords_;
};

}  // namespace baernstein

#endif  // BAERNSTEIN_SPARSE_VECTOR_HPP
