#ifndef BAERNSTEIN_ORDINAL_HPP
#define BAERNSTEIN_ORDINAL_HPP

#include "baernstein/rational.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace baernstein {

/// Ordinals below w^w in Cantor normal form: a list of (exponent,
/// coefficient) terms with strictly decreasing exponents and positive
/// coefficients. The empty list is 0. Canonical by construction, so
/// equality is term-list equality.
class Ordinal {
public:
  using Term = std::pair<std::uint64_t, std::uint64_t>;  // (exponent, coefficient)

  Ordinal() = default;

  explicit Ordinal(std::vector<Term> terms) : terms_(std::move(terms)) {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].second == 0) throw domain_error("ordinal term with zero coefficient");
      if (i + 1 < terms_.size() && terms_[i].first <= terms_[i + 1].first)
        throw domain_error("ordinal exponents not strictly decreasing");
    }
  }

  static Ordinal finite(std::uint64_t n) {
    if (n == 0) return Ordinal();
    return Ordinal({{0, n}});
  }
  static Ordinal omega() { return Ordinal({{1, 1}}); }

  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_successor() const { return !terms_.empty() && terms_.back().first == 0; }
  bool is_limit() const { return !terms_.empty() && terms_.back().first >= 1; }

  /// Decrements the trailing coefficient; only defined for successors.
  Ordinal predecessor() const {
    if (!is_successor()) throw domain_error("predecessor of a non-successor ordinal");
    std::vector<Term> t = terms_;
    if (--t.back().second == 0) t.pop_back();
    return Ordinal(std::move(t));
  }

  /// Canonical fundamental sequence for a limit ordinal a = prefix + w^e*c
  /// (e >= 1): a_r = prefix + w^e*(c-1) + w^(e-1)*r, strictly increasing in
  /// r with supremum a. In particular w_r = r and (w^2)_r = w*r.
  Ordinal fundamental_sequence(std::uint64_t r) const {
    if (!is_limit()) throw domain_error("fundamental sequence of a non-limit ordinal");
    if (r < 1) throw domain_error("fundamental sequence index must be >= 1");
    std::vector<Term> t = terms_;
    auto [e, c] = t.back();
    t.pop_back();
    if (c > 1) t.push_back({e, c - 1});
    t.push_back({e - 1, r});
    return Ordinal(std::move(t));
  }

  /// Lexicographic comparison on term lists = ordinal order in CNF.
  std::strong_ordering operator<=>(const Ordinal& other) const {
    const auto& a = terms_;
    const auto& b = other.terms_;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
      if (auto c = a[i].first <=> b[i].first; c != 0) return c;
      if (auto c = a[i].second <=> b[i].second; c != 0) return c;
    }
    return a.size() <=> b.size();
  }
  bool operator==(const Ordinal& other) const { return terms_ == other.terms_; }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
      if (!out.empty()) out += "+";
      if (e == 0) {
        out += std::to_string(c);
      } else if (e == 1) {
        out += "w*" + std::to_string(c);
      } else {
        out += "w^" + std::to_string(e) + "*" + std::to_string(c);
      }
    }
    return out;
  }

private:
  std::vector<Term> terms_;
};

/// Grammar: `0` | term (`+` term)*, term = `w^E*C` | `w*C` | `w^E` | `w` | `C`.
/// Exponents must be strictly decreasing across terms.
inline Ordinal parse_ordinal(const std::string& text) {
  if (text.empty()) throw domain_error("empty ordinal literal");
  if (text == "0") return Ordinal();
  std::vector<Ordinal::Term> terms;
  std::size_t pos = 0;
  auto read_nat = [&](const char* what) -> std::uint64_t {
    std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start) throw domain_error(std::string("ordinal literal: expected ") + what +
                                         " at position " + std::to_string(start) + " in '" + text + "'");
    return std::stoull(text.substr(start, pos - start));
  };
  for (;;) {
    std::uint64_t e = 0, c = 0;
    if (pos < text.size() && text[pos] == 'w') {
      ++pos;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        e = read_nat("exponent");
      } else {
        e = 1;
      }
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        c = read_nat("coefficient");
      } else {
        c = 1;
      }
    } else {
      e = 0;
      c = read_nat("coefficient");
    }
    if (c == 0) throw domain_error("ordinal term with zero coefficient in '" + text + "'");
    if (!terms.empty() && terms.back().first <= e)
      throw domain_error("ordinal exponents not strictly decreasing in '" + text + "'");
    terms.push_back({e, c});
    if (pos == text.size()) break;
    if (text[pos] != '+')
      throw domain_error("ordinal literal: unexpected character '" + std::string(1, text[pos]) +
                         "' in '" + text + "'");
    ++pos;
  }
  return Ordinal(std::move(terms));
}

}  // namespace baernstein

#endif  // BAERNSTEIN_ORDINAL_HPP
