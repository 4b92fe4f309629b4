#ifndef BAERNSTEIN_JSON_IO_HPP
#define BAERNSTEIN_JSON_IO_HPP

#include "baernstein/dual.hpp"
#include "baernstein/family.hpp"
#include "baernstein/norming.hpp"
#include "baernstein/primal.hpp"
#include "baernstein/sparse_vector.hpp"

#include <json.hpp>

#include <string>

namespace baernstein {

using nlohmann::json;

inline json point_to_json(const Point& p) {
  if (!p.is_tuple()) return json(p.nat);
  json arr = json::array();
  for (auto c : p.coords) arr.push_back(c);
  return arr;
}

inline Point point_from_json(const json& j) {
  if (j.is_number_unsigned() || j.is_number_integer())
    return Point::natural(j.get<std::uint64_t>());
  if (j.is_array()) {
    std::vector<std::uint32_t> coords;
    for (const auto& c : j) coords.push_back(c.get<std::uint32_t>());
    return Point::tuple(std::move(coords));
  }
  throw domain_error("point must be an integer or an array of naturals");
}

inline json set_to_json(const PointSet& a) {
  json arr = json::array();
  for (const auto& p : a) arr.push_back(point_to_json(p));
  return arr;
}

inline PointSet set_from_json(const json& j) {
  PointSet a;
  for (const auto& p : j) a.push_back(point_from_json(p));
  canonicalize(a);
  return a;
}

inline json space_to_json(const Space& s) {
  if (s.kind == Space::Kind::naturals) return json{{"kind", "naturals"}};
  json j{{"kind", "tuples"}, {"depth", s.depth}};
  if (s.alphabet)
    j["alphabet"] = s.alphabet;
  else
    j["alphabet"] = "unbounded";
  return j;
}

inline Space space_from_json(const json& j) {
  Space s;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "naturals") {
    s.kind = Space::Kind::naturals;
  } else if (kind == "tuples") {
    s.kind = Space::Kind::tuples;
    s.depth = j.at("depth").get<unsigned>();
    if (s.depth < 1) throw domain_error("tuple space depth must be >= 1");
    if (j.contains("alphabet") && !j["alphabet"].is_string())
      s.alphabet = j["alphabet"].get<unsigned>();
  } else {
    throw domain_error("unknown space kind '" + kind + "'");
  }
  return s;
}

/// {"kind":"schreier1"|"explicit"|"transfinite", "alpha":"w*1+2", "k":2,
///  "depth":4, "alphabet":3|"unbounded", "kt":bool, "ordered":bool,
///  "sets":[[...]]}
inline FamilySpec family_spec_from_json(const json& j) {
  FamilySpec spec;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "schreier1") {
    spec.kind = FamilySpec::Kind::schreier1;
    spec.space.kind = Space::Kind::naturals;
  } else if (kind == "explicit") {
    spec.kind = FamilySpec::Kind::explicit_listing;
    spec.space.kind = Space::Kind::naturals;
    for (const auto& s : j.at("sets")) spec.sets.push_back(set_from_json(s));
  } else if (kind == "transfinite") {
    spec.kind = FamilySpec::Kind::transfinite;
    spec.alpha = parse_ordinal(j.at("alpha").get<std::string>());
    spec.space.kind = Space::Kind::tuples;
    spec.space.depth = j.at("depth").get<unsigned>();
    if (j.contains("alphabet") && !j["alphabet"].is_string())
      spec.space.alphabet = j["alphabet"].get<unsigned>();
  } else {
    throw domain_error("unknown family kind '" + kind + "'");
  }
  if (j.contains("k")) spec.k = j["k"].get<unsigned>();
  if (j.contains("kt")) spec.kt = j["kt"].get<bool>();
  if (j.contains("ordered")) spec.ordered = j["ordered"].get<bool>();
  return spec;
}

inline json family_spec_to_json(const FamilySpec& spec) {
  json j;
  switch (spec.kind) {
    case FamilySpec::Kind::schreier1:
      j["kind"] = "schreier1";
      break;
    case FamilySpec::Kind::explicit_listing: {
      j["kind"] = "explicit";
      json sets = json::array();
      for (const auto& s : spec.sets) sets.push_back(set_to_json(s));
      j["sets"] = sets;
      break;
    }
    case FamilySpec::Kind::transfinite:
      j["kind"] = "transfinite";
      j["alpha"] = spec.alpha.str();
      j["depth"] = spec.space.depth;
      j["alphabet"] = spec.space.alphabet ? json(spec.space.alphabet) : json("unbounded");
      break;
  }
  j["k"] = spec.k;
  j["kt"] = spec.kt;
  j["ordered"] = spec.ordered;
  return j;
}

/// {"space":{...}, "coords":[{"point":4,"value":"3/2"}, ...]}
inline SparseVector vector_from_json(const json& j) {
  SparseVector x(space_from_json(j.at("space")));
  for (const auto& c : j.at("coords"))
    x.set(point_from_json(c.at("point")), parse_rational(c.at("value").get<std::string>()));
  return x;
}

inline json vector_to_json(const SparseVector& x) {
  json coords = json::array();
  for (const auto& [p, v] : x.coords())
    coords.push_back({{"point", point_to_json(p)}, {"value", format_rational(v)}});
  return json{{"space", space_to_json(x.space())}, {"coords", coords}};
}

inline json norm_result_to_json(const NormResult& r, unsigned digits = 12) {
  json cert = json::array();
  for (const auto& f : r.certificate) cert.push_back(set_to_json(f));
  return json{{"norm_sq", format_rational(r.norm_sq)},
              {"norm_sq_decimal", format_decimal(r.norm_sq, digits)},
              {"norm_decimal", format_decimal(sqrt_lower(r.norm_sq, 96), digits)},
              {"certificate", cert}};
}

inline json dual_result_to_json(const DualResult& d, unsigned digits = 12) {
  return json{{"lower", format_rational(d.lower)},
              {"upper", format_rational(d.upper)},
              {"value_decimal", format_decimal(d.value(), digits)},
              {"gap", format_decimal(d.gap(), digits)},
              {"converged", d.converged},
              {"sign_flipped", d.sign_flipped},
              {"lower_certificate", vector_to_json(d.lower_certificate)}};
}

/// {"blocks":[{"sign":1,"coeff":"1/2","set":[...]}],"scale_sq":"1/1","dyadic":true}
inline json functional_to_json(const NormingFunctional& f) {
  json blocks = json::array();
  for (const auto& b : f.blocks)
    blocks.push_back({{"sign", b.sign}, {"coeff", format_rational(b.coeff)},
                      {"set", set_to_json(b.set)}});
  return json{{"blocks", blocks}, {"scale_sq", format_rational(f.scale_sq)},
              {"dyadic", f.dyadic}};
}

inline NormingFunctional functional_from_json(const json& j) {
  NormingFunctional f;
  for (const auto& b : j.at("blocks")) {
    FunctionalBlock blk;
    blk.sign = b.at("sign").get<int>();
    blk.coeff = parse_rational(b.at("coeff").get<std::string>());
    blk.set = set_from_json(b.at("set"));
    f.blocks.push_back(std::move(blk));
  }
  if (j.contains("scale_sq")) f.scale_sq = parse_rational(j["scale_sq"].get<std::string>());
  if (j.contains("dyadic")) f.dyadic = j["dyadic"].get<bool>();
  return f;
}

}  // namespace baernstein

#endif  // BAERNSTEIN_JSON_IO_HPP
