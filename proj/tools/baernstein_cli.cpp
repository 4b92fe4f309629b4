// Command-line front end: every numeric result is emitted as an exact
// rational plus a presentation decimal, and identical invocations produce
// byte-identical output.
#include "baernstein/json_io.hpp"
#include "baernstein/norming.hpp"
#include "baernstein/probes.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>

using namespace baernstein;

namespace {

// Accepts inline JSON or a path to a JSON file.
json load_json(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] != '{' && arg[0] != '[') {
    std::ifstream in(arg);
    if (!in) throw domain_error("cannot open file '" + arg + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw domain_error("invalid JSON in '" + arg + "'");
  return j;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << std::endl;
  } else {
    std::ofstream out(out_path);
    if (!out) throw domain_error("cannot write '" + out_path + "'");
    out << j.dump(2) << "\n";
  }
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw domain_error("cannot write '" + out_path + "'");
    out << text;
  }
}

struct Options {
  std::string family_arg;
  std::string vector_arg;
  std::string dual_vector_arg;
  std::string functional_arg;
  std::string set_arg;
  std::string alpha = "1";
  unsigned k = 1;
  unsigned depth = 3;
  std::string alphabet = "unbounded";
  bool ordered = false;
  bool kt = false;
  unsigned min_terms = 0;
  std::string tol = "1/1000000";
  std::string scenario;
  std::string delta = "1";
  unsigned n_max = 6;
  unsigned trials = 100;
  std::uint64_t seed = 7;
  unsigned digits = 12;
  std::string out_path;
  Guards guards;
};

Guards parse_guards(const Options& opt) {
  Guards g = opt.guards;
  if (g.max_ground == 0 || g.max_support == 0) throw domain_error("guards must be positive");
  return g;
}

FamilyOracle make_family(const Options& opt, const char* fallback = nullptr) {
  std::string arg = opt.family_arg;
  if (arg.empty()) {
    if (!fallback) throw domain_error("--family is required");
    arg = fallback;
  }
  return FamilyOracle(family_spec_from_json(load_json(arg)), parse_guards(opt));
}

SparseVector load_vector(const std::string& arg) {
  if (arg.empty()) throw domain_error("--vector is required");
  return vector_from_json(load_json(arg));
}

Space tuple_space_of(const Options& opt) {
  Space sp;
  sp.kind = Space::Kind::tuples;
  sp.depth = opt.depth;
  sp.alphabet = (opt.alphabet == "unbounded") ? 0 : static_cast<unsigned>(std::stoul(opt.alphabet));
  return sp;
}

Rational parse_tol(const Options& opt) {
  Rational tol = parse_rational(opt.tol);
  if (tol <= 0 || tol >= 1) throw domain_error("tol must be in (0,1)");
  return tol;
}

json interval_to_json(const Interval& v, unsigned digits) {
  return json{{"lower", format_rational(v.lower)},
              {"upper", format_rational(v.upper)},
              {"lower_decimal", format_decimal(v.lower, digits)},
              {"upper_decimal", format_decimal(v.upper, digits)},
              {"converged", v.converged}};
}

int run_norm(const Options& opt) {
  FamilyOracle fam = make_family(opt);
  NormResult r = norm_sq(fam, load_vector(opt.vector_arg));
  emit(norm_result_to_json(r, opt.digits), opt.out_path);
  return 0;
}

int run_dualnorm(const Options& opt) {
  FamilyOracle fam = make_family(opt);
  DualResult d = dual_norm(fam, load_vector(opt.vector_arg), parse_tol(opt),
                           opt.guards.iteration_budget);
  emit(dual_result_to_json(d, opt.digits), opt.out_path);
  return 0;
}

int run_daynorm(const Options& opt) {
  Rational v = day_norm_sq(load_vector(opt.vector_arg));
  emit(json{{"day_norm_sq", format_rational(v)},
            {"day_norm_sq_decimal", format_decimal(v, opt.digits)}},
       opt.out_path);
  return 0;
}

int run_renorm(const Options& opt) {
  RenormContext ctx(tuple_space_of(opt), parse_guards(opt), opt.kt);
  Ordinal alpha = parse_ordinal(opt.alpha);
  Rational v = ctx.triple_norm_sq(alpha, opt.k, load_vector(opt.vector_arg), opt.min_terms);
  emit(json{{"alpha", alpha.str()},
            {"k", opt.k},
            {"triple_norm_sq", format_rational(v)},
            {"triple_norm_sq_decimal", format_decimal(v, opt.digits)}},
       opt.out_path);
  return 0;
}

int run_ktnorm(const Options& opt) {
  RenormContext ctx(tuple_space_of(opt), parse_guards(opt), /*kt=*/true);
  Rational v = kt_renorm_sq(ctx, load_vector(opt.vector_arg));
  emit(json{{"kt_renorm_sq", format_rational(v)},
            {"kt_renorm_sq_decimal", format_decimal(v, opt.digits)}},
       opt.out_path);
  return 0;
}

int run_ynorm(const Options& opt) {
  RenormContext ctx(tuple_space_of(opt), parse_guards(opt), /*kt=*/true);
  FamilyOracle dual_fam = make_family(opt, R"({"kind":"schreier1"})");
  SparseVector x = opt.vector_arg.empty() ? SparseVector(tuple_space_of(opt))
                                          : load_vector(opt.vector_arg);
  SparseVector ystar = opt.dual_vector_arg.empty()
                           ? SparseVector(dual_fam.space())
                           : load_vector(opt.dual_vector_arg);
  Interval v = y_norm_sq(ctx, dual_fam, x, ystar, parse_tol(opt));
  emit(json{{"y_norm_sq", interval_to_json(v, opt.digits)}}, opt.out_path);
  return 0;
}

int run_family_member(const Options& opt) {
  FamilyOracle fam = make_family(opt);
  if (opt.set_arg.empty()) throw domain_error("--set is required");
  bool m = fam.member(set_from_json(load_json(opt.set_arg)));
  emit(json{{"member", m}}, opt.out_path);
  return 0;
}

int run_family_trace(const Options& opt) {
  FamilyOracle fam = make_family(opt);
  if (opt.set_arg.empty()) throw domain_error("--set is required");
  auto listing = fam.trace(set_from_json(load_json(opt.set_arg)));
  json arr = json::array();
  for (const auto& s : listing) arr.push_back(set_to_json(s));
  emit(json{{"trace", arr}, {"count", listing.size()}}, opt.out_path);
  return 0;
}

int run_family_validate(const Options& opt) {
  if (opt.family_arg.empty()) throw domain_error("--family is required");
  json j = load_json(opt.family_arg);
  std::vector<PointSet> sets;
  for (const auto& s : j.at("sets")) sets.push_back(set_from_json(s));
  PointSet ground;
  for (const auto& s : sets) ground.insert(ground.end(), s.begin(), s.end());
  canonicalize(ground);
  ValidationReport rep = validate_explicit(sets, ground);
  json violations = json::array();
  for (const auto& [sub, sup] : rep.hereditary_violations)
    violations.push_back({{"missing_subset", set_to_json(sub)}, {"of", set_to_json(sup)}});
  emit(json{{"ok", rep.ok()},
            {"hereditary", rep.hereditary},
            {"singletons", rep.singletons},
            {"missing_singletons", set_to_json(rep.missing_singletons)},
            {"hereditary_violations", violations}},
       opt.out_path);
  return 0;
}

int run_norming_extract(const Options& opt, bool discretize) {
  FamilyOracle fam = make_family(opt);
  NormingFunctional f = extract_norming(fam, load_vector(opt.vector_arg));
  if (discretize) f = discretize_norming(f);
  emit(functional_to_json(f), opt.out_path);
  return 0;
}

int run_norming_discretize(const Options& opt) {
  if (opt.functional_arg.empty()) throw domain_error("--functional is required");
  NormingFunctional f = functional_from_json(load_json(opt.functional_arg));
  emit(functional_to_json(discretize_norming(f)), opt.out_path);
  return 0;
}

int run_norming_apply(const Options& opt) {
  if (opt.functional_arg.empty()) throw domain_error("--functional is required");
  NormingFunctional f = functional_from_json(load_json(opt.functional_arg));
  ScaledValue v = apply_functional(f, load_vector(opt.vector_arg));
  Rational magnitude = sqrt_lower(v.value_sq(), 96);
  emit(json{{"numer", format_rational(v.numer)},
            {"scale_sq", format_rational(v.scale_sq)},
            {"value_sq", format_rational(v.value_sq())},
            {"sign", v.sign()},
            {"value_decimal",
             format_decimal(v.sign() < 0 ? -magnitude : magnitude, opt.digits)}},
       opt.out_path);
  return 0;
}

int run_probe(const Options& opt) {
  Rational tol = parse_tol(opt);
  std::ostringstream os;
  if (opt.scenario == "dual-non2r") {
    write_csv(os, scenario_dual_non2r(tol));
  } else if (opt.scenario == "lemma42") {
    write_csv(os, scenario_lemma42(parse_rational(opt.delta), opt.n_max, tol));
  } else {
    throw domain_error("unknown scenario '" + opt.scenario +
                       "' (expected dual-non2r or lemma42)");
  }
  emit_text(os.str(), opt.out_path);
  return 0;
}

int run_oracle(const Options& opt, const std::string& which) {
  std::mt19937_64 rng(opt.seed);
  unsigned agreements = 0;
  if (which == "norm") {
    FamilyOracle fam = make_family(opt, R"({"kind":"schreier1"})");
    unsigned cap = std::min(opt.guards.max_support, fam.guards().max_support_oracle);
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<unsigned> sz(0, cap);
    for (unsigned t = 0; t < opt.trials; ++t) {
      SparseVector x(fam.space());
      unsigned target = sz(rng);
      if (fam.space().kind == Space::Kind::naturals) {
        std::uniform_int_distribution<std::uint64_t> pt(1, 9);
        while (x.support_size() < target) {
          int a = num(rng);
          if (a == 0) a = 1;
          x.set(Point::natural(pt(rng)), Rational(a, den(rng)));
        }
      } else {
        std::uniform_int_distribution<std::uint32_t> coord(
            1, fam.space().alphabet ? fam.space().alphabet : 3);
        while (x.support_size() < target) {
          std::vector<std::uint32_t> c(fam.space().depth);
          for (auto& v : c) v = coord(rng);
          int a = num(rng);
          if (a == 0) a = 1;
          x.set(Point::tuple(std::move(c)), Rational(a, den(rng)));
        }
      }
      if (norm_sq(fam, x).norm_sq == norm_sq_bruteforce(fam, x).norm_sq) ++agreements;
    }
  } else if (which == "day") {
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<std::uint64_t> pt(1, 9);
    unsigned cap = std::min(opt.guards.max_support, 7u);
    std::uniform_int_distribution<unsigned> sz(0, cap);
    for (unsigned t = 0; t < opt.trials; ++t) {
      SparseVector y(Space{Space::Kind::naturals, 0, 0});
      unsigned target = sz(rng);
      while (y.support_size() < target) {
        int a = num(rng);
        if (a == 0) a = 1;
        y.set(Point::natural(pt(rng)), Rational(a, den(rng)));
      }
      // brute force over injections
      std::vector<Rational> mags;
      for (const auto& [p, v] : y.coords()) mags.push_back(v < 0 ? -v : v);
      std::vector<std::size_t> perm(mags.size());
      for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
      Rational best = 0;
      do {
        Rational s = 0;
        Rational w(1, 4);
        for (std::size_t i = 0; i < mags.size(); ++i) {
          s += w * mags[perm[i]] * mags[perm[i]];
          w /= 4;
        }
        if (s > best) best = s;
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (day_norm_sq(y) == best) ++agreements;
    }
  } else {
    throw domain_error("unknown oracle '" + which + "' (expected norm or day)");
  }
  std::ostringstream os;
  os << "agreements: " << agreements << "/" << opt.trials << "\n";
  emit_text(os.str(), opt.out_path);
  return agreements == opt.trials ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact evaluator for generalized Baernstein norms, 2R renormings, "
               "dual/Day norms and norming functionals"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--max-support", opt.guards.max_support, "support-size guard");
    cmd->add_option("--max-ground", opt.guards.max_ground, "ground-set guard");
    cmd->add_option("--iterations", opt.guards.iteration_budget, "iteration budget");
    cmd->add_option("--digits", opt.digits, "presentation decimal digits");
    cmd->add_option("--out", opt.out_path, "output file (default stdout)");
  };
  auto add_family = [&](CLI::App* cmd) {
    cmd->add_option("--family", opt.family_arg, "family spec (inline JSON or file)");
  };
  auto add_vector = [&](CLI::App* cmd) {
    cmd->add_option("--vector", opt.vector_arg, "vector (inline JSON or file)");
  };
  auto add_tuplespace = [&](CLI::App* cmd) {
    cmd->add_option("--depth", opt.depth, "tuple depth");
    cmd->add_option("--alphabet", opt.alphabet, "alphabet size or 'unbounded'");
  };

  auto* norm = app.add_subcommand("norm", "exact squared norm with certificate");
  add_common(norm);
  add_family(norm);
  add_vector(norm);

  auto* dualnorm = app.add_subcommand("dualnorm", "bracketed dual norm with certificates");
  add_common(dualnorm);
  add_family(dualnorm);
  add_vector(dualnorm);
  dualnorm->add_option("--tol", opt.tol, "bracket tolerance, rational in (0,1)");

  auto* daynorm = app.add_subcommand("daynorm", "exact squared Day norm");
  add_common(daynorm);
  add_vector(daynorm);

  auto* renorm = app.add_subcommand("renorm", "exact squared transfinite renorm");
  add_common(renorm);
  add_vector(renorm);
  add_tuplespace(renorm);
  renorm->add_option("--alpha", opt.alpha, "ordinal below w^w, e.g. 'w*1+2'");
  renorm->add_option("--k", opt.k, "family superscript");
  renorm->add_flag("--kt", opt.kt, "branch-constrained family");
  renorm->add_option("--min-terms", opt.min_terms, "force extended tail truncation");

  auto* ktnorm = app.add_subcommand("ktnorm", "exact squared KT renorm");
  add_common(ktnorm);
  add_vector(ktnorm);
  add_tuplespace(ktnorm);

  auto* ynorm = app.add_subcommand("ynorm", "direct-sum norm on X + X*");
  add_common(ynorm);
  add_family(ynorm);
  add_vector(ynorm);
  add_tuplespace(ynorm);
  ynorm->add_option("--dual-vector", opt.dual_vector_arg, "functional component (JSON or file)");
  ynorm->add_option("--tol", opt.tol, "bracket tolerance, rational in (0,1)");

  auto* family = app.add_subcommand("family", "family membership, traces and validation");
  family->require_subcommand(1);
  auto* fmember = family->add_subcommand("member", "decide membership of a set");
  add_common(fmember);
  add_family(fmember);
  fmember->add_option("--set", opt.set_arg, "point set, e.g. [1,2]");
  auto* ftrace = family->add_subcommand("trace", "all member subsets of a ground set");
  add_common(ftrace);
  add_family(ftrace);
  ftrace->add_option("--set", opt.set_arg, "ground set");
  auto* fvalidate = family->add_subcommand("validate", "check an explicit listing");
  add_common(fvalidate);
  add_family(fvalidate);

  auto* norming = app.add_subcommand("norming", "norming functionals");
  norming->require_subcommand(1);
  auto* nextract = norming->add_subcommand("extract", "functional from the norm certificate");
  add_common(nextract);
  add_family(nextract);
  add_vector(nextract);
  bool extract_dyadic = false;
  nextract->add_flag("--dyadic", extract_dyadic, "discretize after extraction");
  auto* ndiscretize = norming->add_subcommand("discretize", "round coefficients to powers of 2");
  add_common(ndiscretize);
  ndiscretize->add_option("--functional", opt.functional_arg, "functional (JSON or file)");
  auto* napply = norming->add_subcommand("apply", "evaluate a functional at a vector");
  add_common(napply);
  add_vector(napply);
  napply->add_option("--functional", opt.functional_arg, "functional (JSON or file)");

  auto* probe = app.add_subcommand("probe", "finite-scale scenario reports (CSV)");
  add_common(probe);
  probe->add_option("--scenario", opt.scenario, "dual-non2r | lemma42")->required();
  probe->add_option("--delta", opt.delta, "perturbation size for lemma42");
  probe->add_option("--n-max", opt.n_max, "table length for lemma42");
  probe->add_option("--tol", opt.tol, "bracket tolerance");

  auto* oracle = app.add_subcommand("oracle", "brute-force cross-check runs");
  oracle->require_subcommand(1);
  auto* onorm = oracle->add_subcommand("norm", "DP vs exhaustive enumeration");
  add_common(onorm);
  add_family(onorm);
  onorm->add_option("--trials", opt.trials, "number of random instances");
  onorm->add_option("--seed", opt.seed, "RNG seed");
  auto* oday = oracle->add_subcommand("day", "closed form vs permutation search");
  add_common(oday);
  oday->add_option("--trials", opt.trials, "number of random instances");
  oday->add_option("--seed", opt.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*norm) return run_norm(opt);
    if (*dualnorm) return run_dualnorm(opt);
    if (*daynorm) return run_daynorm(opt);
    if (*renorm) return run_renorm(opt);
    if (*ktnorm) return run_ktnorm(opt);
    if (*ynorm) return run_ynorm(opt);
    if (*fmember) return run_family_member(opt);
    if (*ftrace) return run_family_trace(opt);
    if (*fvalidate) return run_family_validate(opt);
    if (*nextract) return run_norming_extract(opt, extract_dyadic);
    if (*ndiscretize) return run_norming_discretize(opt);
    if (*napply) return run_norming_apply(opt);
    if (*probe) return run_probe(opt);
    if (*onorm) return run_oracle(opt, "norm");
    if (*oday) return run_oracle(opt, "day");
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 2;
}
