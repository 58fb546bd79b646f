#pragma once

// JSON reports behind the command-line subcommands. Each builder takes
// parsed inputs and returns the report; argument handling stays in tools/.

#include <gmpxx.h>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hurwitz/dataset.hpp"
#include "hurwitz/deform.hpp"
#include "hurwitz/nielsen.hpp"
#include "json.hpp"

namespace hurwitz {

using nlohmann::json;

inline json group_info(const std::string& name) {
  auto cg = make_group(name);
  json j;
  j["name"] = cg.spec.name;
  j["kind"] = cg.spec.kind;
  j["degree"] = cg.group.degree();
  j["order"] = cg.group.order().get_str();
  j["expected_order"] = cg.spec.expected_order.get_str();
  j["transitive"] = cg.group.is_transitive();
  if (cg.normal) j["normal_subgroup_order"] = cg.normal->order().get_str();
  j["classes"] = json::array();
  for (const auto& c : cg.spec.classes) {
    json e{{"label", c.label}, {"element_order", c.element_order}, {"type", c.selector.type.to_string()}};
    if (c.selector.outer) e["outer"] = *c.selector.outer;
    j["classes"].push_back(e);
  }
  return j;
}

// Orbit spec: {group, classes: ["2A", "3^5.1^6 outer", ...],
// braid_words?: [[2,3,2],[1,1,4,4]], symmetrize?: true, patience?: 20}.
struct OrbitSpec {
  std::string group;
  std::vector<std::string> classes;
  std::vector<BraidWord> braid_words;
  bool symmetrize = true;
  std::size_t patience = 20;

  static OrbitSpec from_json(const json& j) {
    OrbitSpec s;
    s.group = j.at("group").get<std::string>();
    s.classes = j.at("classes").get<std::vector<std::string>>();
    if (j.contains("braid_words")) s.braid_words = j["braid_words"].get<std::vector<BraidWord>>();
    s.symmetrize = j.value("symmetrize", true);
    s.patience = j.value("patience", std::size_t{20});
    return s;
  }
};

// Number of full braid orbits met by random straight tuples, stopping after
// `patience` consecutive tuples from known orbits.
inline std::size_t braid_orbits_met(const CatalogGroup& cg, const ClassTupleSpec& spec, std::uint64_t seed,
                                    std::size_t patience) {
  std::vector<TupleStore> stores;
  std::size_t quiet = 0;
  for (std::uint64_t s = seed; quiet < patience; ++s) {
    Tuple t = find_tuple(cg, spec, s);
    bool known = false;
    for (const auto& st : stores) known = known || st.find(t).has_value();
    if (known) {
      ++quiet;
      continue;
    }
    quiet = 0;
    auto og = orbit_closure(cg.group, t);
    TupleStore st(cg.group);
    for (const auto& x : og.tuples) st.insert(x);
    stores.push_back(std::move(st));
  }
  return stores.size();
}

inline json orbit_report(const OrbitSpec& in, std::uint64_t seed) {
  auto cg = make_group(in.group);
  ClassTupleSpec spec{in.group, {}};
  for (const auto& c : in.classes) spec.classes.push_back(cg.resolve(c));
  json j;
  j["group"] = in.group;
  for (const auto& s : spec.classes) j["classes"].push_back(s.to_string());
  std::vector<CycleType> types;
  for (const auto& s : spec.classes) types.push_back(s.type);
  auto g = tuple_genus(types, cg.group.degree());
  j["tuple_genus"] = g.genus;
  if (!in.braid_words.empty()) {
    auto so = subgroup_orbits(cg, spec, in.braid_words, seed, in.patience);
    j["braid_words"] = in.braid_words;
    j["subgroup_orbit_lengths"] = so.lengths;
    j["straight_count"] = so.straight_total;
    j["full_orbits"] = so.full_orbits;
    j["seeds_tried"] = so.seeds_tried;
    return j;
  }
  Tuple t = find_tuple(cg, spec, seed);
  auto og = orbit_closure(cg.group, t);
  j["orbit_length"] = og.size();
  j["straight_count"] = straight_count(cg, og, spec);
  j["transitive_on_straight"] = braid_orbits_met(cg, spec, seed, in.patience) == 1;
  if (spec.classes.size() == 4) {
    auto rg = reduced_genus_r4(cg, og, spec, in.symmetrize);
    j["genus_r4"] = rg.genus;
    j["symmetrized"] = rg.symmetrized;
    j["braid_structures"] = type_strings(rg.structures);
    j["blocks"] = json::array();
    for (const auto& bs : braid_cycle_blocks(rg)) {
      std::vector<CycleType> on;
      for (const auto& b : rg.braids) on.push_back(cycle_type(block_action(b, bs)));
      j["blocks"].push_back({{"count", bs.size()}, {"size", bs.front().size()}, {"structures", type_strings(on)}});
    }
  }
  return j;
}

// Fiber selector for `poly`: a rational t0, infinity, or the quadratic
// point t^2 + a t + b = 0.
struct FiberAt {
  enum class Kind { None, Rational, Infinity, Quadratic } kind = Kind::None;
  mpq_class t0, a, b;

  static FiberAt parse(const std::vector<std::string>& v) {
    FiberAt f;
    if (v.empty()) return f;
    if (v[0] == "inf") {
      f.kind = Kind::Infinity;
    } else if (v[0] == "quad") {
      if (v.size() != 3) throw PolyError("--at quad needs a and b");
      f.kind = Kind::Quadratic;
      f.a = parse_rational(v[1]);
      f.b = parse_rational(v[2]);
      return f;
    } else {
      f.kind = Kind::Rational;
      f.t0 = parse_rational(v[0]);
    }
    if (v.size() != 1) throw PolyError("--at takes one value unless it is 'quad a b'");
    return f;
  }
  std::string label() const {
    switch (kind) {
      case Kind::Rational: return "t=" + t0.get_str();
      case Kind::Infinity: return "t=inf";
      case Kind::Quadratic: return "t^2+(" + a.get_str() + ")t+(" + b.get_str() + ")=0";
      default: return "";
    }
  }
};

// The univariate fiber polynomial for commands that need one.
inline QPoly fiber_poly(const PolyEntry& e, const BiPoly& f, const FiberAt& at) {
  if (e.univariate() || f.deg_t() <= 0) return f.at(mpq_class(0));
  switch (at.kind) {
    case FiberAt::Kind::Rational: return f.at(at.t0);
    case FiberAt::Kind::Infinity: return f.reversed_t().at(mpq_class(0));
    default: throw PolyError("this command needs --at t0 or --at inf for a bivariate polynomial");
  }
}

inline json poly_report(const std::string& command, const PolyEntry& e, const FiberAt& at,
                        std::optional<std::uint64_t> mod, std::size_t param_index = 0) {
  if (param_index >= e.param_sets.size()) throw PolyError("parameter set index out of range");
  BiPoly f = e.poly(e.param_sets[param_index]);
  json j;
  j["key"] = e.key;
  j["command"] = command;
  if (!e.param_sets[param_index].empty()) j["params"] = params_label(e.param_sets[param_index]);
  if (at.kind != FiberAt::Kind::None) j["at"] = at.label();
  if (mod) j["mod"] = *mod;
  if (command == "disc") {
    if (at.kind == FiberAt::Kind::None && !e.univariate() && f.deg_t() > 0) {
      QPoly d = disc_x(f);
      j["degree"] = d.degree();
      for (const auto& [g, m] : squarefree_decomposition(d)) {
        j["squarefree_factors"].push_back({{"factor", to_string(g, e.tvar)}, {"multiplicity", m}});
      }
      return j;
    }
    mpq_class d = discriminant(fiber_poly(e, f, at));
    j["discriminant"] = d.get_str();
    j["square"] = is_rational_square(d);
    if (mod) {
      u64 r = 0;
      j["discriminant_mod"] = reduce_mod(d, *mod, r) ? json(r) : json(nullptr);
    }
    return j;
  }
  if (command == "pattern") {
    switch (at.kind) {
      case FiberAt::Kind::None: j["report"] = report_json(ramification_report(f), e.tvar); break;
      case FiberAt::Kind::Rational: j["pattern"] = multiplicity_pattern(f, at.t0).type.to_string(); break;
      case FiberAt::Kind::Infinity: j["pattern"] = multiplicity_pattern_at_infinity(f).type.to_string(); break;
      case FiberAt::Kind::Quadratic: j["pattern"] = multiplicity_pattern(f, at.a, at.b).type.to_string(); break;
    }
    return j;
  }
  if (command == "sturm") {
    QPoly g = fiber_poly(e, f, at);
    j["degree"] = g.degree();
    j["real_roots"] = real_root_count(g);
    j["totally_real"] = totally_real(g);
    return j;
  }
  if (command == "factor") {
    QPoly g = fiber_poly(e, f, at);
    if (mod) {
      ModPoly r;
      if (!modp::reduce(g, *mod, r) || r.degree() != g.degree()) throw PolyError("bad reduction at this prime");
      for (const auto& fac : factor_mod_p(r)) {
        j["factors"].push_back({{"degree", fac.degree}, {"multiplicity", fac.multiplicity}});
      }
      return j;
    }
    for (const auto& [h, m] : squarefree_decomposition(g)) {
      j["squarefree_factors"].push_back({{"factor", to_string(h, e.xvar)}, {"multiplicity", m}});
    }
    return j;
  }
  throw PolyError("unknown poly command: " + command);
}

inline json dataset_list() {
  json j = json::array();
  for (const auto& k : dataset_keys()) {
    auto e = load_entry(k);
    j.push_back({{"key", e.key}, {"anchor", e.anchor}, {"target", e.target}});
  }
  return j;
}

// Scalar mode for deform/algdep: p-adic Z/p^k or complex at d digits.
struct ScalarMode {
  bool padic = false;
  mpz_class p;
  int k = 0;
  int digits = 50;

  json to_json() const {
    if (padic) return {{"mode", "padic"}, {"p", p.get_str()}, {"k", k}};
    return {{"mode", "complex"}, {"digits", digits}};
  }
};

namespace detail {

template <class S>
json solutions_json(const DeformSystem& sys, const std::vector<S>& lambdas, const std::vector<std::vector<S>>& sols) {
  json out = json::array();
  for (std::size_t i = 0; i < sols.size(); ++i) {
    json x = json::object();
    for (std::size_t u = 0; u < sys.size(); ++u) x[sys.labels()[u]] = scalar_json(sols[i][u]);
    out.push_back({{"lambda", scalar_json(lambdas[i])}, {"x", x}});
  }
  return out;
}

template <class S>
json samples_json(const DeformSystem& sys, const std::vector<std::vector<S>>& sols) {
  json out = json::array();
  for (const auto& s : sols) out.push_back(json::array({scalar_json(s[sys.observe_x()]), scalar_json(s[sys.observe_y()])}));
  return out;
}

}  // namespace detail

// Continues the seed cover along the lambda path and reports the solutions
// and the observed coordinate pairs (the algdep input).
inline json deform_report(const std::string& shape, const json& seed_json, const std::string& path_text,
                          const ScalarMode& mode) {
  DeformSystem sys(load_shape(shape));
  Seed seed = seed_from_cover(sys, seed_json);
  PathSpec path = parse_path(path_text);
  json j;
  j["shape"] = sys.shape().name;
  j["unknowns"] = sys.size();
  j["lambda0"] = seed.lambda.get_str();
  j["precision"] = mode.to_json();
  if (mode.padic) {
    Padic::set_context(mode.p, mode.k);
    auto pts = path_points<Padic>(path, seed.lambda);
    auto sols = continue_lambda(sys, lift_vector<Padic>(seed.x), lift<Padic>(seed.lambda), pts);
    j["solutions"] = detail::solutions_json(sys, pts, sols);
    j["samples"] = {{"mode", "padic"}, {"p", mode.p.get_str()}, {"k", mode.k}, {"samples", detail::samples_json(sys, sols)}};
    return j;
  }
  set_working_digits(mode.digits);
  auto pts = path_points<MpComplex>(path, seed.lambda);
  auto sols = continue_lambda_polished(sys, lift_vector<MpComplex>(seed.x), lift<MpComplex>(seed.lambda), pts);
  j["solutions"] = detail::solutions_json(sys, pts, sols);
  j["samples"] = {{"mode", "complex"}, {"digits", mode.digits}, {"samples", detail::samples_json(sys, sols)}};
  return j;
}

inline json fit_json(const RelationFit& fit, const std::vector<std::string>& tried) {
  json j;
  j["degrees"] = {fit.d1, fit.d2};
  j["relation"] = relation_string(fit.relation);
  j["fitted"] = fit.fitted;
  j["held_out"] = fit.held_out;
  j["tried"] = tried;
  return j;
}

// Samples file as written by deform_report: {"mode": "complex", "digits",
// "samples": [[[re,im],[re,im]], ...]} or {"mode": "padic", "p", "k",
// "samples": [["v","w"], ...]}. With search set, degrees are raised from
// (d1, d2) until a one-dimensional relation is found.
inline json algdep_report(const json& in, int d1, int d2, bool search, std::size_t held_out = 20) {
  std::string mode = in.at("mode").get<std::string>();
  std::vector<std::string> tried;
  RelationFit fit;
  if (mode == "padic") {
    Padic::set_context(mpz_class(in.at("p").get<std::string>()), in.at("k").get<int>());
    std::vector<std::pair<Padic, Padic>> s;
    for (const auto& row : in.at("samples")) {
      s.emplace_back(Padic(mpz_class(row.at(0).get<std::string>())), Padic(mpz_class(row.at(1).get<std::string>())));
    }
    fit = search ? fit_relation_search(s, d1, d2, held_out, &tried) : fit_relation(s, d1, d2, held_out);
  } else if (mode == "complex") {
    set_working_digits(in.at("digits").get<int>());
    std::vector<std::pair<MpComplex, MpComplex>> s;
    for (const auto& row : in.at("samples")) s.emplace_back(mp_from_json(row.at(0)), mp_from_json(row.at(1)));
    fit = search ? fit_relation_search(s, d1, d2, held_out, &tried) : fit_relation(s, d1, d2, held_out);
  } else {
    throw DeformError(DeformError::Kind::Shape, "unknown sample mode " + mode);
  }
  json j = fit_json(fit, tried);
  j["mode"] = mode;
  return j;
}

}  // namespace hurwitz
