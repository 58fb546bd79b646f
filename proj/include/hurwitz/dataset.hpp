#pragma once

// Bundled polynomial dataset (data/polys/<key>.json) and the per-entry
// verification bundles built on the galois module.

#include <gmpxx.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "hurwitz/catalog.hpp"
#include "hurwitz/disc_checks.hpp"
#include "hurwitz/galois.hpp"
#include "json.hpp"

namespace hurwitz {

using Params = std::vector<std::pair<std::string, mpq_class>>;

struct PolyEntry {
  std::string key, anchor, target;
  std::string tvar = "t", xvar = "x";
  nlohmann::json raw;
  std::vector<Params> param_sets{Params{}};

  // f for one parameter set. Univariate entries give deg_t = 0.
  BiPoly poly(const Params& params = {}) const {
    if (raw.contains("model")) {
      return BiPoly::model(parse_qpoly(raw["model"]["p"].get<std::string>(), xvar, params),
                           parse_qpoly(raw["model"]["q"].get<std::string>(), xvar, params));
    }
    if (raw.contains("dense")) return parse_bipoly(raw["dense"].get<std::string>(), tvar, xvar, params);
    if (raw.contains("univariate")) {
      return BiPoly::from_x(parse_qpoly(raw["univariate"].get<std::string>(), xvar, params));
    }
    throw VerifyError("dataset entry " + key + " has no polynomial");
  }
  bool univariate() const { return raw.contains("univariate"); }
  const nlohmann::json& checks() const { return raw["checks"]; }
};

inline std::string polys_dir() { return data_dir() + "/polys"; }

inline std::vector<std::string> dataset_keys() {
  std::vector<std::string> keys;
  for (const auto& e : std::filesystem::directory_iterator(polys_dir())) {
    if (e.path().extension() == ".json") keys.push_back(e.path().stem().string());
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

inline PolyEntry parse_entry(const nlohmann::json& j, const std::string& fallback_key = "") {
  PolyEntry e;
  e.raw = j;
  e.key = j.value("key", fallback_key);
  e.anchor = j.value("anchor", "");
  e.target = j.value("target", "");
  if (j.contains("vars")) {
    const auto& v = j["vars"];
    if (v.size() == 2) {
      e.tvar = v[0].get<std::string>();
      e.xvar = v[1].get<std::string>();
    } else if (v.size() == 1) {
      e.xvar = v[0].get<std::string>();
    }
  }
  if (j.contains("params")) {
    e.param_sets.clear();
    for (const auto& set : j["params"]) {
      Params p;
      for (auto it = set.begin(); it != set.end(); ++it) p.emplace_back(it.key(), parse_rational(it.value().get<std::string>()));
      e.param_sets.push_back(std::move(p));
    }
  }
  return e;
}

inline PolyEntry load_entry_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw VerifyError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw VerifyError(path + ": " + ex.what());
  }
  return parse_entry(j, std::filesystem::path(path).stem().string());
}

inline PolyEntry load_entry(const std::string& key) {
  std::string path = polys_dir() + "/" + key + ".json";
  if (!std::filesystem::exists(path)) throw VerifyError("dataset entry missing: " + key);
  return load_entry_file(path);
}

inline std::string params_label(const Params& p) {
  std::string s;
  for (const auto& [k, v] : p) s += (s.empty() ? "" : ",") + k + "=" + v.get_str();
  return s;
}

inline std::vector<std::string> type_strings(const std::vector<CycleType>& v) {
  std::vector<std::string> out;
  for (const auto& c : v) out.push_back(c.to_string());
  return out;
}

// `text` like "-4.37" or "-8.75e22" agrees with `v` to the digits shown:
// |v - text| is at most one unit in the last displayed place.
inline bool matches_digits(double v, const std::string& text) {
  std::string mant = text;
  long exp10 = 0;
  auto epos = text.find_first_of("eE");
  if (epos != std::string::npos) {
    mant = text.substr(0, epos);
    exp10 = std::stol(text.substr(epos + 1));
  }
  auto dot = mant.find('.');
  long decimals = dot == std::string::npos ? 0 : static_cast<long>(mant.size() - dot - 1);
  double unit = std::pow(10.0, static_cast<double>(exp10 - decimals));
  return std::fabs(v - std::stod(text)) <= unit * (1 + 1e-9);
}

struct CheckResult {
  std::string name;
  std::string anchor;
  bool passed = false;
  nlohmann::json detail;
};

struct VerifyBundle {
  std::string key, anchor;
  std::vector<CheckResult> checks;
  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return !checks.empty();
  }
  nlohmann::json to_json() const {
    nlohmann::json j;
    j["key"] = key;
    j["anchor"] = anchor;
    j["passed"] = passed();
    for (const auto& c : checks) {
      j["checks"].push_back({{"name", c.name}, {"anchor", c.anchor}, {"passed", c.passed}, {"detail", c.detail}});
    }
    return j;
  }
};

inline nlohmann::json report_json(const RamificationReport& r, const std::string& var) {
  nlohmann::json j;
  j["degree"] = r.degree;
  j["genus"] = r.genus;
  j["numeric_fibers"] = r.numeric_fibers;
  for (const auto& b : r.branches) {
    j["branch_points"].push_back({{"locus", b.label(var)}, {"points", b.points()}, {"type", b.pattern.type.to_string()}, {"numeric", b.numeric}});
  }
  j["structure"] = type_strings(r.structure());
  return j;
}

inline nlohmann::json verdict_json(const GroupVerdict& v) {
  nlohmann::json j;
  j["target"] = v.target;
  j["verdict"] = GroupVerdict::name(v.verdict);
  j["good_reductions"] = v.good;
  j["bad_reductions"] = v.bad;
  for (const auto& [ct, n] : v.sampled) j["sampled"][ct.to_string()] = n;
  j["outside_target"] = type_strings(v.outside);
  for (const auto& [alt, miss] : v.alternatives) j["absent_from"][alt] = type_strings(miss);
  return j;
}

inline nlohmann::json windows_json(const WindowReport& w) {
  nlohmann::json j;
  for (const auto& r : w.branch_points) j["real_branch_points"].push_back(r.approx());
  j["windows"] = nlohmann::json::array();
  for (const auto& win : w.windows) {
    j["windows"].push_back({{"lo", win.lo ? nlohmann::json(win.lo_d()) : nlohmann::json("-inf")},
                            {"hi", win.hi ? nlohmann::json(win.hi_d()) : nlohmann::json("inf")},
                            {"sample", win.sample.get_str()}});
  }
  return j;
}

inline bool check_window(const WindowReport& w, const nlohmann::json& spec, nlohmann::json& detail) {
  auto num = [](const nlohmann::json& x) { return std::stod(x.get<std::string>()); };
  for (const auto& win : w.windows) {
    bool ok = true;
    if (spec.contains("contains")) ok = ok && win.contains(num(spec["contains"][0]), num(spec["contains"][1]));
    if (spec.contains("within")) {
      ok = ok && win.lo && win.hi && win.lo_d() >= num(spec["within"][0]) && win.hi_d() <= num(spec["within"][1]);
    }
    if (spec.contains("endpoints")) {
      ok = ok && win.lo && win.hi && matches_digits(win.lo_d(), spec["endpoints"][0].get<std::string>()) &&
           matches_digits(win.hi_d(), spec["endpoints"][1].get<std::string>());
    }
    if (ok && spec.contains("endpoint_poly") && win.hi) {
      // the upper endpoint must lie within 1e-9 of a root of the given polynomial
      QPoly e = parse_qpoly(spec["endpoint_poly"].get<std::string>(), "t");
      mpq_class a = *win.hi - mpq_class(1, 1000000000), b = *win.hi + mpq_class(1, 1000000000);
      ok = sturm_count(e, a, b) == 1;
      detail["endpoint_poly_root"] = ok;
    }
    if (ok) {
      detail["matched"] = {{"lo", win.lo ? nlohmann::json(win.lo_d()) : nlohmann::json("-inf")},
                           {"hi", win.hi ? nlohmann::json(win.hi_d()) : nlohmann::json("inf")}};
      return true;
    }
  }
  return false;
}

struct VerifyOptions {
  std::size_t t_samples = 25;
  std::size_t primes = 40;
  std::uint64_t seed = 0;
};

inline VerifyBundle verify_entry(const PolyEntry& e, const VerifyOptions& opt = {}) {
  VerifyBundle b;
  b.key = e.key;
  b.anchor = e.anchor;
  const auto& c = e.checks();
  for (const auto& params : e.param_sets) {
    const std::string suffix = params.empty() ? "" : " [" + params_label(params) + "]";
    BiPoly f = e.poly(params);
    std::optional<RamificationReport> rep;
    auto get_report = [&]() -> const RamificationReport& {
      if (!rep) rep = ramification_report(f);
      return *rep;
    };
    if (c.contains("ramification")) {
      CheckResult r{"ramification" + suffix, e.anchor, false, {}};
      try {
        const auto& rr = get_report();
        r.detail = report_json(rr, e.tvar);
        std::vector<CycleType> want;
        for (const auto& s : c["ramification"]["structure"]) want.push_back(CycleType::parse(s.get<std::string>()));
        std::sort(want.begin(), want.end());
        r.passed = rr.structure() == want;
        if (c["ramification"].contains("genus")) r.passed = r.passed && rr.genus == c["ramification"]["genus"].get<long>();
        r.detail["expected"] = type_strings(want);
      } catch (const std::exception& ex) {
        r.detail["error"] = ex.what();
      }
      b.checks.push_back(std::move(r));
    }
    if (c.contains("dedekind")) {
      CheckResult r{"dedekind" + suffix, e.anchor, false, {}};
      try {
        std::vector<std::string> alts;
        for (const auto& a : c["dedekind"].value("alternatives", nlohmann::json::array())) alts.push_back(a.get<std::string>());
        auto grid = default_grid(f, opt.t_samples, opt.primes, opt.seed);
        auto v = dedekind_verdict(f, e.target, grid, alts);
        r.detail = verdict_json(v);
        r.passed = v.verdict == GroupVerdict::Kind::Consistent && v.sampled.size() >= 5;
      } catch (const std::exception& ex) {
        r.detail["error"] = ex.what();
      }
      b.checks.push_back(std::move(r));
    }
    if (c.contains("window")) {
      CheckResult r{"totally_real_window" + suffix, e.anchor, false, {}};
      try {
        auto w = totally_real_windows(f, get_report());
        r.detail = windows_json(w);
        r.passed = check_window(w, c["window"], r.detail);
        r.detail["expected"] = c["window"];
      } catch (const std::exception& ex) {
        r.detail["error"] = ex.what();
      }
      b.checks.push_back(std::move(r));
    }
    if (c.contains("disc_square")) {
      CheckResult r{"disc_square" + suffix, e.anchor, true, {}};
      try {
        for (const auto& s : c["disc_square"]["at"]) {
          mpq_class s0 = parse_rational(s.get<std::string>());
          QPoly g = f.at(s0);
          bool sq = disc_square_test(g);
          bool real = totally_real(g);
          r.detail["values"].push_back({{"at", s0.get_str()}, {"square", sq}, {"totally_real", real}});
          r.passed = r.passed && sq;
        }
      } catch (const std::exception& ex) {
        r.passed = false;
        r.detail["error"] = ex.what();
      }
      b.checks.push_back(std::move(r));
    }
    if (c.contains("totally_real")) {
      CheckResult r{"totally_real" + suffix, e.anchor, false, {}};
      QPoly g = f.at(mpq_class(0));
      r.detail["real_roots"] = real_root_count(g);
      r.detail["degree"] = g.degree();
      r.passed = totally_real(g);
      b.checks.push_back(std::move(r));
    }
    if (c.contains("disc_cofactor")) {
      CheckResult r{"disc_cofactor" + suffix, e.anchor, false, {}};
      try {
        mpz_class target = parse_rational(c["disc_cofactor"]["target"].get<std::string>()).get_num();
        auto rep2 = disc_cofactor_check(f.at(mpq_class(0)), target);
        r.detail["discriminant"] = rep2.discriminant.get_str();
        r.detail["square_cofactor"] = rep2.square;
        if (rep2.square) r.detail["cofactor_root"] = rep2.cofactor_root.get_str();
        std::vector<std::string> odd;
        for (auto p : rep2.odd_small_primes) odd.push_back(std::to_string(p));
        r.detail["odd_small_primes"] = odd;
        r.detail["unfactored_part"] = rep2.unfactored.get_str();
        r.detail["unfactored_probable_prime"] = rep2.unfactored_probable_prime;
        r.passed = rep2.square;
        if (c["disc_cofactor"].value("odd_free", false)) {
          // disc = target * c^2 already forces even exponents outside the target
          r.passed = r.passed && rep2.odd_small_primes.empty();
        }
      } catch (const std::exception& ex) {
        r.detail["error"] = ex.what();
      }
      b.checks.push_back(std::move(r));
    }
  }
  return b;
}

inline VerifyBundle verify_theorem(const std::string& key, const VerifyOptions& opt = {}) {
  return verify_entry(load_entry(key), opt);
}

}  // namespace hurwitz
