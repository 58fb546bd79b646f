// Command-line entry point. Every subcommand parses its arguments, calls a
// report builder from include/hurwitz/reports.hpp and prints JSON.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "hurwitz/reports.hpp"

using namespace hurwitz;

namespace {

constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// FNV-1a over the command line and the bytes of every input file.
struct Digest {
  std::uint64_t h = 1469598103934665603ull;
  void add(const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  }
  std::string hex() const {
    std::ostringstream o;
    o << std::hex << h;
    return o.str();
  }
};

// Dataset key, shape key or path: a path is read as given, a bare key from
// the bundled data.
std::string entry_path(const std::string& arg, const std::string& dir) {
  if (std::filesystem::exists(arg)) return arg;
  std::string p = dir + "/" + arg + (arg.ends_with(".json") ? "" : ".json");
  if (std::filesystem::exists(p)) return p;
  throw UsageError("no such input: " + arg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nielsen classes, braid orbits, branched covers and Galois polynomial checks"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 0;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  bool compact = false;
  app.add_option("--seed", seed, "seed for all randomized steps")->capture_default_str();
  app.add_option("--jobs", jobs, "worker cap")->check(CLI::PositiveNumber);
  app.add_flag("--compact", compact, "single-line JSON");

  auto* group = app.add_subcommand("group", "permutation group catalog");
  group->require_subcommand(1);
  auto* group_info_cmd = group->add_subcommand("info", "generators, order and classes of a catalog group");
  std::string group_name;
  group_info_cmd->add_option("name", group_name)->required();
  group->add_subcommand("list", "catalog group names");

  auto* orbit = app.add_subcommand("orbit", "braid orbit report for an orbit spec file");
  std::string orbit_file;
  orbit->add_option("spec", orbit_file)->required();

  auto* poly = app.add_subcommand("poly", "exact polynomial tools");
  std::string poly_cmd, poly_file;
  std::vector<std::string> poly_at;
  std::uint64_t poly_mod = 0;
  std::size_t poly_params = 0;
  poly->add_option("command", poly_cmd)->required()->check(CLI::IsMember({"disc", "pattern", "sturm", "factor"}));
  poly->add_option("file", poly_file, "dataset key or polynomial JSON")->required();
  poly->add_option("--at", poly_at, "t0 | inf | quad a b")->expected(1, 3);
  poly->add_option("--mod", poly_mod, "prime for reductions");
  poly->add_option("--params", poly_params, "parameter set index")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "dataset checks");
  std::string verify_id;
  bool verify_json = false;
  verify->add_option("id", verify_id, "dataset key or 'all'")->required();
  verify->add_flag("--json", verify_json, "full JSON report");

  auto* deform = app.add_subcommand("deform", "continue a cover along a lambda path");
  std::string deform_shape, deform_seed, deform_path;
  std::vector<std::string> deform_padic;
  int deform_digits = 50;
  deform->add_option("shape", deform_shape, "shape key or JSON file")->required();
  deform->add_option("--seed,--seed-cover", deform_seed, "seed cover JSON (the global --seed goes before the subcommand)")->required();
  deform->add_option("--path", deform_path, "r1,r2,... | line:N:h | circle:N:r")->required();
  auto* padic_opt = deform->add_option("--padic", deform_padic, "p k")->expected(2);
  deform->add_option("--digits", deform_digits, "complex working digits")->excludes(padic_opt);

  auto* algdep = app.add_subcommand("algdep", "fit a polynomial relation to coordinate samples");
  std::string algdep_file;
  std::vector<int> algdep_deg;
  bool algdep_search = false;
  std::size_t algdep_held = 20;
  algdep->add_option("samples", algdep_file)->required();
  algdep->add_option("--deg", algdep_deg, "d1 d2")->expected(2)->required();
  algdep->add_flag("--search", algdep_search, "raise degrees until a relation is found");
  algdep->add_option("--held-out", algdep_held, "samples kept for validation")->capture_default_str();

  auto* dataset = app.add_subcommand("dataset", "bundled polynomial dataset");
  dataset->require_subcommand(1);
  dataset->add_subcommand("list", "keys and descriptions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  Digest digest;
  for (int i = 1; i < argc; ++i) digest.add(argv[i]);
  json report;
  report["seed"] = seed;
  int status = 0;
  auto t0 = std::chrono::steady_clock::now();

  try {
    if (group->parsed()) {
      report["subcommand"] = "group";
      if (group_info_cmd->parsed()) {
        report["result"] = group_info(group_name);
      } else {
        report["result"] = catalog_names();
      }
    } else if (orbit->parsed()) {
      report["subcommand"] = "orbit";
      std::string path = entry_path(orbit_file, data_dir() + "/specs");
      digest.add(read_file(path));
      report["result"] = orbit_report(OrbitSpec::from_json(read_json(path)), seed);
    } else if (poly->parsed()) {
      report["subcommand"] = "poly";
      std::string path = entry_path(poly_file, polys_dir());
      digest.add(read_file(path));
      std::optional<std::uint64_t> mod;
      if (poly->count("--mod")) {
        if (!is_prime_u64(poly_mod)) throw UsageError("--mod needs a prime");
        mod = poly_mod;
      }
      FiberAt at;
      try {
        at = FiberAt::parse(poly_at);
      } catch (const std::exception& e) {
        throw UsageError(e.what());
      }
      report["result"] = poly_report(poly_cmd, load_entry_file(path), at, mod, poly_params);
    } else if (verify->parsed()) {
      report["subcommand"] = "verify";
      std::vector<std::string> paths;
      if (verify_id == "all") {
        for (const auto& k : dataset_keys()) paths.push_back(entry_path(k, polys_dir()));
      } else {
        paths.push_back(entry_path(verify_id, polys_dir()));
      }
      std::vector<json> results(paths.size());
      std::vector<char> ok(paths.size(), 0);
      std::atomic<std::size_t> next{0};
      VerifyOptions opt;
      opt.seed = seed;
      auto worker = [&] {
        for (std::size_t i; (i = next++) < paths.size();) {
          try {
            auto b = verify_entry(load_entry_file(paths[i]), opt);
            results[i] = b.to_json();
            ok[i] = b.passed();
          } catch (const std::exception& e) {
            std::string key = std::filesystem::path(paths[i]).stem().string();
            results[i] = {{"key", key}, {"passed", false}, {"error", e.what()}};
          }
        }
      };
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < std::min<std::size_t>(jobs, paths.size()); ++w) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
      for (const auto& p : paths) digest.add(read_file(p));
      report["result"] = results;
      status = std::all_of(ok.begin(), ok.end(), [](char b) { return b != 0; }) ? 0 : kCheckFailed;
      if (!verify_json) {
        for (const auto& r : results) {
          std::cout << (r.value("passed", false) ? "PASS " : "FAIL ") << r["key"].get<std::string>();
          if (r.contains("error")) std::cout << "  error: " << r["error"].get<std::string>();
          std::cout << "\n";
          if (!r.contains("checks")) continue;
          for (const auto& c : r["checks"]) {
            std::cout << "  " << (c["passed"].get<bool>() ? "ok   " : "FAIL ") << c["name"].get<std::string>() << "  ("
                      << c["anchor"].get<std::string>() << ")\n";
          }
        }
        return status;
      }
    } else if (deform->parsed()) {
      report["subcommand"] = "deform";
      std::string shape_path = entry_path(deform_shape, shapes_dir().string());
      std::string seed_path = entry_path(deform_seed, shapes_dir().string());
      digest.add(read_file(shape_path));
      digest.add(read_file(seed_path));
      ScalarMode mode;
      if (!deform_padic.empty()) {
        mode.padic = true;
        try {
          mode.p = mpz_class(deform_padic[0]);
          mode.k = std::stoi(deform_padic[1]);
        } catch (const std::exception&) {
          throw UsageError("--padic needs an integer prime and precision");
        }
      } else {
        mode.digits = deform_digits;
      }
      report["result"] = deform_report(shape_path, read_json(seed_path), deform_path, mode);
    } else if (algdep->parsed()) {
      report["subcommand"] = "algdep";
      digest.add(read_file(algdep_file));
      json in = read_json(algdep_file);
      // Accepts a bare samples file or the full report written by deform.
      if (in.contains("result")) in = in["result"];
      if (in.contains("samples") && in["samples"].is_object()) in = in["samples"];
      report["result"] = algdep_report(in, algdep_deg[0], algdep_deg[1], algdep_search, algdep_held);
    } else if (dataset->parsed()) {
      report["subcommand"] = "dataset";
      report["result"] = dataset_list();
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    report["error"] = e.what();
    status = kCheckFailed;
  }

  report["inputs_digest"] = digest.hex();
  report["elapsed_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << (compact ? report.dump() : report.dump(2)) << "\n";
  return status;
}
