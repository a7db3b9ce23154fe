// Command-line front end: invariants, tables, verification and diagram dumps.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pencilcount/cache.hpp"
#include "pencilcount/dump.hpp"
#include "pencilcount/invariants.hpp"
#include "pencilcount/verify.hpp"

namespace {

using namespace pencilcount;

struct Config {
  std::optional<unsigned> jobs;
  std::string cache_path = "./pencilcount-cache.jsonl";
  bool no_cache = false;
  std::string convention = std::string(convention_name(kDefaultConvention));
  bool force_compute = false;
  bool quiet = false;
  bool timings = false;
  std::size_t state_cap = ScanOptions{}.state_cap;
  std::string format = "text";

  int a = 0, b = 0, d = 0, l = 0, dmax = 0;
  std::string suite = "all";
  bool extended = false;
  std::string dump = "json";
};

unsigned resolve_jobs(const Config& cfg) {
  if (cfg.jobs) {
    if (*cfg.jobs == 0) throw InputError("--jobs must be at least 1");
    return *cfg.jobs;
  }
  if (const char* env = std::getenv("PENCILCOUNT_JOBS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw InputError(std::string("PENCILCOUNT_JOBS must be a positive integer, got '") + env + "'");
  }
  return default_jobs();
}

void print_values(const std::string& format, const std::vector<std::tuple<int, int, Integer>>& rows) {
  if (format == "csv") {
    std::cout << "d,l,value\n";
    for (const auto& [d, l, v] : rows) std::cout << d << ',' << l << ',' << to_decimal(v) << '\n';
  } else if (format == "json") {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [d, l, v] : rows) arr.push_back({{"d", d}, {"l", l}, {"value", to_decimal(v)}});
    std::cout << arr.dump(2) << '\n';
  }
}

// Rows l, columns odd d, as in the published tables.
void print_table_text(int dmax, const std::vector<std::tuple<int, int, Integer>>& rows) {
  std::vector<int> degrees;
  for (int d = 1; d <= dmax; d += 2) degrees.push_back(d);
  std::vector<std::size_t> width;
  for (int d : degrees) {
    std::size_t w = std::to_string(d).size();
    for (const auto& [dd, l, v] : rows) {
      if (dd == d) w = std::max(w, to_decimal(v).size());
    }
    width.push_back(w);
  }
  auto cell = [](const std::string& s, std::size_t w) { return std::string(w - s.size(), ' ') + s; };
  const std::size_t lw = std::max<std::size_t>(3, std::to_string(dmax).size());
  std::cout << cell("l\\d", lw);
  for (std::size_t i = 0; i < degrees.size(); ++i) std::cout << "  " << cell(std::to_string(degrees[i]), width[i]);
  std::cout << '\n';
  for (int l = 0; l < (degrees.empty() ? 0 : degrees.back()); ++l) {
    std::cout << cell(std::to_string(l), lw);
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      std::string s;
      for (const auto& [dd, ll, v] : rows) {
        if (dd == degrees[i] && ll == l) s = to_decimal(v);
      }
      std::cout << "  " << cell(s, width[i]);
    }
    std::cout << '\n';
  }
}

int run(int argc, char** argv) {
  Config cfg;
  CLI::App app{"Exact Gromov-Witten and Welschinger invariants of the quadric and of projective 3-space"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kEngineVersion));

  app.add_option("--jobs", cfg.jobs, "Worker threads (default: PENCILCOUNT_JOBS or all cores)");
  app.add_option("--cache", cfg.cache_path, "Result cache file (JSON lines)");
  app.add_flag("--no-cache", cfg.no_cache, "Do not read or write the result cache");
  app.add_option("--convention", cfg.convention, "Real multiplicity rule")
      ->check(CLI::IsMember({"alt-incident", "alt-origin", "binom-incident", "binom-origin", "conjugation"}));
  app.add_flag("--force-compute", cfg.force_compute, "Evaluate the degree formula even where it is known to vanish");
  app.add_flag("--quiet", cfg.quiet, "Suppress warnings; refused for conventions that fail the fit");
  app.add_flag("--timings", cfg.timings, "Report elapsed time on standard error");
  app.add_option("--state-cap", cfg.state_cap, "Maximum scan states per label before giving up")
      ->check(CLI::PositiveNumber);

  auto* gw3 = app.add_subcommand("gw3", "Rational space curves of degree D through 2D points");
  gw3->add_option("--d", cfg.d, "Degree")->required();

  auto* w3 = app.add_subcommand("w3", "Welschinger invariant of real space curves with L conjugate pairs");
  w3->add_option("--d", cfg.d, "Degree")->required();
  w3->add_option("--l", cfg.l, "Number of conjugate pairs")->required();

  auto* gw2 = app.add_subcommand("gw-quadric", "Rational curves of bidegree (A,B) in the quadric");
  gw2->add_option("--a", cfg.a)->required();
  gw2->add_option("--b", cfg.b)->required();

  auto* w2 = app.add_subcommand("w-quadric", "Welschinger invariant of the quadric");
  w2->add_option("--a", cfg.a)->required();
  w2->add_option("--b", cfg.b)->required();
  w2->add_option("--l", cfg.l)->required();

  auto* table = app.add_subcommand("table", "W(d,l) for odd d <= DMAX and l <= d-1");
  table->add_option("--dmax", cfg.dmax)->required()->check(CLI::PositiveNumber);
  table->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "csv", "json"}));

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", cfg.suite)->check(CLI::IsMember(suite_names()));
  verify->add_flag("--extended", cfg.extended, "Include the d=11 column");
  verify->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));

  auto* diagrams = app.add_subcommand("diagrams", "Dump the floor diagrams of a bidegree");
  diagrams->add_option("--a", cfg.a)->required();
  diagrams->add_option("--b", cfg.b)->required();
  diagrams->add_option("--dump", cfg.dump)->check(CLI::IsMember({"json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "ERROR " << static_cast<int>(ExitCode::usage) << ": " << e.what() << '\n';
    std::cerr << app.help();
    return static_cast<int>(ExitCode::usage);
  }

  const auto started = std::chrono::steady_clock::now();
  const Convention conv = parse_convention(cfg.convention);
  if (conv != kDefaultConvention) {
    if (cfg.quiet) {
      throw InputError("convention " + cfg.convention + " does not reproduce the tables; --quiet output is refused");
    }
    std::cerr << "WARNING: convention " << cfg.convention << " does not reproduce the published tables\n";
  }

  std::unique_ptr<ResultCache> cache;
  if (!cfg.no_cache) cache = std::make_unique<ResultCache>(cfg.cache_path);

  EngineOptions eo;
  eo.convention = conv;
  eo.jobs = resolve_jobs(cfg);
  eo.state_cap = cfg.state_cap;
  eo.force_compute = cfg.force_compute;
  eo.cache = cache.get();
  const Engine eng(eo);

  int status = 0;
  if (*gw3) {
    std::cout << to_decimal(eng.gw_cp3(cfg.d)) << '\n';
  } else if (*w3) {
    std::cout << to_decimal(eng.w_rp3(cfg.d, cfg.l)) << '\n';
  } else if (*gw2) {
    std::cout << to_decimal(eng.gw_quadric(cfg.a, cfg.b)) << '\n';
  } else if (*w2) {
    std::cout << to_decimal(eng.w_quadric(cfg.a, cfg.b, cfg.l)) << '\n';
  } else if (*table) {
    std::vector<std::tuple<int, int, Integer>> rows;
    for (int d = 1; d <= cfg.dmax; d += 2) {
      for (int l = 0; l < d; ++l) rows.emplace_back(d, l, eng.w_rp3(d, l));
    }
    if (cfg.format == "text") {
      print_table_text(cfg.dmax, rows);
    } else {
      print_values(cfg.format, rows);
    }
  } else if (*verify) {
    VerifyOptions vo;
    vo.jobs = eo.jobs;
    vo.extended = cfg.extended;  // verification always recomputes, bypassing the cache
    const auto rep = run_suite(cfg.suite, vo);
    if (cfg.format == "json") {
      std::cout << rep.to_json().dump(2) << '\n';
    } else {
      std::cout << rep.to_text();
    }
    if (!rep.passed()) {
      std::cerr << "ERROR " << static_cast<int>(ExitCode::verification_failure) << ": " << rep.failures()
                << " check(s) failed in suite " << cfg.suite << '\n';
      status = static_cast<int>(ExitCode::verification_failure);
    }
  } else if (*diagrams) {
    std::cout << dump_diagrams(Bidegree(cfg.a, cfg.b), conv).dump(2) << '\n';
  }

  if (cfg.timings) {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::cerr << "elapsed " << s << " s\n";
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const pencilcount::Error& e) {
    std::cerr << "ERROR " << static_cast<int>(e.code()) << ": " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::bad_alloc&) {
    std::cerr << "ERROR 3: out of memory\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "ERROR 2: " << e.what() << '\n';
    return 2;
  }
}
