// Command-line entry point: scenario verification, the exhaustive pair
// explorer, the minus-2-subspace special case, order-arithmetic audits,
// Zsigmondy primitive prime divisors, and exact order formulas.
//
// Exit codes: 0 all requested verdicts match expectations, 1 verdict
// mismatch, 2 configuration error, 3 inconclusive (cap or scale).

#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cgt/orders.hpp"
#include "cgt/table1.hpp"

namespace {

using namespace cgt;

constexpr int kExitOk = 0, kExitMismatch = 1, kExitConfig = 2, kExitInconclusive = 3;

// CGT_MEMORY_CAP_MB bounds the estimated working-set size of a run; a
// scenario whose estimate exceeds the cap is rejected as a config error.
long long memory_cap_mb() {
  const char* v = std::getenv("CGT_MEMORY_CAP_MB");
  if (!v) return 0;
  return std::atoll(v);
}

long long estimate_mb(const std::string& line) {
  if (line == "8") return 2600;   // conjugation-orbit breadth-first search
  if (line == "sec2-q4") return 2600;  // 6.5M-point domain, ~12 permutations
  if (line == "7" || line == "13" || line == "14") return 400;
  return 200;
}

bool cap_allows(const std::string& line, std::string& why) {
  long long cap = memory_cap_mb();
  if (cap > 0 && estimate_mb(line) > cap) {
    why = "estimated working set " + std::to_string(estimate_mb(line)) +
          " MB exceeds CGT_MEMORY_CAP_MB=" + std::to_string(cap);
    return false;
  }
  return true;
}

void strip_timing(FactorizationReport& r, bool timing) {
  if (!timing) r.elapsed_ms = 0;
}

int expected_exit(const ScenarioLine& sc, const LineResult& r) {
  if (sc.feasibility == Feasibility::order_consistency_only) return kExitInconclusive;
  bool inconclusive = false;
  if (r.normalizer_report.verdict == Verdict::inconclusive_cap)
    inconclusive = true;
  else if (r.normalizer_report.verdict != Verdict::factorizes)
    return kExitMismatch;
  if (r.has_centralizer_report) {
    Verdict want = sc.centralizer_sqrt ? Verdict::factorizes : Verdict::fails;
    if (r.centralizer_report.verdict == Verdict::inconclusive_cap)
      inconclusive = true;
    else if (r.centralizer_report.verdict != want)
      return kExitMismatch;
  }
  return inconclusive ? kExitInconclusive : kExitOk;
}

int run_line(const std::string& line, int n, int q, uint64_t seed, bool timing, bool markdown,
             const std::string& out_path) {
  std::string why;
  if (!cap_allows(line, why)) {
    std::cerr << "config error: " << why << "\n";
    return kExitConfig;
  }
  LineResult r;
  try {
    r = verify_line(line, n, q, seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::logic_error& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kExitMismatch;
  }
  strip_timing(r.normalizer_report, timing);
  strip_timing(r.centralizer_report, timing);
  std::string json = r.to_json();
  std::cout << json << "\n";
  if (markdown) std::cout << markdown_summary({r});
  if (!out_path.empty()) std::ofstream(out_path) << json << "\n";
  return expected_exit(scenario(line), r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for normalizer and centralizer factorizations of almost simple groups"};
  app.require_subcommand(1);

  uint64_t seed = 1;
  bool timing = false;
  int threads = 1;
  std::string out_path;
  app.add_option("--seed", seed, "seed recorded in every report")->capture_default_str();
  app.add_flag("--timing", timing, "include wall-clock fields (off: zeroed for byte-stable output)");
  app.add_option("--threads", threads, "OpenMP thread count (verdicts are schedule-independent)")
      ->capture_default_str();
  app.add_option("--out", out_path, "also write the JSON report to this path");

  // verify
  auto* verify = app.add_subcommand("verify", "run one catalogued line at (n, q)");
  std::string v_line;
  int v_n = 0, v_q = 0;
  bool v_md = false;
  verify->add_option("--line", v_line, "line id, 1..14")->required();
  verify->add_option("--n", v_n, "dimension / degree")->required();
  verify->add_option("--q", v_q, "field size (0 for symmetric groups)");
  verify->add_flag("--markdown", v_md, "also print the markdown summary row");

  // explore
  auto* explore = app.add_subcommand("explore", "exhaustive prime-order pair explorer on a control group");
  std::string e_group;
  explore->add_option("--group", e_group, "M11, Sym(5)..Sym(7), Alt(5)..Alt(7), PSL2(13), PGammaL2(8)")
      ->required();

  // section2
  auto* sec2 = app.add_subcommand("section2", "minus-type 2-subspace special case");
  int s_q = 4;
  sec2->add_option("--q", s_q, "4 (computed) or 16 (inconclusive by scale)")->capture_default_str();

  // audit
  auto* audit = app.add_subcommand("audit", "order-arithmetic claim scans (CSV output)");
  std::string a_claim;
  int a_nmax = 24;
  long long a_qmax = 81;
  bool a_serial = false;
  audit->add_option("--claim", a_claim, "claim id (default: all claims)");
  audit->add_option("--n-max", a_nmax, "grid bound on n")->capture_default_str();
  audit->add_option("--q-max", a_qmax, "grid bound on q")->capture_default_str();
  audit->add_flag("--serial", a_serial, "use the serial reference scan");

  // zsigmondy
  auto* zsig = app.add_subcommand("zsigmondy", "primitive prime divisors of q^n - 1");
  long long z_q = 0;
  int z_n = 0;
  zsig->add_option("--q", z_q, "prime power base")->required();
  zsig->add_option("--n", z_n, "exponent, >= 2")->required();

  // orders
  auto* orders = app.add_subcommand("orders", "exact group order by product formula");
  std::string o_family;
  int o_n = 0;
  long long o_q = 0;
  orders->add_option("--family", o_family, "PSL, GU, Sp, Omega-, Sym, ...")->required();
  orders->add_option("--n", o_n, "dimension / degree")->required();
  orders->add_option("--q", o_q, "field size (ignored for Sym/Alt/M11)");

  // report
  auto* report = app.add_subcommand("report", "scenario-file runs and the registry table");
  std::string r_config;
  bool r_registry = false;
  report->add_option("--config", r_config, "key = value scenario file");
  report->add_flag("--registry", r_registry, "print the scenario registry as markdown");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*verify) return run_line(v_line, v_n, v_q, seed, timing, v_md, out_path);

    if (*explore) {
      NegativeControlReport r;
      try {
        r = negative_control(e_group);
      } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
      }
      for (auto& p : r.pairs) strip_timing(p, timing);
      std::string json = r.to_json();
      std::cout << json << "\n";
      if (!out_path.empty()) std::ofstream(out_path) << json << "\n";
      return kExitOk;
    }

    if (*sec2) {
      std::string why;
      if (s_q == 4 && !cap_allows("sec2-q4", why)) {
        std::cerr << "config error: " << why << "\n";
        return kExitConfig;
      }
      Section2Report r;
      try {
        r = verify_section2(s_q);
      } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
      } catch (const std::logic_error& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kExitMismatch;
      }
      if (!timing) r.elapsed_ms = 0;
      std::string json = r.to_json();
      std::cout << json << "\n";
      if (!out_path.empty()) std::ofstream(out_path) << json << "\n";
      return r.inconclusive_by_scale ? kExitInconclusive : kExitOk;
    }

    if (*audit) {
      std::vector<std::string> ids = a_claim.empty() ? audit_claim_ids() : std::vector<std::string>{a_claim};
      AuditRange range{a_nmax, a_qmax};
      std::ostringstream csv;
      csv << "claim";
      // header uses the widest parameter list
      size_t width = 0;
      for (const auto& id : ids) width = std::max(width, audit_param_names(id).size());
      for (size_t i = 0; i < width; ++i) csv << ",p" << i;
      csv << ",satisfied\n";
      for (const auto& id : ids) {
        const auto& names = audit_param_names(id);
        for (const auto& res : audit_claim(id, range, !a_serial)) {
          csv << id;
          for (size_t i = 0; i < width; ++i) {
            csv << ",";
            if (i < res.params.size()) csv << names[i] << "=" << res.params[i];
          }
          csv << "," << (res.satisfied ? "true" : "false") << "\n";
        }
      }
      std::cout << csv.str();
      if (!out_path.empty()) std::ofstream(out_path) << csv.str();
      return kExitOk;
    }

    if (*zsig) {
      PpdResult r = zsigmondy(z_q, z_n);
      if (r.ppds.empty()) {
        std::cout << "none (exception (" << z_n << "," << z_q << "))\n";
      } else {
        for (size_t i = 0; i < r.ppds.size(); ++i)
          std::cout << r.ppds[i].get_str() << (i + 1 < r.ppds.size() ? " " : "\n");
      }
      return kExitOk;
    }

    if (*orders) {
      std::cout << group_order(o_family, o_n, o_q).get_str() << "\n";
      return kExitOk;
    }

    if (*report) {
      if (r_registry) {
        std::cout << "| line | group | x | y | side conditions | centralizer | feasibility |\n";
        std::cout << "|---|---|---|---|---|---|---|\n";
        for (const auto& sc : scenario_table())
          std::cout << "| " << sc.id << " | " << sc.group_shape << " | " << sc.x_desc << " | "
                    << sc.y_desc << " | " << sc.side_conditions << " | "
                    << (sc.centralizer_sqrt ? "factorizes" : "fails") << " | "
                    << to_string(sc.feasibility) << " |\n";
        return kExitOk;
      }
      if (r_config.empty()) {
        std::cerr << "config error: report needs --config or --registry\n";
        return kExitConfig;
      }
      std::ifstream in(r_config);
      if (!in) {
        std::cerr << "config error: cannot read " << r_config << "\n";
        return kExitConfig;
      }
      std::stringstream buf;
      buf << in.rdbuf();
      ScenarioConfig cfg;
      try {
        cfg = parse_scenario_config(buf.str());
      } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
      }
      return run_line(cfg.line, cfg.n, cfg.q, cfg.seed, timing, /*markdown=*/true, out_path);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  }
  return kExitConfig;
}
