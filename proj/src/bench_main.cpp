// Benchmark: OpenMP-parallel kernels against their serial reference
// implementations.  Each pair is timed on the same input and the outputs are
// compared for equality, so the run doubles as an agreement check.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "cgt/domain.hpp"
#include "cgt/grpgen.hpp"
#include "cgt/orders.hpp"
#include "cgt/perm.hpp"

using namespace cgt;

namespace {

double now() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <class F>
double time_best(F f, int reps) {
  double best = 1e30;
  for (int i = 0; i < reps; ++i) {
    double t0 = now();
    f();
    best = std::min(best, now() - t0);
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  int threads = 0;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--threads") threads = std::atoi(argv[i + 1]);
  if (threads > 0) omp_set_num_threads(threads);
  std::printf("threads: %d\n", threads > 0 ? threads : omp_get_max_threads());
  std::printf("%-28s %12s %12s %8s %s\n", "kernel", "parallel (s)", "serial (s)",
              "speedup", "agree");

  // orbit frontier BFS on the 2^20-point vector domain of a subfield
  // orthogonal group reinterpreted over GF(4)
  {
    GroupWitness inner = classical_group(parse_group_spec("OmegaMinus:10:2"));
    GroupWitness big = subfield_reinterpret(inner, field(2, 2));
    ActionDomain d = vector_domain(*big.F, 10);
    auto perms = perms_of(d, big.gens);
    Pt seed = 123456;
    std::vector<Pt> par_out, ser_out;
    double tp = time_best([&] { par_out = orbit(perms, seed, true); }, 5);
    double ts = time_best([&] { ser_out = orbit(perms, seed, false); }, 5);
    std::printf("%-28s %12.4f %12.4f %7.2fx %s\n", "orbit (2^20 pts)", tp, ts,
                ts / tp, par_out == ser_out ? "yes" : "NO");
  }

  // order-arithmetic claim scans over the full default grid
  for (const std::string& id : audit_claim_ids()) {
    std::vector<AuditResult> par_res, ser_res;
    double tp = time_best([&] { par_res = audit_claim(id, {}, true); }, 3);
    double ts = time_best([&] { ser_res = audit_claim(id, {}, false); }, 3);
    bool agree = par_res.size() == ser_res.size();
    for (size_t i = 0; agree && i < par_res.size(); ++i)
      agree = par_res[i].params == ser_res[i].params &&
              par_res[i].satisfied == ser_res[i].satisfied;
    std::printf("%-28s %12.4f %12.4f %7.2fx %s\n", ("audit " + id).c_str(), tp, ts,
                ts / tp, agree ? "yes" : "NO");
  }
  return 0;
}
