// Acceptance suite: one line per criterion, exit status 0 iff all pass.
#include "cybeforge/sweep.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

using namespace cybeforge;

int main(int argc, char **argv) {
  SweepOptions opts;
  if (const char *s = std::getenv("CYBE_FORGE_SEED")) {
    opts.seed = std::stoull(s);
  }
  bool verbose = argc > 1 && std::string(argv[1]) == "-v";

  SweepContext ctx = prepare_sweep(opts);
  std::printf("acceptance: %zu algebras, %zu homogeneous families, seed %llu\n", ctx.algebras.size(),
              ctx.families.size(), static_cast<unsigned long long>(opts.seed));
  int failed = 0;
  for (int k = 1; k <= criterion_count; ++k) {
    auto start = std::chrono::steady_clock::now();
    Report rep = run_criterion(k, ctx);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::size_t checks = 0;
    for (const auto &c : rep.checks()) {
      checks += c.status == Status::pass || c.status == Status::fail;
    }
    const Check *bad = rep.first_failure();
    std::printf("criterion %2d: %s  %s (%zu checks, %.0f ms)\n", k, bad ? "FAIL" : "PASS",
                criterion_title(k).c_str(), checks, ms);
    if (bad) {
      ++failed;
      std::printf("    first failure: %s %s\n", bad->name.c_str(), bad->witness.dump().c_str());
    }
    if (verbose) {
      for (const auto &c : rep.checks()) {
        if (c.status != Status::pass) {
          std::printf("    [%s] %s %s %s\n", status_name(c.status).c_str(), c.name.c_str(), c.detail.c_str(),
                      c.witness.is_null() ? "" : c.witness.dump().c_str());
        }
      }
    }
  }
  std::printf("acceptance: %d of %d criteria failed\n", failed, criterion_count);
  return failed == 0 ? 0 : 1;
}
