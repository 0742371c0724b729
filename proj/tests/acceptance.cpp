// One line per acceptance criterion; exit status 1 if any fails.
// Sample sizes: 10^6 for criteria 1, 7 and 8, 10^5 elsewhere.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "thorin/random.hpp"
#include "thorin/suites.hpp"

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  const bool verbose = argc > 1 && std::string(argv[1]) == "-v";
  int failed = 0;
  for (int id = 1; id <= thorin::kCriteria; ++id) {
    const std::size_t n = (id == 1 || id == 7 || id == 8) ? 1000000 : 100000;
    const auto c = thorin::run_criterion(id, n, thorin::kDefaultSeed);
    std::size_t bad = 0;
    for (const auto& r : c.reports) bad += !r.pass;
    std::printf("criterion %2d: %s  %s  [%zu/%zu checks, n=%zu, %.1f s]\n", id, c.pass() ? "PASS" : "FAIL",
                c.title.c_str(), c.reports.size() - bad, c.reports.size(), n, c.seconds);
    for (const auto& r : c.reports)
      if (verbose || !r.pass)
        std::printf("    %s %s: statistic %.6g, threshold %.6g%s%s\n", r.pass ? "ok  " : "FAIL", r.name.c_str(),
                    r.statistic, r.threshold, r.notes.empty() ? "" : "; ", r.notes.c_str());
    failed += !c.pass();
  }
  std::printf("%d of %d criteria pass\n", thorin::kCriteria - failed, thorin::kCriteria);
  return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
