// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>

#include "selftest.hpp"

int main() {
  cli::Selftest st(cli::SelftestOptions{});
  int failed = 0;
  st.run_all([&](const cli::CriterionResult& r) {
    const bool ok = r.pass();
    failed += ok ? 0 : 1;
    std::printf("%s  criterion %2d  %-32s [%s, %.1fs]\n", ok ? "PASS" : "FAIL", r.id, r.title.c_str(),
                cli::to_string(r.tier), r.seconds);
    for (const auto& m : r.metrics) {
      if (m.tolerance > 0.0) {
        std::printf("        %-44s %.3e  tol %.1e%s\n", m.name.c_str(), m.value, m.tolerance, m.pass ? "" : "  VIOLATED");
      } else {
        std::printf("        %-44s %.3e  (info)\n", m.name.c_str(), m.value);
      }
    }
    if (!r.error.empty()) std::printf("        error: %s\n", r.error.c_str());
    std::fflush(stdout);
  });
  std::printf("%d of 12 criteria passed\n", 12 - failed);
  return failed == 0 ? 0 : 1;
}
