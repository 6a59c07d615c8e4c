#include "minklab/verify.hpp"

#include <cstdio>

// One line per acceptance criterion; the exit status is the number of failures.
int main() {
  minklab::VerifyOptions opt;
  opt.filter = "acceptance.";
  int failed = 0;
  minklab::run_checks(opt, [&](const minklab::CheckResult& r) {
    std::printf("%s\n", minklab::format_result(r).c_str());
    std::fflush(stdout);
    failed += !r.passed;
  });
  std::printf("%s: %d acceptance criteria failed\n", failed ? "FAIL" : "PASS", failed);
  return failed;
}
