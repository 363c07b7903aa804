#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace anita {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // measured vs bound values
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

struct VerifyOptions {
  // Debug hook: multiplies every stepsize the suite feeds the solvers and
  // bounds. Anything but 1.0 must trip at least the feasibility check.
  double eta_scale = 1.0;
  // When false the property checks have no problems to run on; the report
  // comes back empty and failing.
  bool use_default_registry = true;
  // Restrict to these check ids (empty = all).
  std::vector<int> only;
  std::filesystem::path golden_dir = "tests/golden";
  // Scratch space for checks that write artifacts; a temp dir when empty.
  std::filesystem::path work_dir;
};

VerifyReport verify_suite(const VerifyOptions& opts = {});

void print_report(const VerifyReport& report, std::ostream& out);

// Regenerates the golden pass-count file used by the regression check.
void write_golden_files(const std::filesystem::path& golden_dir);

}  // namespace anita
