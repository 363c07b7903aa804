// Acceptance harness: runs every verification check and prints one
// pass/fail line per check. Exit code 0 only when all pass.

#include <cstring>
#include <iostream>
#include <string>

#include "anita/verify.hpp"

int main(int argc, char** argv) {
  anita::VerifyOptions opts;
  bool write_golden = false;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--golden-dir" && i + 1 < argc) {
      opts.golden_dir = argv[++i];
    } else if (arg == "--work-dir" && i + 1 < argc) {
      opts.work_dir = argv[++i];
    } else if (arg == "--write-golden") {
      write_golden = true;
    } else {
      std::cerr << "usage: anita_acceptance [--golden-dir DIR] [--work-dir DIR]"
                   " [--write-golden]\n";
      return 2;
    }
  }
  if (write_golden) {
    anita::write_golden_files(opts.golden_dir);
    std::cout << "golden files written to " << opts.golden_dir << "\n";
    return 0;
  }
  anita::VerifyReport report = anita::verify_suite(opts);
  anita::print_report(report, std::cout);
  return report.all_pass() ? 0 : 1;
}
