// Prints one PASS/FAIL line per acceptance criterion; nonzero exit on failure.

#include <iostream>

#include <CLI11.hpp>

#include "dhl/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance battery"};
  std::string level = "full";
  std::vector<int> only;
  bool fault = false, timing = true;
  app.add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
  app.add_option("--only", only, "criterion ids")->delimiter(',');
  app.add_flag("--inject-kernel-sign-fault", fault);
  app.add_flag("!--no-timing", timing, "omit runtimes");
  CLI11_PARSE(app, argc, argv);

  dhl::acceptance::Options opt;
  opt.full = level == "full";
  opt.only.insert(only.begin(), only.end());
  opt.kernel_sign_fault = fault;
  int failed = 0, total = 0;
  for (int id = 1; id <= dhl::acceptance::kCriteria; ++id) {
    if (!opt.only.empty() && !opt.only.count(id)) continue;
    auto r = dhl::acceptance::run_criterion(id, opt);
    std::cout << dhl::acceptance::format_line(r, timing) << std::endl;
    ++total;
    failed += r.pass ? 0 : 1;
  }
  std::cout << (total - failed) << "/" << total << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
