#include <cstdio>
#include <cstdlib>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "pcity/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite: one PASS/FAIL line per criterion"};
  std::vector<int> only;
  pcity::acceptance::Options opt;
  opt.threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--only", only, "Run only these criteria (1-18)")->check(CLI::Range(1, pcity::acceptance::kCriterionCount));
  app.add_option("--seed", opt.seed, "Master seed");
  app.add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);
  if (only.empty()) {
    for (int id = 1; id <= pcity::acceptance::kCriterionCount; ++id) only.push_back(id);
  }
  int failed = 0;
  for (int id : only) {
    const auto out = pcity::acceptance::run(id, opt);
    std::printf("%s\n", pcity::acceptance::summary_line(out).c_str());
    std::fflush(stdout);
    if (!out.pass()) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(only.size()) - failed, only.size());
  return failed == 0 ? 0 : 1;
}
