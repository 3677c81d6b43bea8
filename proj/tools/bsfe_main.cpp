#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "bsfe/job.hpp"
#include "json.hpp"

namespace {

int listFixtures(const std::string& dir) {
  std::ifstream in(std::filesystem::path(dir) / "catalog.json");
  if (!in) {
    std::cerr << "no fixture catalog in " << dir << "\n";
    return bsfe::kExitInput;
  }
  auto catalog = nlohmann::json::parse(in);
  for (const auto& e : catalog)
    std::cout << e.at("file").get<std::string>() << "  [exit " << e.at("expectedExit").get<int>() << "]  "
              << e.at("description").get<std::string>() << "\n";
  return bsfe::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bernstein-Sato functional equations, multiplier and test ideals of monomial ideals"};
  std::string job, format = "json", fixtureDir = BSFE_FIXTURE_DIR;
  int threads = 1;
  std::size_t maxUnknowns = 0;
  bool list = false, tasks = false;
  app.add_option("--job", job, "job file (JSON)");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--threads", threads, "worker threads for grid checks")->check(CLI::PositiveNumber);
  app.add_option("--max-unknowns", maxUnknowns, "cap on ansatz unknowns for searches");
  app.add_flag("--list-fixtures", list, "print the shipped fixture catalog");
  app.add_option("--fixtures-dir", fixtureDir, "fixture directory for --list-fixtures");
  app.add_flag("--tasks", tasks, "print the supported task names");
  CLI11_PARSE(app, argc, argv);

  if (list) return listFixtures(fixtureDir);
  if (tasks) {
    for (const auto& t : bsfe::jobTasks()) std::cout << t << "\n";
    return bsfe::kExitOk;
  }
  if (job.empty()) {
    std::cerr << "--job is required\n" << app.help();
    return bsfe::kExitInput;
  }
  bsfe::JobOptions opt;
  opt.threads = threads;
  if (maxUnknowns > 0) opt.maxUnknowns = maxUnknowns;
  auto out = bsfe::runJobFile(job, opt);
  if (format == "table")
    std::cout << bsfe::renderTable(out.report);
  else
    std::cout << out.report.dump(2) << "\n";
  if (out.report.contains("error")) {
    const auto& e = out.report["error"];
    std::cerr << "error: " << e["message"].get<std::string>();
    if (e.contains("line")) std::cerr << " (line " << e["line"] << ", column " << e["column"] << ")";
    std::cerr << "\n";
  }
  return out.exitCode;
}
