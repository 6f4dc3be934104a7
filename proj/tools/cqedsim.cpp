// cqedsim: transmission spectra and eigenstructure of N multilevel atoms
// collectively coupled to one cavity mode, plus the small-N brute-force
// verification battery.
//
//   cqedsim <constants|coupling|eigenmap|spectrum|oracle>
//           [--config file.json] [--out file] [--threads k] [--threshold]
//
// Exit codes: 0 success, 1 validation/usage error, 2 oracle tolerance failure.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "cqed/config.hpp"
#include "cqed/run.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cqed::ConfigError("cannot read config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collective cavity QED simulator for the Rb-87 D2 F=2 line"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  unsigned threads = 1;
  bool threshold = false;

  for (const char* name :
       {"constants", "coupling", "eigenmap", "spectrum", "oracle"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON run configuration");
    sub->add_option("--out", out_path, "output file (default: stdout)");
    sub->add_option("--threads", threads, "worker threads for grid sweeps")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--threshold", threshold, "apply the detector floor");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string text =
        config_path.empty() ? std::string() : read_file(config_path);
    const cqed::RunConfig config = cqed::parse_config(text);

    cqed::RunOptions options;
    options.out_path = out_path;
    options.threads = threads;
    options.threshold = threshold;

    const auto subcommand =
        cqed::subcommand_from_name(app.get_subcommands().front()->get_name());
    cqed::run(config, subcommand, options);
    return 0;
  } catch (const cqed::OracleFailure& e) {
    std::cerr << "oracle: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
