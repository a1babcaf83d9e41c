// Batch front end: sonic_teleport <command> --config <path> [--output csv|json] [--out <path>]

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sonic/pipeline.hpp"

namespace {

int report(std::string_view kind, std::string_view message, int code) {
  std::cerr << sonic::error_record(kind, message, code) << std::endl;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sonic black hole teleportation pipeline"};
  app.set_version_flag("--version", std::string(sonic::kToolVersion));

  std::string command;
  std::string config_path;
  std::string output;
  std::string out_path;
  app.add_option("command", command, "horizon | spectrum | squeeze | entangle | teleport | sweep")
      ->required()
      ->check(CLI::IsMember({"horizon", "spectrum", "squeeze", "entangle", "teleport", "sweep"}));
  app.add_option("--config", config_path, "configuration file")->required();
  app.add_option("--output", output, "csv | json (overrides the config)")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "write the artifact here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("UsageError", e.what(), 2);
  }

  try {
    std::ifstream in(config_path);
    if (!in) {
      throw sonic::Error(sonic::ErrorKind::IoError, "cannot open config '" + config_path + "'");
    }
    std::stringstream text;
    text << in.rdbuf();
    sonic::RunConfig cfg = sonic::parse_config(text.str());
    if (!output.empty()) {
      cfg.output = output == "json" ? sonic::OutputFormat::json : sonic::OutputFormat::csv;
    }

    const auto base_dir = std::filesystem::absolute(config_path).parent_path();
    const sonic::Table table = sonic::dispatch(cfg, *sonic::parse_command(command), base_dir);
    const std::string artifact = sonic::render(table, cfg.output);

    if (out_path.empty()) {
      std::cout << artifact;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        throw sonic::Error(sonic::ErrorKind::IoError, "cannot write '" + out_path + "'");
      }
      out << artifact;
    }
    return 0;
  } catch (const sonic::Error& e) {
    return report(e.name(), e.what(), sonic::exit_code_for(e));
  } catch (const std::exception& e) {
    return report("InternalError", e.what(), 1);
  }
}
