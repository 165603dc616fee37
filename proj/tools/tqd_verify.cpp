// tqd-verify: runs the verification suites and writes a JSON (or CSV) report.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "tqd/commands.hpp"

namespace {

struct FlagSpec {
  const char* name;
  const char* help;
};

constexpr FlagSpec kFlags[] = {
    {"a", "coupling a"},
    {"b", "coupling b"},
    {"c", "coupling c"},
    {"theta", "preparation angle in (0, pi/2)"},
    {"grid", "scan N evenly spaced angles in (0, pi/2)"},
    {"q", "overlap weight of the toy model, in (0, 1]"},
    {"samples", "Monte Carlo samples per preparation"},
    {"seed", "Monte Carlo seed"},
    {"eps", "consistency tolerance"},
    {"output", "json or csv"},
    {"out", "write the report to FILE instead of stdout"},
    {"model", "ontic model file (JSON) replacing the toy model"},
    {"write-model", "write the toy model to FILE"},
    {"perturb", "ROW,COL,DELTA added to the printed matrix"},
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tqd::InputError("cannot write " + path);
  out << text;
  if (!out) throw tqd::InputError("cannot write " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification suites for the three-spin exclusion protocol", "tqd-verify"};
  app.set_version_flag("--version", tqd::kToolVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  for (const char* name : {"hamiltonian", "exclusion", "pbr2", "ontic", "all-checks"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key=value or JSON settings file");
    for (const auto& flag : kFlags) {
      auto* opt = sub->add_option(std::string("--") + flag.name, values[flag.name], flag.help);
      options.emplace(std::string(name) + "/" + flag.name, opt);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return tqd::kExitInvalidInput;
  }

  tqd::RunConfig cfg;
  cfg.command = app.get_subcommands().front()->get_name();
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw tqd::InputError("cannot open config file " + config_path);
      std::stringstream buf;
      buf << in.rdbuf();
      tqd::apply_settings(cfg, tqd::parse_config_text(buf.str()));
    }
    std::map<std::string, std::string> given;
    for (const auto& flag : kFlags)
      if (options.at(cfg.command + "/" + flag.name)->count() > 0) given[flag.name] = values[flag.name];
    tqd::apply_settings(cfg, given);

    const auto output = tqd::run_command(cfg);
    if (cfg.write_model_path) {
      write_text(*cfg.write_model_path, tqd::dump_report(tqd::model_to_json(tqd::build_overlap_toy_model(cfg.q))));
    }
    const std::string text = output.render(cfg.output);
    if (cfg.out_path) {
      write_text(*cfg.out_path, text);
    } else {
      std::cout << text;
    }
    return output.exit_code;
  } catch (const tqd::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return tqd::kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return tqd::kExitInvalidInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return tqd::kExitInvalidInput;
  } catch (const std::exception& e) {
    // A failed computation means a claim could not be verified.
    std::cerr << "verification failed: " << e.what() << "\n";
    return tqd::kExitClaimFailed;
  }
}
