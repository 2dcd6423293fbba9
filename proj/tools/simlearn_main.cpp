#include <CLI11.hpp>

#include <iostream>

#include "simlearn/errors.hpp"
#include "simlearn/harness.hpp"

namespace {

int dispatch(const std::function<int()>& body) {
  try {
    return body();
  } catch (const simlearn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return simlearn::kExitConfig;
  } catch (const simlearn::ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return simlearn::kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simlearn - single-index model learning experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string filter;

  CLI::App* run_cmd = app.add_subcommand("run", "execute the experiment described by a config");
  run_cmd->add_option("config", config_path, "JSON config file")->required();

  CLI::App* describe_cmd =
      app.add_subcommand("describe", "print the resolved parameters of a config");
  describe_cmd->add_option("config", config_path, "JSON config file")->required();

  CLI::App* selftest_cmd =
      app.add_subcommand("selftest", "run the built-in verification battery");
  selftest_cmd->add_option("--filter", filter, "only run checks whose name contains this");

  CLI11_PARSE(app, argc, argv);

  if (run_cmd->parsed()) {
    return dispatch([&] {
      const simlearn::ExperimentConfig config = simlearn::load_config(config_path);
      return simlearn::run_experiment(config, std::cout);
    });
  }
  if (describe_cmd->parsed()) {
    return dispatch([&] {
      const simlearn::ExperimentConfig config = simlearn::load_config(config_path);
      std::cout << simlearn::describe(config);
      return simlearn::kExitOk;
    });
  }
  return dispatch([&] {
    simlearn::ExperimentConfig config;
    config.preset = simlearn::Preset::kSelftest;
    config.selftest_filter = filter;
    return simlearn::run_experiment(config, std::cout);
  });
}
