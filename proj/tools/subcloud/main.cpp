/* Copyright 2026 The Subcloud Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <filesystem>
#include <iostream>
#include <string>

#include "commands.hpp"
#include "subcloud/error.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::string one_line(std::string text) {
  for (char& c : text) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

int fail(int code, const std::string& message) {
  std::cerr << "subcloud: error: " << one_line(message) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace subcloud::cli;

  CLI::App app{"Subcloud sampling, fusion and evaluation for large point clouds", "subcloud"};
  app.set_version_flag("--version", "subcloud 0.1.0");
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--seed", globals.seed, "Seed for every random draw")->capture_default_str();
  app.add_option("--threads", globals.threads,
                 "Worker threads; 0 uses SUBCLOUD_THREADS or all hardware threads")
      ->capture_default_str();
  app.add_option("--format", globals.format, "Output cloud format (default: from extension)")
      ->check(CLI::IsMember({"ply", "ply-ascii", "xyz"}));

  std::vector<Command> commands;
  add_cloud_commands(app, globals, commands);
  add_crop_commands(app, globals, commands);
  add_eval_commands(app, globals, commands);
  add_run_commands(app, globals, commands);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail(kExitUsage, e.what());
  }

  try {
    for (const Command& command : commands) {
      if (command.app->parsed()) command.run();
    }
  } catch (const UsageError& e) {
    return fail(kExitUsage, e.what());
  } catch (const subcloud::Error& e) {
    return fail(kExitData, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(kExitData, e.what());
  } catch (const std::exception& e) {
    return fail(kExitData, e.what());
  }
  return 0;
}
