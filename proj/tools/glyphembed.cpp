// Copyright 2026 The glyphembed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <exception>
#include <iostream>

#include "commands.hpp"
#include "glyphembed/error.hpp"

int main(int argc, char** argv) {
  using namespace glyphembed::cli;
  CLI::App app{"glyphembed: visual character embeddings and robustness experiments"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "TOML file with one [command] section, e.g. a config.toml snapshot");

  add_ve_commands(app);
  add_noise_commands(app);
  add_synth_commands(app);
  add_train_command(app);
  add_eval_command(app);
  add_experiment_command(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  } catch (const glyphembed::TrainingDiverged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  } catch (const glyphembed::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kOk;
}
