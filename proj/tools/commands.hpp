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

#pragma once

#include <CLI11.hpp>

namespace glyphembed::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kRuntimeError = 3 };

void add_ve_commands(CLI::App& app);
void add_noise_commands(CLI::App& app);
void add_synth_commands(CLI::App& app);
void add_train_command(CLI::App& app);
void add_eval_command(CLI::App& app);
void add_experiment_command(CLI::App& app);

}  // namespace glyphembed::cli
