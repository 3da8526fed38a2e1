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

#include <cstddef>
#include <functional>

namespace glyphembed {

// Worker cap: GLYPHEMBED_THREADS when set to a positive integer, otherwise the
// hardware concurrency. An override set by set_thread_count wins over both.
std::size_t thread_count();
// 0 clears the override.
void set_thread_count(std::size_t n);

// Runs fn(i) for i in [0, n). Work items must write only to their own slots;
// if several items throw, the exception of the lowest index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace glyphembed
