// Copyright 2026 The Noise Lab Authors
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

#ifndef NOISE_LAB_PARALLEL_HPP_
#define NOISE_LAB_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace noise_lab {

// Thread cap from NOISE_LAB_THREADS, falling back to the hardware
// concurrency. Always at least 1.
std::size_t thread_budget();

// Runs body(task) for every task in [0, tasks) on up to `threads` workers.
// Tasks are claimed dynamically, so callers must write results into
// per-task slots and reduce them by index afterwards.
void parallel_for(std::size_t tasks, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace noise_lab

#endif  // NOISE_LAB_PARALLEL_HPP_
