// Copyright 2026 The Rezmet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace rezmet {

/// Worker count: REZMET_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int workerCount();

/// Runs body(i) for i in [0, n) on up to `threads` workers (0: workerCount()).
/// Iterations must write to disjoint outputs. The exception thrown by the
/// lowest failing index is rethrown after all workers finish.
void parallelFor(std::size_t n, const std::function<void(std::size_t)>& body, int threads = 0);

}  // namespace rezmet
