// Copyright 2026 The avgsim Authors
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
//
#ifndef AVGSIM_PARALLEL_HPP_
#define AVGSIM_PARALLEL_HPP_

#include <cstdint>
#include <functional>

namespace avgsim {

// AVGSIM_THREADS if set to a positive integer, else the hardware count.
int WorkerCount();

// Calls fn(i) for i in [0, count) on up to `workers` threads. Work items are
// independent; callers write results by index so the outcome does not depend
// on scheduling. The first exception thrown by any item is rethrown.
void ParallelFor(std::int64_t count, const std::function<void(std::int64_t)>& fn,
                 int workers = WorkerCount());

}  // namespace avgsim

#endif  // AVGSIM_PARALLEL_HPP_
