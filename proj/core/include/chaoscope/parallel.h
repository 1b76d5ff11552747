// Copyright 2026 The Chaoscope Authors
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

#ifndef CHAOSCOPE_PARALLEL_H_
#define CHAOSCOPE_PARALLEL_H_

#include <cstdint>
#include <functional>

namespace chaoscope {

// Worker count: hardware concurrency, capped by CHAOSCOPE_THREADS when set.
int WorkerCount();

// Splits [0, n) into contiguous chunks, one per worker, and calls
// body(worker, begin, end) for each. Chunk boundaries depend only on n and
// the worker count. The first exception thrown by any worker is rethrown.
void ParallelFor(std::int64_t n,
                 const std::function<void(int, std::int64_t, std::int64_t)>&
                     body);

}  // namespace chaoscope

#endif  // CHAOSCOPE_PARALLEL_H_
