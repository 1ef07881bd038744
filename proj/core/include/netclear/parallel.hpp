// Copyright 2026 The netclear Authors
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


// Deterministic data-parallel loops.
//
// Work is split into contiguous index blocks; callers write results by index,
// so output never depends on the thread count. NETCLEAR_THREADS caps the
// number of worker threads (1 runs everything inline).

#ifndef NETCLEAR_PARALLEL_HPP_
#define NETCLEAR_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace netclear {

// Worker count: NETCLEAR_THREADS when set to a positive integer, otherwise
// the hardware concurrency (at least 1).
int thread_count();

// Calls body(begin, end) over a partition of [0, count). Exceptions thrown by
// any block are rethrown on the calling thread (the first by block order).
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_block = 1);

}  // namespace netclear

#endif  // NETCLEAR_PARALLEL_HPP_
