/*
 * Copyright 2026 The Hurra Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace hurra {

// Worker count used by parallel_for. Defaults to HURRA_THREADS when set to a
// positive integer, else the hardware concurrency.
std::size_t thread_count();

// Overrides the worker count for this process; 0 restores the default.
void set_thread_count(std::size_t n);

// Runs fn(i) for i in [0, n) on up to thread_count() threads. Work items must
// write only to their own slot of any shared output. If any item throws, the
// exception of the lowest failing index is rethrown after all items finish.
// Calls made from inside a worker run inline.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace hurra
