// Copyright 2026 The qwb Authors
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

#ifndef QWB_PARALLEL_HPP_
#define QWB_PARALLEL_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qwb {

// All values in this library are immutable after construction and every
// operation is a pure function, so bulk checks parallelize freely. Kernels
// are written as an index-addressed map phase (parallel) followed by a
// serial, order-fixed reduce phase; results are identical for both execution
// modes, which the test suite asserts and the bench target times.
enum class Exec { serial, parallel };

namespace detail {
#if defined(_OPENMP)
constexpr bool kHaveOpenMP = true;
#else
constexpr bool kHaveOpenMP = false;
#endif
}  // namespace detail

/// Runs f(i) for i in [0, n). In parallel mode iterations are distributed
/// over OpenMP threads; f must only write to state owned by iteration i.
template <class F>
void par_for(std::size_t n, Exec ex, F&& f) {
  if (ex == Exec::parallel && detail::kHaveOpenMP && n > 1) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
      f(static_cast<std::size_t>(i));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) f(i);
  }
}

/// Evaluates pred(i) over [0, n); returns the least failing index, or n if
/// all hold. The least index is schedule-independent.
template <class Pred>
std::size_t par_first_failure(std::size_t n, Exec ex, Pred&& pred) {
  if (ex == Exec::parallel && detail::kHaveOpenMP && n > 1) {
    std::int64_t first = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) reduction(min : first)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
      if (i < first && !pred(static_cast<std::size_t>(i))) first = i;
    }
    return static_cast<std::size_t>(first);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!pred(i)) return i;
  }
  return n;
}

template <class Pred>
bool par_all(std::size_t n, Exec ex, Pred&& pred) {
  return par_first_failure(n, ex, pred) == n;
}

/// Collects all failing indices, in increasing order.
template <class Pred>
std::vector<std::size_t> par_failures(std::size_t n, Exec ex, Pred&& pred) {
  std::vector<std::uint8_t> ok(n, 1);
  par_for(n, ex, [&](std::size_t i) { ok[i] = pred(i) ? 1 : 0; });
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!ok[i]) out.push_back(i);
  }
  return out;
}

/// Index-addressed map; deterministic regardless of schedule.
template <class T, class F>
std::vector<T> par_map(std::size_t n, Exec ex, F&& f) {
  std::vector<T> out(n);
  par_for(n, ex, [&](std::size_t i) { out[i] = f(i); });
  return out;
}

}  // namespace qwb

#endif  // QWB_PARALLEL_HPP_
