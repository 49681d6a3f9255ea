#pragma once

// Case fan-out for bounded checks. With one job the cases run in order on the
// calling thread; that path is the reference the parallel one must match.

#include <atomic>
#include <chrono>
#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <omp.h>

#include "bctx/report.hpp"

namespace bctx {

/// Outcome of a single case: nullopt when it holds, otherwise the bindings
/// that falsify it.
using CaseResult = std::optional<Bindings>;

struct CaseOutcome {
  std::size_t cases = 0;  // cases up to and including the first failure
  std::optional<Bindings> counterexample;
};

namespace detail {

template <class F>
CaseResult guarded(F& f, std::size_t i) {
  try {
    return f(i);
  } catch (const std::exception& e) {
    return Bindings{{"case", std::to_string(i)}, {"exception", e.what()}};
  }
}

}  // namespace detail

template <class F>
CaseOutcome run_cases_serial(std::size_t n, F&& f) {
  for (std::size_t i = 0; i < n; ++i)
    if (auto cx = detail::guarded(f, i)) return {i + 1, std::move(cx)};
  return {n, std::nullopt};
}

/// Runs `f(0) .. f(n-1)` and reports the failure with the smallest index.
/// The result does not depend on `jobs`.
template <class F>
CaseOutcome run_cases(std::size_t n, int jobs, F&& f) {
  if (jobs <= 1 || n < 2) return run_cases_serial(n, f);
  std::atomic<std::size_t> first_fail{n};
  std::vector<CaseResult> results(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16) num_threads(jobs)
  for (long long k = 0; k < count; ++k) {
    auto i = static_cast<std::size_t>(k);
    if (i > first_fail.load(std::memory_order_relaxed)) continue;
    results[i] = detail::guarded(f, i);
    if (results[i]) {
      std::size_t cur = first_fail.load();
      while (i < cur && !first_fail.compare_exchange_weak(cur, i)) {
      }
    }
  }
  std::size_t i = first_fail.load();
  if (i == n) return {n, std::nullopt};
  return {i + 1, std::move(results[i])};
}

/// Times `run_cases` and packages the outcome as a report.
template <class F>
CheckReport run_check(std::string name, std::size_t n, int jobs, F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  CaseOutcome o = run_cases(n, jobs, std::forward<F>(f));
  auto t1 = std::chrono::steady_clock::now();
  CheckReport r;
  r.name = std::move(name);
  r.cases = o.cases;
  r.pass = !o.counterexample;
  r.counterexample = std::move(o.counterexample);
  r.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return r;
}

}  // namespace bctx
