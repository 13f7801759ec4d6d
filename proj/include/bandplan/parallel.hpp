#pragma once
#include <cstdint>

namespace bandplan {

enum class Exec { serial, parallel };

namespace detail {
void omp_for_each(std::int64_t n, void* ctx, void (*fn)(void*, std::int64_t));
}

// Runs fn(i) for i in [0, n). The parallel path uses OpenMP static
// scheduling; callers must write results by index or accumulate integers per
// chunk so the outcome is identical for any thread count. The serial path is
// the reference the tests compare against.
template <typename Fn>
void for_each_index(Exec exec, std::int64_t n, Fn&& fn) {
  if (exec == Exec::parallel) {
    auto thunk = [](void* ctx, std::int64_t i) { (*static_cast<Fn*>(ctx))(i); };
    detail::omp_for_each(n, const_cast<void*>(static_cast<const void*>(&fn)), thunk);
    return;
  }
  for (std::int64_t i = 0; i < n; ++i) fn(i);
}

}  // namespace bandplan
