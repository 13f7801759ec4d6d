#include "bandplan/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bandplan::detail {

void omp_for_each(std::int64_t n, void* ctx, void (*fn)(void*, std::int64_t)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) fn(ctx, i);
#else
  for (std::int64_t i = 0; i < n; ++i) fn(ctx, i);
#endif
}

}  // namespace bandplan::detail
