#include "affkm/exec.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace affkm {

Exec default_exec() {
#ifdef _OPENMP
  return Exec::parallel;
#else
  return Exec::serial;
#endif
}

int exec_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

} // namespace affkm
