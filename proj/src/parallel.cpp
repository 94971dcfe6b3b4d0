#include "advwave/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace advwave {

int parallel_threads() {
    int cap = 0;
    if (const char* env = std::getenv("ADVWAVE_THREADS")) {
        try {
            cap = std::stoi(env);
        } catch (...) {
            cap = 0;
        }
    }
#ifdef _OPENMP
    int n = omp_get_max_threads();
    return cap > 0 && cap < n ? cap : n;
#else
    (void)cap;
    return 1;
#endif
}

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

}  // namespace advwave
