#include "bogodense/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bogodense::parallel {

int thread_limit() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_thread_limit(int n) noexcept {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

int configure_from_env() {
    if (const char* env = std::getenv("BOGODENSE_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) set_thread_limit(n);
        } catch (const std::exception&) {
            // ignored: a malformed cap leaves the OpenMP default in place
        }
    }
    return thread_limit();
}

}  // namespace bogodense::parallel
