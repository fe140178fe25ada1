#include "kinmix/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kinmix {

int worker_threads() noexcept {
    static const int threads = [] {
        int available = 1;
#ifdef _OPENMP
        available = omp_get_max_threads();
#endif
        if (const char* env = std::getenv("KINMIX_THREADS")) {
            try {
                const int cap = std::stoi(env);
                if (cap > 0 && cap < available) return cap;
            } catch (...) {
            }
        }
        return available;
    }();
    return threads;
}

}  // namespace kinmix
