#pragma once

#include <cstddef>
#include <exception>
#include <limits>

namespace wavebound {

// Serial loops are the reference; parallel loops must produce identical per-index results.
enum class Execution { serial, parallel };

// Exceptions cannot cross an OpenMP region, so the one from the lowest failing index is
// kept and rethrown after the loop, matching what the serial loop would throw.
template <class F>
void for_each_index(std::size_t n, Execution exec, F&& body)
{
    if (exec == Execution::parallel) {
        std::exception_ptr error;
        std::size_t error_index = std::numeric_limits<std::size_t>::max();
#pragma omp parallel for schedule(dynamic, 8)
        for (long i = 0; i < static_cast<long>(n); ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical(wavebound_for_each_index)
                if (static_cast<std::size_t>(i) < error_index) {
                    error_index = static_cast<std::size_t>(i);
                    error = std::current_exception();
                }
            }
        }
        if (error) std::rethrow_exception(error);
    } else {
        for (std::size_t i = 0; i < n; ++i) body(i);
    }
}

// Thread count used by parallel loops; 0 leaves the runtime default.
void set_thread_count(int threads);
int thread_count();

}  // namespace wavebound
