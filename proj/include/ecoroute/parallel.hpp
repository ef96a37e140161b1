#pragma once

#include <cstdint>
#include <exception>
#include <vector>

#include <omp.h>

#include "ecoroute/harness.hpp"

namespace ecoroute {

/// Runs body(i) for i in [0, count), serially or across OpenMP threads.
/// The exception of the lowest failing index is rethrown after the loop.
template <class Body>
void for_each_index(std::size_t count, Execution execution, int threads, Body&& body) {
    if (execution == Execution::serial) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(count);
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace ecoroute
