#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace adhesia {

/// Execution policy for the data-parallel sweeps. Serial is the reference
/// implementation the tests compare against.
enum class Exec { Serial, Parallel };

/// Calls fn(i) for i in [0, n) in index order.
template <class Fn>
void serial_for(std::size_t n, Fn&& fn) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

/// Calls fn(i) for i in [0, n) on the OpenMP team. Iterations must write to
/// disjoint slots. The exception of the lowest failing index is rethrown.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    std::vector<std::exception_ptr> errors(n);
    const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

template <class Fn>
void for_each_index(Exec exec, std::size_t n, Fn&& fn) {
    if (exec == Exec::Parallel) {
        parallel_for(n, fn);
    } else {
        serial_for(n, fn);
    }
}

}  // namespace adhesia
