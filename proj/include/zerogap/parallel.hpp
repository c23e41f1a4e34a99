#pragma once

// Index-parallel loop with a serial reference path.
//
// body(i) must only write state owned by index i. Exceptions are captured
// per index and the one with the lowest index is rethrown, so both paths
// fail identically.

#include <cstddef>
#include <exception>
#include <string>
#include <vector>

namespace zerogap {

enum class Execution { serial, parallel };

std::string to_string(Execution e);
int max_threads();

template <class Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
    if (exec == Execution::serial) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace zerogap
