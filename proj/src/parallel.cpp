#include "zerogap/parallel.hpp"

#include <omp.h>

namespace zerogap {

std::string to_string(Execution e) { return e == Execution::serial ? "serial" : "parallel"; }

int max_threads() { return omp_get_max_threads(); }

}  // namespace zerogap
