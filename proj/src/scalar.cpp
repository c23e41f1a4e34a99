#include "zerogap/scalar.hpp"

#include "zerogap/errors.hpp"

namespace zerogap {

std::string to_string(Precision p) { return p == Precision::standard ? "standard" : "extended"; }

Precision parse_precision(const std::string& text) {
    if (text == "standard" || text == "double") return Precision::standard;
    if (text == "extended") return Precision::extended;
    throw DomainError("unknown precision '" + text + "' (expected standard or extended)");
}

}  // namespace zerogap
