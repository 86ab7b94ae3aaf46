#pragma once

#include <stdexcept>
#include <string>

namespace kin {

// Domain error carrying a short machine-readable kind, e.g. "NotGeneric".
struct Error : std::runtime_error {
    std::string kind;
    Error(std::string k, const std::string& detail)
        : std::runtime_error(detail.empty() ? k : k + ": " + detail), kind(std::move(k)) {}
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& detail = {}) {
    throw Error(kind, detail);
}

}  // namespace kin
