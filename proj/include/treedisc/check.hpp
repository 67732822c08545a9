#pragma once

#include <stdexcept>
#include <string>

namespace treedisc {

[[noreturn]] inline void check_failed(const char* expr, const char* file, int line) {
    throw std::logic_error(std::string("invariant violated: ") + expr + " (" +
                           file + ":" + std::to_string(line) + ")");
}

} // namespace treedisc

// Always-on sanity check for invariants cheap enough to keep in release
// builds. Reserved for conditions whose failure means the algorithm itself
// went wrong, not for caller errors.
#define TREEDISC_CHECK(expr) \
    do {                     \
        if (!(expr)) ::treedisc::check_failed(#expr, __FILE__, __LINE__); \
    } while (0)
