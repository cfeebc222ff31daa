#ifndef EVOLVE_BASE_HPP
#define EVOLVE_BASE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace evolve {

// Three-valued verdict used by every checker. Budget-limited searches must
// return Unknown instead of guessing: False always comes with a witness and
// True only when the claim was actually verified on the searched scope.
enum class Verdict { True, False, Unknown };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::True: return "true";
        case Verdict::False: return "false";
        default: return "unknown";
    }
}

// Exit code convention shared by the CLI and the checkers.
inline int exit_code(Verdict v) {
    switch (v) {
        case Verdict::True: return 0;
        case Verdict::False: return 1;
        default: return 2;
    }
}
constexpr int kExitUsage = 3;

// Thrown when two arrows or paths are composed whose endpoints do not chain.
struct NonComposable : std::logic_error {
    explicit NonComposable(const std::string& what) : std::logic_error(what) {}
};

// Thrown when an input file or JSON document is malformed.
struct BadInput : std::runtime_error {
    explicit BadInput(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a construction needs more search room than the caller allowed
// and silently truncating would change the meaning of the result.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// 64-bit FNV-1a, used for cheap deterministic fingerprints (not for identity).
inline std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string to_hex(const std::string& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char c : bytes) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

}  // namespace evolve

#endif  // EVOLVE_BASE_HPP
