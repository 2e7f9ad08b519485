#pragma once

#include <stdexcept>
#include <string>

namespace twincurve {

// Error taxonomy used across the library.  The CLI maps these onto
// exit codes (validation -> 2, budget/range -> 3, everything else -> 1).
enum class errc {
    domain,      // argument outside the mathematical domain of the operation
    range,       // value exceeds the supported integer width or a budget
    validation,  // curve parameters violate a family constraint
    unsupported, // operation not defined for these inputs
    exhaustion,  // a bounded search ran out of room
    numeric,     // a numerical routine failed to converge
    internal,    // cross-check failed: implementation bug, not a math possibility
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::domain: return "domain";
        case errc::range: return "range";
        case errc::validation: return "validation";
        case errc::unsupported: return "unsupported";
        case errc::exhaustion: return "exhaustion";
        case errc::numeric: return "numeric";
        case errc::internal: return "internal";
    }
    return "?";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

inline void require(bool cond, errc code, const std::string& msg) {
    if (!cond) fail(code, msg);
}

} // namespace twincurve
