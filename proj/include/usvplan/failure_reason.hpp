#pragma once

#include <string>

#include "usvplan/errors.hpp"

namespace usvplan {

/// Why an action attempt was aborted. Reported back to the planner verbatim.
enum class FailureReason {
    PathBlocked,
    Timeout,
    ControlDeviation,
};

inline std::string to_string(FailureReason r) {
    switch (r) {
        case FailureReason::PathBlocked: return "PathBlocked";
        case FailureReason::Timeout: return "Timeout";
        case FailureReason::ControlDeviation: return "ControlDeviation";
    }
    throw Error("unknown FailureReason value");
}

inline FailureReason failure_reason_from_string(const std::string& s) {
    if (s == "PathBlocked") return FailureReason::PathBlocked;
    if (s == "Timeout") return FailureReason::Timeout;
    if (s == "ControlDeviation") return FailureReason::ControlDeviation;
    throw ParseError("unknown failure reason: " + s);
}

}  // namespace usvplan
