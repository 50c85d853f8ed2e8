#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace usvplan {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scenario file is unreadable or not well-formed.
struct ParseError : Error {
    using Error::Error;
};

/// Scenario content violates an invariant; message carries the field path.
struct ValidationError : Error {
    using Error::Error;
};

/// Prompt template is missing a required slot or contains an unknown one.
struct TemplateError : Error {
    using Error::Error;
};

/// Backend response is missing a key or has the wrong shape.
struct SchemaError : Error {
    using Error::Error;
};

/// Plan step names an action outside the capability set.
struct UnknownAction : Error {
    using Error::Error;
};

/// Plan step targets a station that does not exist in the world.
struct UnknownTarget : Error {
    using Error::Error;
};

/// Parsed plan violates a symbolic-plan invariant.
struct InvariantError : Error {
    using Error::Error;
};

/// Transport-level backend failure (connect, timeout, bad HTTP status).
struct BackendError : Error {
    using Error::Error;
};

/// Backend output stayed invalid after the single re-prompt.
struct PlanRejected : Error {
    PlanRejected(const std::string& what, std::vector<std::string> responses)
        : Error(what), raw_responses(std::move(responses)) {}
    std::vector<std::string> raw_responses;
};

/// Goal unreachable on the occupancy grid at the configured clearance.
struct NoPathFound : Error {
    using Error::Error;
};

/// A station has failed more times than the replan budget allows.
struct ReplanBudgetExhausted : Error {
    using Error::Error;
};

}  // namespace usvplan
