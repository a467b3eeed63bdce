#pragma once

#include <stdexcept>
#include <string>

namespace concatdioph {

// Raised when an enclosure is too wide to decide the question asked of it
// (floor straddles an integer, nearest-integer straddles a half-integer,
// division by an interval containing zero). Callers escalate precision.
struct AmbiguityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when precision escalation hits the hard cap without resolving
// an ambiguity.
struct EscalationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a lemma's hypothesis is violated by the supplied inputs.
struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace concatdioph
