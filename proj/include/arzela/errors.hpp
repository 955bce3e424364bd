#pragma once

#include <stdexcept>
#include <string>

namespace arzela {

// Base for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input: bad rational strings, bad JSON, violated constructor
// invariants, out-of-range configuration. Maps to CLI exit code 1.
struct InvalidInput : Error {
    using Error::Error;
};

// A theorem hypothesis is broken (e.g. tall_support on a function whose
// integral is not above 2*epsilon). Producing a degraded result instead
// would silently poison certificates, so this is loud.
struct HypothesisError : Error {
    using Error::Error;
};

// extract_witness found no depth with >= 3 live descendants within the
// horizon; callers may raise the horizon or fall back to the fat path.
struct InsufficientSplitting : Error {
    using Error::Error;
};

// truncate_enumerated: the declared tail bound never reached the budget
// within the iteration cap.
struct BudgetUnreachable : Error {
    using Error::Error;
};

}  // namespace arzela
