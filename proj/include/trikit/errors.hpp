#pragma once

#include <stdexcept>
#include <string>

namespace trikit {

// Base for everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input: bad field spec, unparsable file, precondition on user data.
// CLI exit code 4.
struct InputError : Error {
    using Error::Error;
};

// Arithmetic cannot continue honestly at the available precision.
// CLI exit code 3.
struct PrecisionError : Error {
    using Error::Error;
};

// A mathematical verification failed (identity violated, checker condition
// broken, table mismatch). CLI exit code 2.
struct CheckError : Error {
    using Error::Error;
};

}  // namespace trikit
