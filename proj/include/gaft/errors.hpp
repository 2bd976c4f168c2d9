#pragma once

#include <stdexcept>
#include <string>

namespace gaft {

// Error taxonomy shared by all modules. Everything derives from Error so the
// CLI boundary can map the family onto exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SignatureMismatch : Error { using Error::Error; };
struct UnsupportedSignature : Error { using Error::Error; };

// blade arithmetic
struct NullBlade : Error { using Error::Error; };
struct NotABlade : Error { using Error::Error; };
struct NotImaginary : Error { using Error::Error; };

// basis construction
struct NotCoorthogonal : Error {
  int first = -1;
  int second = -1;
  NotCoorthogonal(int a, int b)
      : Error("blades " + std::to_string(a) + " and " + std::to_string(b) +
              " are not coorthogonal"),
        first(a),
        second(b) {}
};
struct NullVector : Error { using Error::Error; };
struct NotRepresentable : Error { using Error::Error; };

// transform hypotheses and file plumbing
struct FlagViolation : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };

}  // namespace gaft
