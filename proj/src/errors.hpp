#pragma once

#include <stdexcept>
#include <string>

namespace snc {

// Error categories. These map one to one onto the status codes of the C API,
// so everything thrown inside the core must carry one.
enum class errc {
  invalid_argument,   // bad value passed by the caller
  range,              // index out of range (wire, step, site, ...)
  resource_limit,     // would exceed a hard cap (statevector size, cycle rank)
  parse,              // circuit text could not be parsed
  capacity,           // circuit does not fit on the requested patch
  impossible_outcome, // forced measurement outcome has probability zero
  verification,       // a cross-check that should hold numerically failed
  internal,           // broken invariant inside the library itself
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace snc
