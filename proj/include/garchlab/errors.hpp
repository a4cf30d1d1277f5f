#pragma once

#include <stdexcept>
#include <string>

namespace garchlab {

/// Base class of all garchlab exceptions.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A value-domain precondition was violated (invalid parameters, lengths,
/// ranges, non-finite inputs).
struct domain_error : error {
  using error::error;
};

/// The input data admits no meaningful result (e.g. a zero-variance series).
struct degenerate_data_error : error {
  using error::error;
};

/// Filesystem or stream failure.
struct io_error : error {
  using error::error;
};

/// Malformed file contents.
struct parse_error : io_error {
  using io_error::io_error;
};

}  // namespace garchlab
