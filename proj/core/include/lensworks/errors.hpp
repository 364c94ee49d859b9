#ifndef LENSWORKS_ERRORS_HPP
#define LENSWORKS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lensworks {

/// Replaying a choice stream past its recorded end, or with a segment of the
/// wrong length.
struct ReplayError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A requested generation exceeds the configured resource cap.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File read/write failure; message carries the path.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lensworks

#endif  // LENSWORKS_ERRORS_HPP
