#pragma once

#include <stdexcept>
#include <string>

namespace holembed {

// Root of every exception thrown by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace holembed
