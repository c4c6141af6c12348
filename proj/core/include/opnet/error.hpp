#pragma once

#include <stdexcept>
#include <string>

namespace opnet {

// All failures surface as Error; what() carries an actionable message
// (offending id, line number, parameter values, ...).
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace opnet
