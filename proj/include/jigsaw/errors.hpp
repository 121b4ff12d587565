#ifndef JIGSAW_ERRORS_HPP
#define JIGSAW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace jigsaw {

// Invalid argument values: bad probabilities, vertices out of range,
// mismatched graph sizes, malformed input files.
class ParameterError : public std::invalid_argument {
public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// A request exceeds a configured exhaustive-search cap.
class CapacityError : public std::runtime_error {
public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace jigsaw

#endif
