#pragma once

#include <stdexcept>
#include <string>

namespace flatlab {

// Invalid user input: malformed file, bad flag value, violated precondition.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A configured work budget (spectrum size, search nodes, expansion size)
// would be exceeded.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace flatlab
