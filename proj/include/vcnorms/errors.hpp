#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vcnorms {

/// Input violates an operation's precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A runtime guard (dimension, point count, subset count) was exceeded.
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A claimed carving does not hold; `point_index` names the offending point.
class CarveMismatch : public std::runtime_error {
 public:
  CarveMismatch(const std::string& what, std::size_t point_index)
      : std::runtime_error(what), point_index_(point_index) {}
  std::size_t point_index() const noexcept { return point_index_; }

 private:
  std::size_t point_index_;
};

/// Something that the construction guarantees did not hold. Should be unreachable.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace vcnorms
