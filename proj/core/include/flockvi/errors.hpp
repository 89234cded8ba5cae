#pragma once

#include <stdexcept>
#include <string>

namespace flockvi {

/// Base for every input-validation failure raised by the library.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Graph construction failures, one type per rule.
class SelfLoopError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class DuplicateEdgeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class AgentIndexError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class NonPositiveDistanceError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class DisconnectedGraphError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Vector lengths that do not match the graph and spatial dimension.
class ShapeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace flockvi
