#pragma once

#include <stdexcept>
#include <string>

namespace dicehit {

/// Malformed input: bad die, predicate string, range, or parameter.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An integer was queried beyond the factor sieve's limit.
class SieveTooSmall : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// The starting sum already satisfies the predicate.
class InvalidStart : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Conditional statistics were requested but no game terminated.
class NoHits : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace dicehit
