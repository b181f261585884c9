#pragma once

#include <stdexcept>
#include <string>

namespace isogreen {

// Thrown when an evaluation lands on (or within guard distance of) a pole
// of an elliptic function. Callers that can retry at a perturbed argument
// catch this; everyone else lets it propagate.
struct PoleError : std::runtime_error {
  explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace isogreen
