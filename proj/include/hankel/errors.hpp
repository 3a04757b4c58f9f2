#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace hankel {

// A moment sequence, canonical moment, or ensemble draw sits on (or outside)
// the boundary of its admissible region.
class boundary_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A cumulant generating function was evaluated outside the strip on which it
// is finite.  Carries the strip edge and a description of the binding term.
class strip_error : public std::runtime_error {
 public:
  strip_error(const std::string& what, double z_min, std::string binding_term)
      : std::runtime_error(what),
        z_min(z_min),
        binding_term(std::move(binding_term)) {}

  double z_min;
  std::string binding_term;
};

}  // namespace hankel
