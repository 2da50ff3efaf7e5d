#pragma once

#include <stdexcept>
#include <string>

namespace armchair {

// Thrown on malformed potential specs / configs; carries position info.
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation at a pole of the monodromy matrix (λ in the Dirichlet spectrum)
// without requesting the regularized form.
struct pole_error : std::runtime_error {
  explicit pole_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation invalid in the degenerate (ρ ≡ 0) regime, or a degenerate
// denominator in the flat-band decomposition.
struct degenerate_error : std::runtime_error {
  explicit degenerate_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Integration / root-finding failure.
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace armchair
