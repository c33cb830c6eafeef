#include "nagumo/radial_field.hpp"

#include <cmath>
#include <stdexcept>

namespace nagumo {

double embedding_constant(const Prime& p, double s) {
  if (s <= 1.0) throw std::domain_error("embedding_constant: diverges unless s > 1");
  const double pd = p.as_double();
  const double ratio = std::pow(pd, 1.0 - s);
  const double squared = 1.0 + (1.0 - 1.0 / pd) * ratio / (1.0 - ratio);
  return std::sqrt(squared);
}

}  // namespace nagumo
