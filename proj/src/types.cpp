#include "nonrev/types.hpp"

#include <cmath>

namespace nonrev {

Density::Density(Vector v) : values(std::move(v)) {
  if (values.size() == 0) throw InvalidSpec("density must not be empty");
  if ((values.array() < 0.0).any())
    throw InvalidSpec("density has a negative entry");
  const double defect = std::abs(values.sum() - 1.0);
  if (defect > 1e-12)
    throw InvalidSpec("density normalization defect " + std::to_string(defect));
}

Density uniform_density(int n) {
  return Density(Vector::Constant(n, 1.0 / n));
}

Density point_density(int n, int x) {
  Vector v = Vector::Zero(n);
  v(x) = 1.0;
  return Density(std::move(v));
}

StatePotential::StatePotential(Vector v) : values(std::move(v)) {
  if (std::abs(values.sum()) > 1e-12 * (1.0 + values.cwiseAbs().maxCoeff()))
    values = gauge_fix(values);
}

Vector gauge_fix(const Vector& xi) {
  return xi.array() - xi.mean();
}

}  // namespace nonrev
