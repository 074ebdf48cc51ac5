#include "nonrev/edge_field.hpp"

#include <string>

namespace nonrev {

int EdgeSet::index(int x, int y) const {
  if (x > y) std::swap(x, y);
  for (int e = 0; e < size(); ++e)
    if (edges[e].first == x && edges[e].second == y) return e;
  return -1;
}

EdgeSet edge_set(const ChainSpec& spec) {
  EdgeSet s;
  const int n = spec.n_states();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      const double fwd = spec.rate(x, y);
      const double bwd = spec.rate(y, x);
      if (fwd > 0.0 && bwd > 0.0) {
        s.edges.emplace_back(x, y);
      } else if (fwd > 0.0 || bwd > 0.0) {
        throw ZeroRate("edge (" + std::to_string(x) + "," + std::to_string(y) +
                       ") has zero reverse rate");
      }
    }
  return s;
}

EdgeField::EdgeField(EdgeSet s, Vector v)
    : support(std::move(s)), values(std::move(v)) {
  if (values.size() != support.size())
    throw InvalidSpec("edge field size does not match support");
}

double EdgeField::at(int x, int y) const {
  const int e = support.index(x, y);
  if (e < 0) return 0.0;
  return x < y ? values(e) : -values(e);
}

EdgeField zero_field(const EdgeSet& support) {
  return EdgeField(support, Vector::Zero(support.size()));
}

Mobility::Mobility(EdgeSet s, Vector v)
    : support(std::move(s)), values(std::move(v)) {
  if (values.size() != support.size())
    throw InvalidSpec("mobility size does not match support");
  if ((values.array() <= 0.0).any())
    throw InvalidSpec("mobility must be strictly positive");
}

bool same_support(const EdgeSet& a, const EdgeSet& b) { return a == b; }

void require_same_support(const EdgeSet& a, const EdgeSet& b) {
  if (!same_support(a, b))
    throw InvalidSpec("edge objects live on different supports");
}

EdgeField edge_gradient(const EdgeSet& support, const Vector& xi) {
  Vector v(support.size());
  for (int e = 0; e < support.size(); ++e) {
    const auto [x, y] = support.edge(e);
    v(e) = xi(y) - xi(x);
  }
  return EdgeField(support, std::move(v));
}

EdgeField edge_gradient(const EdgeSet& support, const StatePotential& xi) {
  return edge_gradient(support, xi.values);
}

}  // namespace nonrev
