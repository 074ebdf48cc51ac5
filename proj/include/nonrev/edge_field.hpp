#pragma once

#include <utility>
#include <vector>

#include "nonrev/chain.hpp"
#include "nonrev/types.hpp"

namespace nonrev {

// Undirected edge support of a chain: pairs (x,y), x < y, carrying positive
// rates in both directions.
struct EdgeSet {
  std::vector<std::pair<int, int>> edges;  // sorted, x < y

  int size() const { return static_cast<int>(edges.size()); }
  std::pair<int, int> edge(int e) const { return edges[e]; }
  // Index of the undirected edge {x,y}, or -1 if absent.
  int index(int x, int y) const;

  friend bool operator==(const EdgeSet& a, const EdgeSet& b) = default;
};

// Bidirectional edge set of the chain. Throws ZeroRate when an edge has a
// positive rate one way and zero the other (force/flux formulas would be
// undefined there).
EdgeSet edge_set(const ChainSpec& spec);

// Antisymmetric function on ordered state pairs, u_xy = -u_yx, stored once
// per undirected edge on the (x,y), x < y, representative. Hosts forces,
// fluxes and edge tiltings.
struct EdgeField {
  EdgeSet support;
  Vector values;  // aligned with support.edges

  EdgeField() = default;
  EdgeField(EdgeSet s, Vector v);

  int size() const { return support.size(); }
  // Signed access: at(x,y) = -at(y,x); zero off the support.
  double at(int x, int y) const;
};

EdgeField zero_field(const EdgeSet& support);

// Symmetric positive edge weights a_xy = a_yx > 0 setting the scale of the
// flux-force response.
struct Mobility {
  EdgeSet support;
  Vector values;

  Mobility() = default;
  Mobility(EdgeSet s, Vector v);

  int size() const { return support.size(); }
};

bool same_support(const EdgeSet& a, const EdgeSet& b);
void require_same_support(const EdgeSet& a, const EdgeSet& b);

// Discrete gradient of a state potential: (grad xi)_xy = xi(y) - xi(x).
EdgeField edge_gradient(const EdgeSet& support, const Vector& xi);
EdgeField edge_gradient(const EdgeSet& support, const StatePotential& xi);

}  // namespace nonrev
