#include "nonrev/chain.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>

#include "nonrev/solvers.hpp"

namespace nonrev {

ChainSpec::ChainSpec(Matrix r, std::vector<std::string> state_labels)
    : rates(std::move(r)), labels(std::move(state_labels)) {
  const int n = static_cast<int>(rates.rows());
  if (n < 2 || rates.cols() != n)
    throw InvalidSpec("rate matrix must be square with n >= 2");
  if (!labels.empty() && static_cast<int>(labels.size()) != n)
    throw InvalidSpec("label count does not match state count");
  for (int x = 0; x < n; ++x) {
    if (rates(x, x) != 0.0)
      throw InvalidSpec("diagonal rates must not be stored");
    for (int y = 0; y < n; ++y)
      if (rates(x, y) < 0.0 || !std::isfinite(rates(x, y)))
        throw InvalidSpec("rates must be finite and nonnegative");
  }
}

std::string ChainSpec::label(int x) const {
  if (!labels.empty()) return labels[x];
  return std::to_string(x);
}

namespace {

// Strongly connected components of the positive-rate digraph (Kosaraju).
int count_sccs(const Matrix& rates) {
  const int n = static_cast<int>(rates.rows());
  std::vector<int> order;
  order.reserve(n);
  std::vector<bool> seen(n, false);

  auto dfs = [&](int start, bool forward, auto&& visit) {
    std::vector<int> stack = {start};
    seen[start] = true;
    while (!stack.empty()) {
      const int x = stack.back();
      bool advanced = false;
      for (int y = 0; y < n && !advanced; ++y) {
        const double r = forward ? rates(x, y) : rates(y, x);
        if (r > 0.0 && !seen[y]) {
          seen[y] = true;
          stack.push_back(y);
          advanced = true;
        }
      }
      if (!advanced) {
        stack.pop_back();
        visit(x);
      }
    }
  };

  for (int x = 0; x < n; ++x)
    if (!seen[x]) dfs(x, true, [&](int v) { order.push_back(v); });

  std::fill(seen.begin(), seen.end(), false);
  int components = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (!seen[*it]) {
      ++components;
      dfs(*it, false, [](int) {});
    }
  }
  return components;
}

}  // namespace

ValidationReport validate(const ChainSpec& spec) {
  ValidationReport report;
  const int n = spec.n_states();
  report.n_states = n;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (spec.rates(x, y) < 0.0) report.rates_nonnegative = false;
      if (spec.rates(x, y) > 0.0 && spec.rates(y, x) == 0.0)
        report.asymmetric_edges.emplace_back(x, y);
    }
  report.support_symmetric = report.asymmetric_edges.empty();
  report.n_strongly_connected_components = count_sccs(spec.rates);
  report.irreducible = report.n_strongly_connected_components == 1;
  return report;
}

Matrix generator(const ChainSpec& spec) {
  const int n = spec.n_states();
  Matrix w = spec.rates.transpose();
  for (int x = 0; x < n; ++x) w(x, x) = -spec.rates.row(x).sum();
  return w;
}

Density stationary(const ChainSpec& spec) {
  const int n = spec.n_states();
  const Matrix w = generator(spec);

  // The null space must be exactly one-dimensional.
  Eigen::FullPivLU<Matrix> rank_check(w);
  rank_check.setThreshold(1e-12);
  if (rank_check.rank() != n - 1)
    throw SingularSystem("generator null space is not one-dimensional (rank " +
                         std::to_string(rank_check.rank()) + " of " +
                         std::to_string(n) + ")");

  // Replace the last equation by the normalization constraint.
  Matrix a = w;
  a.row(n - 1).setOnes();
  Vector b = Vector::Zero(n);
  b(n - 1) = 1.0;
  Eigen::PartialPivLU<Matrix> lu(a);
  Vector pi = lu.solve(b);
  pi += lu.solve(b - a * pi);  // one refinement pass

  const double scale = w.cwiseAbs().maxCoeff();
  if ((w * pi).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw SingularSystem("stationary solve residual exceeds tolerance");
  if ((pi.array() <= 0.0).any())
    throw SingularSystem("stationary vector not strictly positive");
  pi /= pi.sum();
  return Density(std::move(pi));
}

EvolveResult evolve(const ChainSpec& spec, const Density& rho0, double t_end,
                    double dt) {
  if (dt <= 0.0) throw InvalidSpec("evolve: dt must be positive");
  if (t_end < 0.0) throw InvalidSpec("evolve: t_end must be nonnegative");
  const Matrix w = generator(spec);

  auto rhs = [&](const Vector& v) -> Vector { return w * v; };
  auto check = [](const Vector& v) {
    if ((v.array() < -1e-8).any())
      throw StepTooLarge("negative density encountered; reduce dt");
  };

  EvolveResult out;
  Vector rho = rho0.values;
  double t = 0.0;
  out.times.push_back(t);
  out.densities.push_back(rho0);

  while (t < t_end - 1e-15 * std::max(1.0, t_end)) {
    const double step = std::min(dt, t_end - t);
    rho = rk4_step(rhs, rho, step, check);
    t += step;

    const double defect = std::abs(rho.sum() - 1.0);
    if (defect > 1e-10)
      throw StepTooLarge("mass defect " + std::to_string(defect));
    Vector normalized = (rho / rho.sum()).cwiseMax(0.0);
    out.times.push_back(t);
    out.densities.push_back(Density(normalized / normalized.sum()));
  }
  return out;
}

bool detailed_balance(const ChainSpec& spec, const Density& pi, double tol) {
  const int n = spec.n_states();
  double scale = 0.0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      scale = std::max(scale, pi(x) * spec.rate(x, y));
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (std::abs(pi(x) * spec.rate(x, y) - pi(y) * spec.rate(y, x)) >
          tol * std::max(1.0, scale))
        return false;
  return true;
}

}  // namespace nonrev
