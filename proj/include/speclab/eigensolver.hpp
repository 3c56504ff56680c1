#pragma once

#include <cstdint>
#include <vector>

#include "speclab/fem.hpp"

namespace speclab {

struct SpectralBundle {
  std::vector<double> eigenvalues;      // ascending
  std::vector<FemField> eigenfunctions;  // int u^2 = 1, sign-fixed
  std::vector<std::vector<int>> clusters;

  int size() const { return static_cast<int>(eigenvalues.size()); }
  /// Cluster containing index i (0-based).
  const std::vector<int>& cluster_of(int i) const;
};

struct EigenOptions {
  int block_size = 3;
  double residual_tol = 1e-8;
  double cluster_gap = 1e-6;
  int max_basis = 600;
  std::uint64_t seed = 0x5eed;
};

/// Lowest `count` Dirichlet eigenpairs of the P1 pencil (K, M) by block
/// Lanczos on K^{-1} M (shift zero) with full reorthogonalization in the
/// M-inner product.
SpectralBundle solve_eigen(const SpacePtr& space, int count, const EigenOptions& opts = {});

/// Euclidean residual ||K u - lambda M u|| relative to lambda ||M u||.
double relative_residual(const FemSpace& space, double lambda, const Vector& u);

}  // namespace speclab
