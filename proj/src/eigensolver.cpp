#include "speclab/eigensolver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "speclab/errors.hpp"

namespace speclab {

namespace {

using Dense = Eigen::MatrixXd;

class KrylovBasis {
 public:
  KrylovBasis(const FemSpace& space, int capacity) : space_(space), capacity_(capacity) {}

  int size() const { return m_; }
  int capacity() const { return capacity_; }

  /// M-orthogonalize x against the basis (twice) and normalize; returns
  /// false when x is numerically in the span.
  bool append(Vector x) {
    if (m_ == capacity()) return false;
    const double before = std::sqrt(std::max(0.0, x.dot(space_.free_mass() * x)));
    if (before == 0.0) return false;
    for (int pass = 0; pass < 2; ++pass) {
      if (m_ > 0) x -= q_.leftCols(m_) * (mq_.leftCols(m_).transpose() * x);
    }
    Vector mx = space_.free_mass() * x;
    const double after = std::sqrt(std::max(0.0, x.dot(mx)));
    if (after <= 1e-10 * before) return false;
    if (m_ == q_.cols()) {
      const int cols = std::min(capacity_, std::max(16, 2 * m_));
      q_.conservativeResize(x.size(), cols);
      mq_.conservativeResize(x.size(), cols);
      w_.conservativeResize(x.size(), cols);
    }
    q_.col(m_) = x / after;
    mq_.col(m_) = mx / after;
    w_.col(m_) = space_.solve_free(mq_.col(m_));
    ++m_;
    return true;
  }

  auto q() const { return q_.leftCols(m_); }
  auto w(int j) const { return w_.col(j); }

  /// Projected operator T = Q^T M K^{-1} M Q.
  Dense projected() const {
    Dense t = mq_.leftCols(m_).transpose() * w_.leftCols(m_);
    return 0.5 * (t + t.transpose());
  }

 private:
  const FemSpace& space_;
  Dense q_, mq_, w_;
  int capacity_;
  int m_ = 0;
};

double moment(const FemSpace& space, const Vector& u, const Point& c, int which) {
  const TriangleMesh& m = space.mesh();
  Vector g(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v) {
    const Point d = m.vertices[v] - c;
    switch (which) {
      case 0: g[v] = 1.0; break;
      case 1: g[v] = d.x(); break;
      case 2: g[v] = d.y(); break;
      case 3: g[v] = d.x() * d.x() - d.y() * d.y(); break;
      default: g[v] = d.x() * d.y(); break;
    }
  }
  return g.dot(space.mass() * u);
}

Point mesh_centroid(const TriangleMesh& m) {
  Point c = Point::Zero();
  double a = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const auto& tri = m.triangles[t];
    c += m.element_area[t] * (m.vertices[tri[0]] + m.vertices[tri[1]] + m.vertices[tri[2]]) / 3.0;
    a += m.element_area[t];
  }
  return c / a;
}

}  // namespace

const std::vector<int>& SpectralBundle::cluster_of(int i) const {
  for (const auto& c : clusters)
    if (std::find(c.begin(), c.end(), i) != c.end()) return c;
  throw InvalidConfig("cluster_of: index out of range");
}

double relative_residual(const FemSpace& space, double lambda, const Vector& u) {
  const Vector y = space.restrict_free(u);
  const Vector my = space.free_mass() * y;
  const Vector r = space.free_stiffness() * y - lambda * my;
  return r.norm() / (lambda * my.norm());
}

SpectralBundle solve_eigen(const SpacePtr& space_ptr, int count, const EigenOptions& opts) {
  const FemSpace& space = *space_ptr;
  const int n = space.num_free();
  if (count < 1) throw InvalidConfig("solve_eigen: count must be >= 1");
  if (4 * count > n) throw InvalidConfig("solve_eigen: too many eigenpairs for this mesh");

  const int first_target = std::min({opts.max_basis, n, std::max(45, 6 * count)});
  KrylovBasis basis(space, std::min(n, opts.max_basis));
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  auto random_vector = [&] {
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = unif(rng);
    return x;
  };

  // Block Lanczos: the next block is K^{-1} M applied to the last block.
  int block_begin = 0;
  for (int j = 0; j < opts.block_size; ++j) basis.append(random_vector());
  auto extend = [&](int target) {
    while (basis.size() < target && basis.size() < basis.capacity()) {
      const int block_end = basis.size();
      for (int j = block_begin; j < block_end; ++j) {
        if (!basis.append(basis.w(j))) basis.append(random_vector());
      }
      block_begin = block_end;
    }
  };

  int target = first_target;
  while (true) {
    extend(target);
    const int m = basis.size();
    Eigen::SelfAdjointEigenSolver<Dense> eig(basis.projected());
    // Largest theta of K^{-1} M <=> smallest lambda.
    SpectralBundle out;
    bool converged = true;
    std::vector<Vector> vectors;
    for (int i = 0; i < count; ++i) {
      const int col = m - 1 - i;
      const double theta = eig.eigenvalues()[col];
      if (!(theta > 0.0)) {
        converged = false;
        break;
      }
      const double lambda = 1.0 / theta;
      Vector y = basis.q() * eig.eigenvectors().col(col);
      const Vector my = space.free_mass() * y;
      const Vector r = space.free_stiffness() * y - lambda * my;
      if (r.norm() > opts.residual_tol * lambda * my.norm()) converged = false;
      out.eigenvalues.push_back(lambda);
      vectors.push_back(std::move(y));
    }
    if (!converged) {
      if (m >= basis.capacity())
        throw EigenNoConvergence("solve_eigen: Krylov basis exhausted before convergence");
      target = std::min(basis.capacity(), m + std::max(30, 2 * count));
      continue;
    }

    const Point c = mesh_centroid(space.mesh());
    for (int i = 0; i < count; ++i) {
      Vector u = space.extend_free(vectors[i]);
      u /= std::sqrt(u.dot(space.mass() * u));
      if (i == 0) {
        if (u.sum() < 0.0) u = -u;
      } else {
        for (int which = 0; which < 5; ++which) {
          const double mom = moment(space, u, c, which);
          if (std::abs(mom) > 1e-8) {
            if (mom < 0.0) u = -u;
            break;
          }
        }
      }
      out.eigenfunctions.push_back({space_ptr, std::move(u)});
    }
    std::vector<int> current = {0};
    for (int i = 1; i < count; ++i) {
      const double gap = (out.eigenvalues[i] - out.eigenvalues[i - 1]) / out.eigenvalues[i - 1];
      if (gap <= opts.cluster_gap) {
        current.push_back(i);
      } else {
        out.clusters.push_back(current);
        current = {i};
      }
    }
    out.clusters.push_back(current);
    return out;
  }
}

}  // namespace speclab
