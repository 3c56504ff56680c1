#include "speclab/transfer.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "speclab/closed_forms.hpp"
#include "speclab/errors.hpp"

namespace speclab {

namespace {

const std::pair<Point, Point> kBallBox{Point(-1.0, -1.0), Point(1.0, 1.0)};

ScalarFunction ball_mode(int j) {
  const closed_forms::DiskMode mode = closed_forms::disk_eigenpair(j);
  return [mode](const Point& x) { return closed_forms::disk_mode_value(mode, x); };
}

}  // namespace

DomainSpectrum domain_spectrum(const StarDomain& domain, int count, double mesh_h) {
  SpacePtr space = make_space(domain, mesh_h);
  SpectralBundle bundle = solve_eigen(space, count);
  return {domain, std::move(space), std::move(bundle)};
}

TransferData compute_transfer(const DomainSpectrum& spectrum, int j, int k_max) {
  if (j < 1 || j > 6) throw InvalidConfig("compute_transfer: j must lie in 1..6");
  if (k_max < j + 4) throw InvalidConfig("compute_transfer: k_max must be at least j + 4");
  if (k_max > spectrum.bundle.size())
    throw InvalidConfig("compute_transfer: k_max exceeds the computed spectrum");
  const FemSpace& space = *spectrum.space;
  const closed_forms::DiskMode mode = closed_forms::disk_eigenpair(j);
  const ScalarFunction u_ball = ball_mode(j);
  const double lambda_b = mode.eigenvalue;

  const Vector load = space.load([&](const Point& x) { return lambda_b * u_ball(x); });
  const Vector u_f = space.solve(load);
  const Vector mu_f = space.mass() * u_f;
  const Vector mu_b = space.mass() * interpolate(spectrum.space, u_ball).values;

  TransferData out;
  out.j = j;
  out.lambda_ball = lambda_b;
  out.in_cluster = mode.multiplicity > 1;
  double parseval = 0.0;
  for (int k = 0; k < k_max; ++k) {
    const Vector& u_k = spectrum.bundle.eigenfunctions[k].values;
    const double lambda_k = spectrum.bundle.eigenvalues[k];
    const double a = u_k.dot(mu_f), b = u_k.dot(mu_b);
    out.a_coeffs.push_back(a);
    out.b_coeffs.push_back(b);
    out.lambdas.push_back(lambda_k);
    out.residual = std::max(out.residual, std::abs(lambda_b * b - lambda_k * a));
    parseval += a * a;
  }
  const double norm_sq = u_f.dot(mu_f);
  out.tail = norm_sq > 0.0 ? (norm_sq - parseval) / norm_sq : 0.0;
  return out;
}

TransferData compute_transfer(const StarDomain& domain, int j, int k_max, double mesh_h) {
  return compute_transfer(domain_spectrum(domain, k_max, mesh_h), j, k_max);
}

SimpleMatch match_simple(const DomainSpectrum& spectrum, int j, const GridOptions& grid) {
  if (closed_forms::disk_eigenpair(j).multiplicity != 1)
    throw InvalidConfig("match_simple: ball eigenvalue is not simple");
  if (j > spectrum.bundle.size()) throw InvalidConfig("match_simple: j exceeds the spectrum");
  const FemField& u = spectrum.bundle.eigenfunctions[j - 1];
  const ScalarFunction mode = ball_mode(j);
  SimpleMatch out;
  const double plus = cross_l2(u, mode, kBallBox, grid);
  const double minus = cross_l2(-1.0 * u, mode, kBallBox, grid);
  out.distance = std::min(plus, minus);
  out.deficit = torsional_rigidity(torsion_function(spectrum.space)) -
                closed_forms::ball_torsional_rigidity(2, 1.0);
  out.ratio = out.distance > 0.0 ? out.deficit / out.distance : 0.0;
  return out;
}

MultiplicityMatch match_multiplicity(const DomainSpectrum& spectrum, const std::vector<int>& cluster,
                                     const GridOptions& grid) {
  if (cluster.empty()) throw InvalidConfig("match_multiplicity: empty cluster");
  const int first = cluster.front(), size = static_cast<int>(cluster.size());
  for (int l = 0; l < size; ++l) {
    if (cluster[l] != first + l) throw InvalidConfig("match_multiplicity: cluster must be consecutive");
  }
  const double lambda_b = closed_forms::disk_eigenpair(first).eigenvalue;
  for (int idx : cluster) {
    if (std::abs(closed_forms::disk_eigenpair(idx).eigenvalue - lambda_b) > 1e-9 * lambda_b)
      throw InvalidConfig("match_multiplicity: indices are not one ball eigenvalue");
  }
  const int k_max = std::max(first + size + 4, first + 4);
  if (k_max > spectrum.bundle.size())
    throw InvalidConfig("match_multiplicity: spectrum too short for the cluster");

  // The domain eigenvalues first..last must sit apart from their neighbours.
  const auto& lam = spectrum.bundle.eigenvalues;
  const int lo = first - 1, hi = first + size - 2;
  const double spread = lam[hi] - lam[lo];
  double gap = lam[hi + 1] - lam[hi];
  if (lo > 0) gap = std::min(gap, lam[lo] - lam[lo - 1]);
  if (!(spread < gap))
    throw ClusterMismatch("match_multiplicity: domain eigenvalues do not form a matching cluster");

  MultiplicityMatch out;
  out.raw.resize(size, size);
  for (int k = 0; k < size; ++k) {
    const TransferData t = compute_transfer(spectrum, first + k, k_max);
    for (int l = 0; l < size; ++l) out.raw(l, k) = t.b_coeffs[lo + l];
  }
  const Eigen::MatrixXd gram = out.raw * out.raw.transpose();
  for (int l = 0; l < size; ++l)
    for (int k = 0; k < size; ++k)
      if (l != k) out.gram_offdiag = std::max(out.gram_offdiag, std::abs(gram(l, k)));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(out.raw, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.d = svd.matrixU() * svd.matrixV().transpose();

  std::vector<closed_forms::DiskMode> modes;
  for (int idx : cluster) modes.push_back(closed_forms::disk_eigenpair(idx));
  for (int l = 0; l < size; ++l) {
    const Eigen::VectorXd row = out.d.row(l).transpose();
    const ScalarFunction combo = [&modes, row](const Point& x) {
      double v = 0.0;
      for (std::size_t k = 0; k < modes.size(); ++k)
        v += row[static_cast<int>(k)] * closed_forms::disk_mode_value(modes[k], x);
      return v;
    };
    out.residual = std::max(
        out.residual, cross_l2(spectrum.bundle.eigenfunctions[lo + l], combo, kBallBox, grid));
  }
  return out;
}

}  // namespace speclab
