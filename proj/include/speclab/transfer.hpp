#pragma once

#include <Eigen/Core>
#include <vector>

#include "speclab/eigensolver.hpp"

namespace speclab {

/// Mesh, FEM space and low spectrum of one domain, shared by several
/// transfer computations.
struct DomainSpectrum {
  StarDomain domain;
  SpacePtr space;
  SpectralBundle bundle;
};

DomainSpectrum domain_spectrum(const StarDomain& domain, int count, double mesh_h);

struct TransferData {
  int j = 1;  // 1-based index of the ball eigenvalue
  std::vector<double> a_coeffs;  // <u_Omega^f, u_{Omega,k}>
  std::vector<double> b_coeffs;  // <u_{B,j}|_Omega, u_{Omega,k}>
  double lambda_ball = 0.0;
  std::vector<double> lambdas;
  double residual = 0.0;  // max_k |lambda_B b_k - lambda_k a_k|
  double tail = 0.0;      // (||u_Omega^f||^2 - sum a_k^2) / ||u_Omega^f||^2
  bool in_cluster = false;  // lambda_{B,j} is degenerate
};

/// f = lambda_{B,j} u_{B,j} with the analytic ball mode centered at the
/// origin; u_Omega^f and the coefficients use the domain's mass matrix.
TransferData compute_transfer(const DomainSpectrum& spectrum, int j, int k_max);
TransferData compute_transfer(const StarDomain& domain, int j, int k_max, double mesh_h);

struct SimpleMatch {
  double distance = 0.0;  // int_{R^2} (u_{Omega,j} -+ u_{B,j})^2, best sign
  double deficit = 0.0;   // tor(Omega) - tor(B)
  double ratio = 0.0;     // deficit / distance
};
SimpleMatch match_simple(const DomainSpectrum& spectrum, int j, const GridOptions& grid = {});

struct MultiplicityMatch {
  Eigen::MatrixXd raw;  // raw(l, k) = <u_{Omega,j+l}, u_{B,j+k}>
  Eigen::MatrixXd d;    // polar factor of raw
  double gram_offdiag = 0.0;  // max off-diagonal entry of raw raw^T
  double residual = 0.0;      // max_l ||sum_k d_lk u_{B,j+k} - u_{Omega,j+l}||^2
};

/// `cluster` lists consecutive 1-based ball indices forming one
/// eigenvalue. Throws ClusterMismatch when the matching domain eigenvalues
/// are not separated from their neighbours by more than their own spread.
MultiplicityMatch match_multiplicity(const DomainSpectrum& spectrum, const std::vector<int>& cluster,
                                     const GridOptions& grid = {});

}  // namespace speclab
