#pragma once

#include <vector>

#include "modrop/opalg.hpp"

namespace modrop {

/// Real sampling grid on which lazily built states are compared.
struct SamplingSpec {
    double L = 4.0;
    int N = 128;
};

/// The fixed panel of three Gaussian test states. Coordinate i of state k
/// uses panel entry (k + i) mod 3: (-pi, 0), (-2, 0.3+0.1i), (-1.5, -0.4).
std::vector<State> test_panel(int dims);

/// Relative L2 distance of two states sampled on spec.
double state_residual(const State& a, const State& b, const SamplingSpec& spec, double h);

/// Max over the panel of the relative distance between lhs(phi) and rhs(phi).
double operator_residual(const FDOperator& lhs, const FDOperator& rhs, const std::vector<State>& panel,
                         const SamplingSpec& spec, double h);

/// Max over panel states of the distance of the stacked entries, relative to
/// the larger of the two stacked norms.
double matrix_residual(const OperatorMatrix& lhs, const OperatorMatrix& rhs, const std::vector<State>& panel,
                       const SamplingSpec& spec, double h);

/// Gaussian probes exp(-|x - c|^2 / (2 sigma^2)) centred on a square lattice
/// of side count points in [-extent, extent]^dims.
std::vector<State> probe_panel(int dims, int count, double extent, double sigma);

/// Pairings Int (A^T psi_k)(x) phi(x) dx over the grid samples of phi.
std::vector<cplx> weak_pairings(const FDOperator& A, const GridData& phi, const std::vector<State>& probes,
                                double h);

/// ||a - b|| / max(||a||, ||b||) for pairing vectors.
double vector_residual(const std::vector<cplx>& a, const std::vector<cplx>& b);

}  // namespace modrop
