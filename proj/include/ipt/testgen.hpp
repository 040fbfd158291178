#pragma once

#include <cstdint>
#include <optional>

#include "ipt/partition.hpp"

namespace ipt {

/// diag(1..N) + eps*R with R standard normal; symmetric takes (R + R^T)/2.
/// The sparse variant samples positions without replacement at the given
/// density (counted on the symmetrized pattern) and keeps the unperturbed
/// diagonal unless include_diagonal is set.
struct NearDiagonalSpec {
    std::size_t n = 0;
    double eps = 0.0;
    bool symmetric = false;
    std::optional<double> sparse_density;
    bool include_diagonal = false;  // sparse only; dense R always carries one
    std::uint64_t seed = 0;
};

ComplexMatrix gen_near_diagonal(const NearDiagonalSpec& spec);

/// Q^T diag(10^{-alpha n/N}) Q with Q Haar-like from QR of a seeded Gaussian
/// matrix (R-diagonal signs fixed). Exactly symmetric real output; alpha
/// controls how tightly the spectrum clusters.
ComplexMatrix gen_ill_conditioned(std::size_t n, double alpha, std::uint64_t seed);

/// Sparse symmetric stand-in for configuration-interaction Hamiltonians:
/// increasing diagonal d_i = gap_scale * (i+1), unit-variance normal couplings
/// on a random symmetric pattern of the given density.
ComplexMatrix gen_fci_like(std::size_t n, double density, double gap_scale, std::uint64_t seed);

/// The closed-form 2x2 family [[0, eps], [eps, 1]] as a partition.
Partition explicit_2x2(cplx eps);

/// The 3x3 family diag(0,1,3) + eps*[[0,1,2],[1,0,3],[2,3,0]].
Partition explicit_3x3(cplx eps);

}  // namespace ipt
