#pragma once

#include "ipt/partition.hpp"

namespace ipt {

/// Power-series coefficients of the eigenbasis of diag(d) + eps*Delta0 around
/// eps = 0, in the chart with unit diagonal. Z[0] = I and diag(Z[l]) = 0 for
/// l >= 1; eigenvalue coefficients start at lambda[0] = d.
struct RSExpansion {
    std::vector<ComplexMatrix> coefficients;
    std::vector<cvec> eigenvalue_coefficients;

    int order() const { return static_cast<int>(coefficients.size()) - 1; }
};

/// Coefficients via the recursion
///   Z[l] = G o (sum_{s=0}^{l-1} Z[l-1-s] D(Delta Z[s]) - Delta Z[l-1]),
///   lambda_i[l] = (Delta Z[l-1])_ii.
/// The partition carries the unit perturbation Delta0; eps enters only at
/// evaluation time. Order l costs l matrix products.
RSExpansion rs_coefficients(const Partition& unit, const InverseGaps& g, int order);

/// Horner-evaluated partial sum sum_{l=0}^{k} eps^l Z[l]; k <= order.
ComplexMatrix rs_partial_sum(const RSExpansion& exp, cplx eps, int k);

/// Per-order power-law fit of |Z_iter^(k)(eps) - Z_partial^(k)(eps)|_F over a
/// grid of eps values. The k-step iterate reproduces the k-th partial sum up
/// to a remainder of order eps^{k+1}, so the fitted log-log slope should reach
/// k+1. Differences below the noise floor (1e3 * machine epsilon) are
/// discarded; orders whose remainder is entirely at the floor are flagged
/// below_noise_floor with an unusable slope.
struct ContainmentReport {
    struct OrderFit {
        int k = 0;
        double slope = 0.0;
        int points_used = 0;
        bool below_noise_floor = false;
    };
    std::vector<OrderFit> orders;
    std::vector<cplx> excluded_points;  // eps values where the iterate blew up
};

ContainmentReport containment_check(const Partition& unit, const InverseGaps& g, int max_order,
                                    const std::vector<cplx>& eps_grid);

}  // namespace ipt
