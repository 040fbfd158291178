#include "ipt/rspt.hpp"

#include <cmath>
#include <limits>

#include "ipt/kernels.hpp"
#include "ipt/solver.hpp"

namespace ipt {

RSExpansion rs_coefficients(const Partition& unit, const InverseGaps& g, int order) {
    if (order < 0) throw std::invalid_argument("rs_coefficients: order must be non-negative");
    if (unit.size() != g.size())
        throw std::invalid_argument("rs_coefficients: partition/gaps size mismatch");
    const std::size_t n = unit.size();

    RSExpansion exp;
    exp.coefficients.push_back(ComplexMatrix::identity(n));
    exp.eigenvalue_coefficients.push_back(unit.d);

    std::vector<ComplexMatrix> products;  // products[s] = Delta * Z[s]
    ComplexMatrix w = ComplexMatrix::dense(n, n);
    for (int l = 1; l <= order; ++l) {
        kernels::matmul(unit.delta, exp.coefficients[static_cast<std::size_t>(l - 1)], w);
        products.push_back(w);

        cvec lambda(n);
        for (std::size_t i = 0; i < n; ++i)
            lambda[i] = products.back().at(i, i);
        exp.eigenvalue_coefficients.push_back(lambda);

        // S = sum_{s=0}^{l-1} Z[l-1-s] * D(Delta Z[s]) - Delta Z[l-1]
        ComplexMatrix s = ComplexMatrix::dense(n, n);
        for (int ss = 0; ss < l; ++ss) {
            const ComplexMatrix& zprev = exp.coefficients[static_cast<std::size_t>(l - 1 - ss)];
            const ComplexMatrix& prod = products[static_cast<std::size_t>(ss)];
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    s.at(i, j) += zprev.get(i, j) * prod.get(j, j);
        }
        ComplexMatrix z = ComplexMatrix::dense(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                z.at(i, j) = g.entry(i, j) * (s.get(i, j) - products.back().get(i, j));
        exp.coefficients.push_back(std::move(z));
    }
    return exp;
}

ComplexMatrix rs_partial_sum(const RSExpansion& exp, cplx eps, int k) {
    if (k < 0 || k > exp.order()) throw std::invalid_argument("rs_partial_sum: order out of range");
    const std::size_t n = exp.coefficients.front().rows();
    ComplexMatrix acc = exp.coefficients[static_cast<std::size_t>(k)];
    for (int l = k - 1; l >= 0; --l) {
        const ComplexMatrix& c = exp.coefficients[static_cast<std::size_t>(l)];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) acc.at(i, j) = c.get(i, j) + eps * acc.at(i, j);
    }
    return acc;
}

namespace {

double fit_slope(const std::vector<double>& logx, const std::vector<double>& logy) {
    const double m = static_cast<double>(logx.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < logx.size(); ++i) {
        sx += logx[i];
        sy += logy[i];
        sxx += logx[i] * logx[i];
        sxy += logx[i] * logy[i];
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

ContainmentReport containment_check(const Partition& unit, const InverseGaps& g, int max_order,
                                    const std::vector<cplx>& eps_grid) {
    const RSExpansion exp = rs_coefficients(unit, g, max_order);
    const std::size_t n = unit.size();
    const double noise_floor = 1e3 * std::numeric_limits<double>::epsilon();

    // errors[k][point]
    std::vector<std::vector<double>> errors(static_cast<std::size_t>(max_order) + 1);
    std::vector<double> log_eps_used;
    ContainmentReport report;

    std::vector<std::vector<double>> log_eps(static_cast<std::size_t>(max_order) + 1);
    for (const cplx& eps : eps_grid) {
        Partition scaled;
        scaled.d = unit.d;
        scaled.delta = unit.delta;
        scaled.delta.scale(eps);

        ComplexMatrix z = ComplexMatrix::identity(n);
        bool blew_up = false;
        std::vector<double> errs(static_cast<std::size_t>(max_order) + 1, 0.0);
        for (int k = 0; k <= max_order; ++k) {
            if (k > 0) {
                z = apply_map_full(scaled, g, z);
                if (!std::isfinite(kernels::frobenius_norm(z))) {
                    blew_up = true;
                    break;
                }
            }
            const ComplexMatrix ref = rs_partial_sum(exp, eps, k);
            double e = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) e += std::norm(z.get(i, j) - ref.get(i, j));
            errs[static_cast<std::size_t>(k)] = std::sqrt(e);
        }
        if (blew_up) {
            report.excluded_points.push_back(eps);
            continue;
        }
        for (int k = 0; k <= max_order; ++k) {
            const double e = errs[static_cast<std::size_t>(k)];
            if (e >= noise_floor) {
                errors[static_cast<std::size_t>(k)].push_back(std::log(e));
                log_eps[static_cast<std::size_t>(k)].push_back(std::log(std::abs(eps)));
            }
        }
    }

    for (int k = 0; k <= max_order; ++k) {
        ContainmentReport::OrderFit fit;
        fit.k = k;
        fit.points_used = static_cast<int>(errors[static_cast<std::size_t>(k)].size());
        if (fit.points_used < 2) {
            fit.below_noise_floor = true;
            fit.slope = std::numeric_limits<double>::infinity();
        } else {
            fit.slope = fit_slope(log_eps[static_cast<std::size_t>(k)],
                                  errors[static_cast<std::size_t>(k)]);
        }
        report.orders.push_back(fit);
    }
    return report;
}

}  // namespace ipt
