#pragma once

#include "ipt/lu.hpp"
#include "ipt/solver.hpp"

namespace ipt {

/// Thrown when the seed basis is numerically rank-deficient or its estimated
/// condition number exceeds the refinement guard (1e6, roughly the reciprocal
/// of 100x single-precision epsilon).
struct SingularSeed : std::runtime_error {
    explicit SingularSeed(double condition);
    double condition;
};

struct EigDecomp {
    cvec values;
    ComplexMatrix vectors;
    bool converged = false;
};

/// Direct dense eigendecomposition in working precision (Jacobi for Hermitian
/// input, Hessenberg QR otherwise). Serves as the seed oracle and as the
/// baseline the refined residuals are compared against.
EigDecomp dense_eigensolve(const ComplexMatrix& m);

/// Eigenbasis computed entirely in 32-bit arithmetic and returned with
/// float-rounded entries, emulating a single-precision driver.
ComplexMatrix make_low_precision_seed(const ComplexMatrix& m);

struct RefinementResult {
    ComplexMatrix Z;
    cvec eigenvalues;
    double seed_residual = 0.0;     // |M Z0 - Z0 diag(M')|_F
    double refined_residual = 0.0;  // |M Z - Z Lambda|_F
    double seed_condition_estimate = 0.0;
    SolveStatus status = SolveStatus::MaxIterations;
    ConvergenceCertificate inner_certificate;  // diagnostic only, not enforced
    int inner_iterations = 0;
};

/// Refines an approximate eigenbasis: promotes the seed, forms
/// M' = Z0^{-1} M Z0 by LU solves, runs the full-spectrum fixed-point solve on
/// the near-diagonal M', and rotates back with Z = Z0 Z'.
RefinementResult refine_spectrum(const ComplexMatrix& m, const ComplexMatrix& seed,
                                 const IterationConfig& config = {});

}  // namespace ipt
