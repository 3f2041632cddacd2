#pragma once

#include "hartree/radial.hpp"

namespace hartree {

/// Lowest s-wave eigenpair of -Laplacian - V.
struct GroundState {
    double eigenvalue = 0.0;
    /// Non-negative eigenfunction normalized to unit mass.
    RadialFunction psi;
    /// False when the lowest eigenvalue is >= 0 (box state, no bound state).
    bool bound = false;
};

/// Solves (-Laplacian - V) psi = E psi on l = 0 functions.
///
/// With u = r psi and y = u / sqrt(r) the radial equation in t = ln r reads
/// y'' = (1/4 - r^2 (V + E)) y, discretized with the Numerov three-point
/// scheme. The eigenvalue is located by bisection on the Sturm count of the
/// symmetric tridiagonal Numerov matrix and the eigenvector is polished by
/// inverse iteration. Below r_min the solution continues as the free
/// solution y ~ e^{t/2}; y vanishes one step past r_max.
///
/// `tol_eigen` bounds the final bracket width relative to the potential's
/// energy scale (max r V)^2 / 4.
GroundState ground_state_eigen(const RadialFunction& potential, double tol_eigen = 1e-11,
                               Diagnostics* diag = nullptr);

/// Number of eigenvalues of the discretized operator strictly below `energy`.
std::size_t count_eigenvalues_below(const RadialFunction& potential, double energy);

}  // namespace hartree
