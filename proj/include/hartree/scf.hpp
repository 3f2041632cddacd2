#pragma once

#include <optional>
#include <string>

#include "hartree/coulomb.hpp"
#include "hartree/eigen.hpp"
#include "hartree/radial.hpp"

namespace hartree {

struct SolverConfig {
    int n_points = 4000;
    /// Zero selects the default 1e-6 / Z.
    double r_min = 0.0;
    /// Zero selects max(150, 40 / (N - Z)) / Z (150 / Z when N <= Z).
    double r_max = 0.0;
    double mixing = 0.3;
    /// Sup-norm density change relative to sup rho.
    double tol_density = 1e-9;
    double tol_eigen = 1e-11;
    int max_iterations = 500;

    /// Throws std::invalid_argument on non-positive tolerances or mixing outside (0, 1].
    void validate() const;
};

double default_r_min(double Z);
double default_r_max(double Z, double N);

enum class SolveStatus { converged, not_converged, unbound };

std::string to_string(SolveStatus status);

/// Output of a constrained Hartree solve at mass N.
struct HartreeState {
    double Z = 0.0;
    double N = 0.0;
    RadialFunction psi;
    RadialFunction rho;
    /// Z/r - Phi_rho used in the final linear solve.
    RadialFunction phi;
    /// Minus the lowest eigenvalue of -Laplacian - phi.
    double mu = 0.0;
    bool converged = false;
    int iterations = 0;
    SolveStatus status = SolveStatus::not_converged;
    /// Final relative sup-norm density change.
    double density_residual = 0.0;
    Diagnostics diagnostics;
    /// Energy of the mixed density after each accepted update.
    std::vector<double> energies;

    const GridPtr& grid() const { return psi.grid_ptr(); }
};

struct Observables {
    double K = 0.0;
    double A = 0.0;
    double R = 0.0;
    double N = 0.0;
    double J = 0.0;
    double E = 0.0;
};

/// K, A, R, N, J and E for an arbitrary wavefunction in the field of charge Z.
Observables compute_observables(const RadialFunction& psi, double Z, Diagnostics* diag = nullptr);

/// Observables of a solver state; also cross-checks K against int phi rho - mu N and
/// records a warning when the two routes disagree by more than 1e-5 relative.
Observables observables(const HartreeState& state, Diagnostics* diag = nullptr);

/// Kinetic energy from the Euler-Lagrange equation: int phi rho d^3x - mu N.
double kinetic_energy_equation_route(const HartreeState& state);

/// ||(-Laplacian - phi) psi + mu psi||_2 / ||psi||_2.
double euler_lagrange_residual(const HartreeState& state);

/// Hydrogenic density N Z^3 e^{-2 Z r} / pi.
RadialFunction hydrogenic_density(GridPtr grid, double Z, double N);

/// Damped fixed-point iteration for the Hartree equation at mass N.
/// `initial_rho` (any grid) is interpolated and rescaled to mass N when given.
HartreeState scf_solve(double Z, double N, const SolverConfig& config,
                       const RadialFunction* initial_rho = nullptr);

struct CriticalChargeResult {
    double N_c = 0.0;
    HartreeState state;
    /// r_max of the final stage.
    double r_max = 0.0;
    int solves = 0;
};

/// Raised when mu(N) shows no sign change on [Z, 2Z].
struct BracketFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Locates N_c(Z), the mass at which mu vanishes, by bisection on [Z, 2Z] to a
/// bracket of width 2e-7 Z; N_c is the bound end of that bracket.
/// r_max is escalated by 1.5x until N_c moves by less than 1e-4 Z, unless the
/// config pins r_max.
CriticalChargeResult critical_charge(double Z, const SolverConfig& config);

}  // namespace hartree
