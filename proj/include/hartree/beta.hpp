#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hartree/radial.hpp"

namespace hartree {

struct HartreeState;

/// Known interval for the infimum of the repulsion-to-(J N) ratio.
inline constexpr double beta_lower_bound = 0.8218;
inline constexpr double beta_upper_bound = 0.8705;

struct DegenerateDensity : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// (1/2) int int rho(x) (|x|^2 + |y|^2)/|x-y| rho(y) / (J N).
/// Invariant under rho -> c rho and rho -> s^3 rho(s r).
double beta_ratio(const RadialFunction& rho);

/// Parametrized family of radial trial densities.
struct TrialFamily {
    std::string id;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> defaults;
    /// Unnormalized density at radius r for parameters theta.
    std::function<double(std::span<const double>, double)> density;

    std::size_t dimension() const { return defaults.size(); }
    RadialFunction generate(std::span<const double> theta, GridPtr grid) const;
    void validate() const;
};

/// Built-in families: "exp", "exppoly", "gaussmix", "shellcore".
TrialFamily make_family(const std::string& id);
std::vector<std::string> family_ids();

struct BetaOptions {
    int restarts = 20;
    double tol = 1e-10;
    std::uint64_t seed = 42;
    int n_points = 4000;
    double r_min = 1e-6;
    double r_max = 80.0;
    int max_evaluations = 3000;
};

struct BetaEstimate {
    std::string family;
    double value = 0.0;
    std::vector<double> theta_opt;
    /// |value(n) - value(2n)| at theta_opt.
    double quad_error = 0.0;
    std::uint64_t seed = 0;
    /// Ratio at the family's default parameters.
    double default_value = 0.0;
    int evaluations = 0;
};

/// Box-constrained Nelder-Mead from the default parameters plus `restarts`
/// seeded random starts. Any trial value is an upper bound on the infimum.
BetaEstimate minimize_beta(const TrialFamily& family, const BetaOptions& options = {},
                           Diagnostics* diag = nullptr);

/// Ratio evaluated on the solver's own density.
double beta_on_hartree(const HartreeState& state, Diagnostics* diag = nullptr);

}  // namespace hartree
