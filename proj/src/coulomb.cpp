#include "hartree/coulomb.hpp"

#include <numbers>
#include <stdexcept>

namespace hartree {

PotentialField newton_potential(const RadialFunction& rho) {
    require_density(rho, "newton_potential");
    const auto& g = rho.grid();
    const std::size_t n = g.size();
    const double h = g.step();
    const double four_pi = 4.0 * std::numbers::pi;
    const auto v = rho.values();

    // Enclosed charge: integrand 4 pi r^3 rho in t.
    std::vector<double> enclosed(n);
    const double r0 = g.r_min();
    enclosed[0] = four_pi * r0 * r0 * r0 * v[0] / 3.0;
    double prev = four_pi * r0 * r0 * r0 * v[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double r = g.r(i);
        const double cur = four_pi * r * r * r * v[i];
        enclosed[i] = enclosed[i - 1] + 0.5 * h * (prev + cur);
        prev = cur;
    }

    // Exterior part: integrand 4 pi r^2 rho in t.
    std::vector<double> outer(n);
    outer[n - 1] = 0.0;
    const double rn = g.r_max();
    prev = four_pi * rn * rn * v[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        const double r = g.r(i);
        const double cur = four_pi * r * r * v[i];
        outer[i] = outer[i + 1] + 0.5 * h * (prev + cur);
        prev = cur;
    }

    std::vector<double> phi(n);
    for (std::size_t i = 0; i < n; ++i) {
        phi[i] = enclosed[i] / g.r(i) + outer[i];
    }
    return PotentialField{RadialFunction(rho.grid_ptr(), std::move(phi)), enclosed.back()};
}

double weighted_repulsion(const RadialFunction& rho, const PotentialField& phi,
                          const RadialFunction& weight) {
    return 2.0 * integrate_volume(weight.times(rho).times(phi.values));
}

double weighted_repulsion(const RadialFunction& rho, const RadialFunction& weight) {
    return weighted_repulsion(rho, newton_potential(rho), weight);
}

double repulsion_energy(const RadialFunction& rho) {
    const auto phi = newton_potential(rho);
    return 0.5 * integrate_volume(rho.times(phi.values));
}

}  // namespace hartree
