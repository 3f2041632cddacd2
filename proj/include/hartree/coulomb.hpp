#pragma once

#include "hartree/radial.hpp"

namespace hartree {

/// Coulomb potential of a radial charge density, Phi(r) = int rho(y)/|x-y| dy.
struct PotentialField {
    RadialFunction values;
    /// Total charge seen by the cumulative pass (Phi(r_max) ~ mass / r_max).
    double mass = 0.0;
};

/// Newton's theorem: Phi(r) = Q(r)/r + int_{s>r} rho(s) 4 pi s ds, with Q the enclosed charge.
/// One forward and one backward trapezoid pass in ln r; the [0, r_min] head is
/// approximated by a uniform core of density rho(r_min).
PotentialField newton_potential(const RadialFunction& rho);

/// int int rho(x) (w(|x|) + w(|y|)) / |x-y| rho(y) dx dy  =  2 int w rho Phi_rho.
double weighted_repulsion(const RadialFunction& rho, const RadialFunction& weight);
double weighted_repulsion(const RadialFunction& rho, const PotentialField& phi,
                          const RadialFunction& weight);

/// R = 1/2 int rho Phi_rho.
double repulsion_energy(const RadialFunction& rho);

}  // namespace hartree
