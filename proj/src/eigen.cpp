#include "hartree/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hartree {

namespace {

struct NumerovMatrix {
    std::vector<double> diag;  // off-diagonals are all -1
    std::vector<double> x;     // h^2 F_i
};

NumerovMatrix numerov_matrix(const RadialFunction& potential, double energy) {
    const auto& g = potential.grid();
    const std::size_t n = g.size();
    const double h2 = g.step() * g.step();
    NumerovMatrix m{std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const double r = g.r(i);
        const double x = h2 * (0.25 - r * r * (potential[i] + energy));
        if (!(x < 6.0)) {
            throw std::runtime_error("ground_state_eigen: grid too coarse for the Numerov scheme");
        }
        m.x[i] = x;
        m.diag[i] = 2.0 * (1.0 + 5.0 * x / 12.0) / (1.0 - x / 12.0);
    }
    // Free-solution continuation below r_min: z_{-1} = e^{-kappa h} z_0.
    const double x_free = 0.25 * h2;
    const double d_free = 2.0 * (1.0 + 5.0 * x_free / 12.0) / (1.0 - x_free / 12.0);
    const double kh = std::acosh(0.5 * d_free);
    m.diag[0] -= std::exp(-kh);
    return m;
}

std::size_t sturm_count(const std::vector<double>& d) {
    std::size_t negatives = 0;
    double pivot = d[0];
    if (pivot < 0.0) {
        ++negatives;
    }
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (pivot == 0.0) {
            pivot = 1e-300;
        }
        pivot = d[i] - 1.0 / pivot;
        if (pivot < 0.0) {
            ++negatives;
        }
    }
    return negatives;
}

// Solves tridiag(-1, d, -1) z = b in place (Thomas algorithm, SPD input).
void solve_tridiagonal(const std::vector<double>& d, std::vector<double>& b) {
    const std::size_t n = d.size();
    std::vector<double> c(n);
    double denom = d[0];
    c[0] = -1.0 / denom;
    b[0] /= denom;
    for (std::size_t i = 1; i < n; ++i) {
        denom = d[i] + c[i - 1];
        c[i] = -1.0 / denom;
        b[i] = (b[i] + b[i - 1]) / denom;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        b[i] -= c[i] * b[i + 1];
    }
}

}  // namespace

std::size_t count_eigenvalues_below(const RadialFunction& potential, double energy) {
    return sturm_count(numerov_matrix(potential, energy).diag);
}

GroundState ground_state_eigen(const RadialFunction& potential, double tol_eigen,
                               Diagnostics* diag) {
    const auto& g = potential.grid();
    const std::size_t n = g.size();

    double coulomb_strength = 0.0;  // max r V(r): -Lap - V >= -c^2/4
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        coulomb_strength = std::max(coulomb_strength, g.r(i) * potential[i]);
        peak = std::max(peak, std::abs(potential[i]));
    }
    if (diag && peak > 0.0 && std::abs(potential.values().back()) >= 1e-3 * peak) {
        diag->warn("ground_state_eigen: potential has not decayed at r_max");
    }
    const double box_scale = 1.0 / (g.r_max() * g.r_max());
    const double scale = std::max(0.25 * coulomb_strength * coulomb_strength, box_scale);

    double lo = -1.2 * scale - 1e-12;
    while (count_eigenvalues_below(potential, lo) > 0) {
        lo *= 2.0;
    }
    double hi = 0.0;
    if (count_eigenvalues_below(potential, hi) == 0) {
        hi = 1e-3 * scale;
        while (count_eigenvalues_below(potential, hi) == 0) {
            hi *= 2.0;
        }
    }
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi || hi - lo <= tol_eigen * scale) {
            break;
        }
        if (count_eigenvalues_below(potential, mid) > 0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    const double energy = 0.5 * (lo + hi);

    // Inverse iteration at the lower bracket end, where the matrix is positive definite.
    const auto m_lo = numerov_matrix(potential, lo);
    std::vector<double> z(n, 1.0);
    for (int it = 0; it < 4; ++it) {
        solve_tridiagonal(m_lo.diag, z);
        double zmax = 0.0;
        for (double v : z) {
            zmax = std::max(zmax, std::abs(v));
        }
        for (double& v : z) {
            v /= zmax;
        }
    }

    const auto m = numerov_matrix(potential, energy);
    double sum = 0.0;
    for (double v : z) {
        sum += v;
    }
    const double sign = sum < 0.0 ? -1.0 : 1.0;
    std::vector<double> psi(n);
    std::size_t negative_nodes = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = sign * z[i] / (1.0 - m.x[i] / 12.0);
        if (y < 0.0) {
            ++negative_nodes;
        }
        psi[i] = std::max(y, 0.0) / std::sqrt(g.r(i));
    }
    if (diag && negative_nodes > 0) {
        std::ostringstream os;
        os << "ground_state_eigen: clipped " << negative_nodes << " negative samples";
        diag->warn(os.str());
    }
    RadialFunction f(potential.grid_ptr(), std::move(psi));
    const double mass = integrate_volume(f.squared());
    if (!(mass > 0.0)) {
        throw std::runtime_error("ground_state_eigen: eigenvector collapsed");
    }
    return GroundState{energy, f.scaled(1.0 / std::sqrt(mass)), energy < 0.0};
}

}  // namespace hartree
