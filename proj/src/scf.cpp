#include "hartree/scf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hartree {

void SolverConfig::validate() const {
    if (n_points < 16) {
        throw std::invalid_argument("n_points must be at least 16");
    }
    if (r_min < 0.0 || r_max < 0.0 || (r_min > 0.0 && r_max > 0.0 && r_max <= r_min)) {
        throw std::invalid_argument("grid radii must satisfy 0 < r_min < r_max");
    }
    if (!(mixing > 0.0 && mixing <= 1.0)) {
        throw std::invalid_argument("mixing must lie in (0, 1]");
    }
    if (!(tol_density > 0.0) || !(tol_eigen > 0.0)) {
        throw std::invalid_argument("tolerances must be positive");
    }
    if (max_iterations < 1) {
        throw std::invalid_argument("max_iterations must be positive");
    }
}

double default_r_min(double Z) { return 1e-6 / Z; }

double default_r_max(double Z, double N) {
    const double excess = N - Z;
    const double reach = excess > 0.0 ? std::max(150.0, 40.0 / excess) : 150.0;
    return reach / Z;
}

std::string to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::converged:
            return "converged";
        case SolveStatus::not_converged:
            return "not-converged";
        case SolveStatus::unbound:
            return "unbound";
    }
    return "unknown";
}

namespace {

RadialFunction sqrt_of(const RadialFunction& rho) {
    std::vector<double> v(rho.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = std::sqrt(std::max(rho[i], 0.0));
    }
    return RadialFunction(rho.grid_ptr(), std::move(v));
}

RadialFunction nuclear_minus_hartree(const RadialFunction& rho, double Z,
                                     const PotentialField& field) {
    std::vector<double> v(rho.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = Z / rho.grid().r(i) - field.values[i];
    }
    return RadialFunction(rho.grid_ptr(), std::move(v));
}

double energy_of_density(const RadialFunction& rho, double Z, const PotentialField& field) {
    const double k = kinetic_energy(sqrt_of(rho));
    const double a = Z * moment(rho, -1);
    const double r = 0.5 * integrate_volume(rho.times(field.values));
    return k - a + r;
}

double sup_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

}  // namespace

RadialFunction hydrogenic_density(GridPtr grid, double Z, double N) {
    const double c = N * Z * Z * Z / std::numbers::pi;
    return RadialFunction::sample(std::move(grid), [&](double r) { return c * std::exp(-2.0 * Z * r); });
}

Observables compute_observables(const RadialFunction& psi, double Z, Diagnostics* diag) {
    const auto rho = psi.squared();
    Observables o;
    o.K = kinetic_energy(psi, diag);
    o.A = Z * moment(rho, -1, diag);
    o.R = repulsion_energy(rho);
    o.N = moment(rho, 0, diag);
    o.J = moment(rho, 1, diag);
    o.E = o.K - o.A + o.R;
    return o;
}

double kinetic_energy_equation_route(const HartreeState& state) {
    return integrate_volume(state.phi.times(state.rho)) - state.mu * integrate_volume(state.rho);
}

Observables observables(const HartreeState& state, Diagnostics* diag) {
    auto o = compute_observables(state.psi, state.Z, diag);
    if (diag && state.converged) {
        const double k_eq = kinetic_energy_equation_route(state);
        const double rel = std::abs(k_eq - o.K) / std::max(o.K, 1e-300);
        if (rel > 1e-5) {
            std::ostringstream os;
            os << "observables: kinetic energy routes disagree, relative difference " << rel;
            diag->warn(os.str());
        }
    }
    return o;
}

double euler_lagrange_residual(const HartreeState& state) {
    const auto lap = laplacian(state.psi);
    std::vector<double> res(state.psi.size());
    for (std::size_t i = 0; i < res.size(); ++i) {
        res[i] = -lap[i] - state.phi[i] * state.psi[i] + state.mu * state.psi[i];
    }
    const RadialFunction r(state.grid(), std::move(res));
    const double num = integrate_volume(r.squared());
    const double den = integrate_volume(state.rho);
    return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

HartreeState scf_solve(double Z, double N, const SolverConfig& config,
                       const RadialFunction* initial_rho) {
    if (!(Z > 0.0) || !std::isfinite(Z)) {
        throw std::invalid_argument("scf_solve: Z must be positive");
    }
    if (!(N > 0.0) || !std::isfinite(N)) {
        throw std::invalid_argument("scf_solve: N must be positive");
    }
    config.validate();
    const double r_min = config.r_min > 0.0 ? config.r_min : default_r_min(Z);
    const double r_max = config.r_max > 0.0 ? config.r_max : default_r_max(Z, N);
    const auto grid = build_grid(config.n_points, r_min, r_max);

    RadialFunction rho = hydrogenic_density(grid, Z, N);
    if (initial_rho) {
        auto warm = initial_rho->grid().same_as(*grid) ? *initial_rho : interpolate(*initial_rho, grid);
        const double mass = integrate_volume(warm);
        if (mass > 0.0 && warm.is_nonnegative()) {
            rho = warm.scaled(N / mass);
        }
    }
    rho = rho.scaled(N / integrate_volume(rho));

    Diagnostics diag;
    double alpha = config.mixing;
    PotentialField field = newton_potential(rho);
    double energy = energy_of_density(rho, Z, field);
    std::vector<double> energies{energy};

    for (int it = 1; it <= config.max_iterations; ++it) {
        const auto phi = nuclear_minus_hartree(rho, Z, field);
        auto ground = ground_state_eigen(phi, config.tol_eigen);
        auto psi = ground.psi.scaled(std::sqrt(N));
        auto rho_new = psi.squared();

        std::vector<double> delta(rho.size());
        for (std::size_t i = 0; i < delta.size(); ++i) {
            delta[i] = rho_new[i] - rho[i];
        }
        const double residual = sup_norm(delta) / sup_norm(rho.values());
        if (residual < config.tol_density) {
            const double mu = -ground.eigenvalue;
            HartreeState state{Z, N, psi, rho_new, phi, mu, true, it,
                               ground.bound ? SolveStatus::converged : SolveStatus::unbound,
                               residual, std::move(diag), std::move(energies)};
            return state;
        }

        // Damped update; halve the mixing whenever the energy would rise.
        for (;;) {
            std::vector<double> mixed(rho.size());
            for (std::size_t i = 0; i < mixed.size(); ++i) {
                mixed[i] = rho[i] + alpha * delta[i];
            }
            RadialFunction trial(grid, std::move(mixed));
            trial = trial.scaled(N / integrate_volume(trial));
            auto trial_field = newton_potential(trial);
            const double trial_energy = energy_of_density(trial, Z, trial_field);
            if (trial_energy <= energy + 1e-10 * std::abs(energy) || alpha <= 1e-3) {
                rho = std::move(trial);
                field = std::move(trial_field);
                energy = trial_energy;
                energies.push_back(energy);
                break;
            }
            alpha *= 0.5;
        }

        if (it == config.max_iterations) {
            diag.warn("scf_solve: not converged after max_iterations");
            const double mu = -ground.eigenvalue;
            return HartreeState{Z, N, psi, rho_new, phi, mu, false, it,
                                ground.bound ? SolveStatus::not_converged : SolveStatus::unbound,
                                residual, std::move(diag), std::move(energies)};
        }
    }
    throw std::logic_error("scf_solve: unreachable");
}

namespace {

struct Sample {
    double N;
    HartreeState state;
};

class CriticalSearch {
public:
    CriticalSearch(double Z, SolverConfig config) : Z_(Z), config_(std::move(config)) {}

    HartreeState solve(double N) {
        const RadialFunction* warm = nullptr;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : history_) {
            if (std::abs(s.N - N) < best) {
                best = std::abs(s.N - N);
                warm = &s.state.rho;
            }
        }
        auto state = scf_solve(Z_, N, config_, warm);
        ++solves_;
        history_.push_back(Sample{N, state});
        if (history_.size() > 8) {
            history_.erase(history_.begin());
        }
        return state;
    }

    void set_r_max(double r_max) { config_.r_max = r_max; }
    int solves() const { return solves_; }

    /// Bisection for mu(N) = 0 on [lo, hi] with mu(lo) > 0 > mu(hi). Returns the
    /// bound end of the final bracket and its state, so mu >= 0 on the result.
    std::pair<double, HartreeState> bisect(double lo, double hi) {
        const double width_tol = 2e-7 * Z_;
        std::optional<HartreeState> lo_state;
        while (hi - lo > width_tol) {
            const double mid = 0.5 * (lo + hi);
            auto st = solve(mid);
            if (st.mu > 0.0) {
                lo = mid;
                lo_state = std::move(st);
            } else {
                hi = mid;
            }
        }
        if (!lo_state) {
            lo_state = solve(lo);
        }
        return {lo, std::move(*lo_state)};
    }

    /// Finds [lo, hi] with mu(lo) > 0 > mu(hi), scanning 32 points when the ends do not bracket.
    std::pair<double, double> bracket(double lo, double hi) {
        const double mu_lo = solve(lo).mu;
        const double mu_hi = solve(hi).mu;
        if (mu_lo > 0.0 && mu_hi <= 0.0) {
            return {lo, hi};
        }
        double prev_n = lo;
        double prev_mu = mu_lo;
        for (int k = 1; k <= 32; ++k) {
            const double n = lo + (hi - lo) * k / 32.0;
            const double mu = solve(n).mu;
            if (prev_mu > 0.0 && mu <= 0.0) {
                return {prev_n, n};
            }
            prev_n = n;
            prev_mu = mu;
        }
        std::ostringstream os;
        os << "critical_charge: mu(N) does not change sign on [" << lo << ", " << hi
           << "] at r_max = " << config_.r_max;
        throw BracketFailure(os.str());
    }

    double r_max() const { return config_.r_max; }

private:
    double Z_;
    SolverConfig config_;
    std::vector<Sample> history_;
    int solves_ = 0;
};

}  // namespace

CriticalChargeResult critical_charge(double Z, const SolverConfig& config) {
    if (!(Z > 0.0) || !std::isfinite(Z)) {
        throw std::invalid_argument("critical_charge: Z must be positive");
    }
    config.validate();
    const bool pinned = config.r_max > 0.0;
    CriticalSearch search(Z, config);
    if (!pinned) {
        search.set_r_max(default_r_max(Z, 1.5 * Z));
    }

    auto [lo, hi] = search.bracket(Z, 2.0 * Z);
    auto [n_c, state] = search.bisect(lo, hi);
    if (pinned) {
        return CriticalChargeResult{n_c, std::move(state), search.r_max(), search.solves()};
    }

    double r_max = default_r_max(Z, n_c);
    for (int stage = 0; stage < 8; ++stage) {
        search.set_r_max(r_max);
        const double window = 0.01 * Z;
        std::pair<double, double> br;
        try {
            br = search.bracket(std::max(Z, n_c - window), std::min(2.0 * Z, n_c + window));
        } catch (const BracketFailure&) {
            br = search.bracket(Z, 2.0 * Z);
        }
        auto [next, next_state] = search.bisect(br.first, br.second);
        const double shift = std::abs(next - n_c);
        n_c = next;
        state = std::move(next_state);
        if (stage > 0 && shift < 1e-4 * Z) {
            break;
        }
        r_max *= 1.5;
    }
    return CriticalChargeResult{n_c, std::move(state), search.r_max(), search.solves()};
}

}  // namespace hartree
