#include "hartree/verify.hpp"

#include <algorithm>
#include <cmath>

#include "hartree/coulomb.hpp"

namespace hartree {

bool VerificationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return !c.applicable || c.pass; });
}

const Check* VerificationReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

Check identity_check(std::string name, std::string eq, double lhs, double rhs, double tol,
                     bool applicable) {
    const double slack = lhs - rhs;
    return Check{std::move(name), std::move(eq), lhs, rhs, slack, tol, std::abs(slack) <= tol,
                 applicable};
}

Check upper_bound_check(std::string name, std::string eq, double lhs, double rhs, double tol,
                        bool applicable) {
    const double slack = rhs - lhs;
    return Check{std::move(name), std::move(eq), lhs, rhs, slack, tol, slack >= -tol, applicable};
}

Check lower_bound_check(std::string name, std::string eq, double lhs, double rhs, double tol,
                        bool applicable) {
    const double slack = lhs - rhs;
    return Check{std::move(name), std::move(eq), lhs, rhs, slack, tol, slack >= -tol, applicable};
}

HartreeState make_trial_state(const RadialFunction& psi, double Z) {
    auto rho = psi.squared();
    const auto field = newton_potential(rho);
    std::vector<double> phi(psi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) {
        phi[i] = Z / psi.grid().r(i) - field.values[i];
    }
    HartreeState s{Z,
                   integrate_volume(rho),
                   psi,
                   rho,
                   RadialFunction(psi.grid_ptr(), std::move(phi)),
                   0.0,
                   false,
                   0,
                   SolveStatus::not_converged,
                   0.0,
                   {},
                   {}};
    return s;
}

namespace {

bool is_solution(const HartreeState& s) { return s.converged && s.status == SolveStatus::converged; }

RadialFunction power_of_r(const GridPtr& grid, int p) {
    return RadialFunction::sample(grid, [p](double r) { return std::pow(r, p); });
}

// -int r^p psi Lap(psi) d^3x
double multiplier_kinetic(const RadialFunction& psi, int p) {
    const auto lap = laplacian(psi);
    return -integrate_volume(power_of_r(psi.grid_ptr(), p).times(psi).times(lap));
}

}  // namespace

std::vector<Check> virial_checks(const Observables& o, double mu, bool solution, double rel_tol) {
    const double scale = o.K + o.A + o.R;
    const double tol = rel_tol * scale;
    const bool mu_negligible = std::abs(mu) * o.N <= tol;
    std::vector<Check> out;
    out.push_back(identity_check("virial_dilation", "7", 2.0 * o.K - o.A + o.R, 0.0, tol, solution));
    out.push_back(identity_check("virial_multiplier", "10", o.K - o.A + 2.0 * o.R, 0.0, tol,
                                 solution && mu_negligible));
    out.push_back(identity_check("virial_3K_equals_A", "11", 3.0 * o.K, o.A, 2.0 * tol,
                                 solution && mu_negligible));
    out.push_back(identity_check("virial_multiplier_mu", "10", o.K - o.A + 2.0 * o.R + mu * o.N, 0.0,
                                 tol, solution));
    out.push_back(identity_check("virial_3K_equals_A_mu", "11", 3.0 * o.K - mu * o.N, o.A, 2.0 * tol,
                                 solution));
    return out;
}

Check coulomb_uncertainty_check(const RadialFunction& psi) {
    const auto rho = psi.squared();
    const double lhs = moment(rho, -1);
    const double rhs = std::sqrt(kinetic_energy(psi)) * std::sqrt(integrate_volume(rho));
    return upper_bound_check("coulomb_uncertainty", "CUP", lhs, rhs, 1e-8 * rhs);
}

TwoRoutes x2_laplacian_routes(const RadialFunction& f) {
    const auto ft = log_derivative(f);
    const auto ftt = log_second_derivative(f);
    const auto w = f.grid().volume_weights();
    TwoRoutes out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        // r^2 Lap f = f_tt + f_t ; r^2 |grad f|^2 = f_t^2 ; r f f_r = f f_t
        out.direct -= w[i] * f[i] * (ftt[i] + ft[i]);
        out.by_parts += w[i] * (ft[i] * ft[i] + 2.0 * f[i] * ft[i]);
    }
    return out;
}

std::vector<Check> x2_laplacian_check(const RadialFunction& f) {
    const double norm2 = integrate_volume(f.squared());
    const auto routes = x2_laplacian_routes(f);
    return {
        lower_bound_check("x2_laplacian_bound", "18", routes.direct, -0.75 * norm2, 1e-6 * norm2),
        identity_check("x2_laplacian_routes", "18", routes.direct, routes.by_parts, 1e-5 * norm2),
    };
}

std::vector<Check> two_z_chain_check(const HartreeState& state) {
    const bool solution = is_solution(state);
    const auto& rho = state.rho;
    const double mass = integrate_volume(rho);
    const double j = moment(rho, 1);
    const double derivative = multiplier_kinetic(state.psi, 1);
    const double equation =
        integrate_volume(power_of_r(state.grid(), 1).times(state.phi).times(rho)) - state.mu * j;
    const double w1 = weighted_repulsion(rho, power_of_r(state.grid(), 1));
    const double scale = state.Z * mass + 0.5 * w1 + std::abs(state.mu) * j;

    return {
        identity_check("x1_multiplier_routes", "16", derivative, equation, 1e-4 * scale, solution),
        lower_bound_check("x1_kinetic_nonnegative", "15", derivative, 0.0, 1e-6 * scale, solution),
        lower_bound_check("x1_triangle", "14", 0.5 * w1, 0.5 * mass * mass, 1e-6 * mass * mass),
        upper_bound_check("two_z_bound", "13", mass, 2.0 * state.Z, 1e-6 * state.Z, solution),
    };
}

std::vector<Check> excess_charge_chain(const HartreeState& state, double beta_lower) {
    const bool solution = is_solution(state);
    const double Z = state.Z;
    const auto& rho = state.rho;
    const double mass = integrate_volume(rho);
    const double j = moment(rho, 1);
    const double m2 = moment(rho, 2);
    const double a = Z * moment(rho, -1);
    const double w2 = weighted_repulsion(rho, power_of_r(state.grid(), 2));
    const double derivative = multiplier_kinetic(state.psi, 2);
    const double equation = Z * j - 0.5 * w2 - state.mu * m2;
    const double scale = Z * j + 0.5 * w2 + std::abs(state.mu) * m2;
    constexpr double rel = 1e-4;

    // The A and J bounds hold for the unconstrained minimizer (mu = 0). With a
    // multiplier, 3K = A + mu N and the Schwarz step gives
    // A^2 <= Z^2 N (A + mu N) / 3, whose positive root replaces N Z^2 / 3.
    const auto o = compute_observables(state.psi, Z);
    const double virial_scale = o.K + o.A + o.R;
    const bool critical = solution && std::abs(state.mu) * mass <= rel * virial_scale;
    const double b = Z * Z * mass / 3.0;
    const double a_bound = 0.5 * (b + std::sqrt(b * b + 4.0 * b * state.mu * mass));
    const double j_bound = a_bound > 0.0 ? Z * mass * mass / a_bound : 0.0;

    return {
        identity_check("x2_multiplier_identity", "17", derivative, equation, rel * scale, solution),
        lower_bound_check("x2_multiplier_lower", "18", derivative, -0.75 * mass, rel * mass),
        upper_bound_check("A_upper", "11a", a, b, rel * mass * Z * Z, critical),
        upper_bound_check("A_upper_mu", "11a", a, a_bound, rel * mass * Z * Z, solution),
        upper_bound_check("schwarz", "11e", mass * mass, j * a / Z, rel * mass * mass),
        lower_bound_check("J_lower", "11d", j, 3.0 * mass / Z, rel * mass / Z, critical),
        lower_bound_check("J_lower_mu", "11d", j, j_bound, rel * mass / Z, solution),
        lower_bound_check("beta_premise", "20", 0.5 * w2, beta_lower * j * mass, rel * j * mass),
        upper_bound_check("excess_charge_bound", "12", mass, 5.0 * Z / (4.0 * beta_lower), rel * Z,
                          solution),
    };
}

VerificationReport verify_state(const HartreeState& state, double beta_lower) {
    VerificationReport report;
    const auto obs = compute_observables(state.psi, state.Z);
    report.state = StateSummary{state.Z, state.N, state.mu, state.converged, state.iterations, obs};
    report.append(virial_checks(obs, state.mu, is_solution(state)));
    report.checks.push_back(coulomb_uncertainty_check(state.psi));
    report.append(x2_laplacian_check(state.psi));
    report.append(two_z_chain_check(state));
    report.append(excess_charge_chain(state, beta_lower));
    return report;
}

}  // namespace hartree
