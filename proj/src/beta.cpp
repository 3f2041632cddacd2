#include "hartree/beta.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "hartree/coulomb.hpp"
#include "hartree/scf.hpp"

namespace hartree {

double beta_ratio(const RadialFunction& rho) {
    require_density(rho, "beta_ratio");
    const double mass = moment(rho, 0);
    const double j = moment(rho, 1);
    if (mass < 1e-14 || j < 1e-14) {
        throw DegenerateDensity("beta_ratio: density has vanishing mass or first moment");
    }
    const auto r2 = RadialFunction::sample(rho.grid_ptr(), [](double r) { return r * r; });
    const double numerator = 0.5 * weighted_repulsion(rho, r2);
    return numerator / (j * mass);
}

RadialFunction TrialFamily::generate(std::span<const double> theta, GridPtr grid) const {
    if (theta.size() != dimension()) {
        throw std::invalid_argument("trial family '" + id + "': wrong parameter count");
    }
    return RadialFunction::sample(std::move(grid), [&](double r) { return density(theta, r); });
}

void TrialFamily::validate() const {
    if (dimension() == 0 || dimension() > 6 || lower.size() != dimension() ||
        upper.size() != dimension()) {
        throw std::invalid_argument("trial family '" + id + "': inconsistent parameter box");
    }
    for (std::size_t k = 0; k < dimension(); ++k) {
        if (!(lower[k] <= defaults[k] && defaults[k] <= upper[k])) {
            throw std::invalid_argument("trial family '" + id + "': defaults outside box");
        }
    }
    if (!density) {
        throw std::invalid_argument("trial family '" + id + "': missing generator");
    }
}

TrialFamily make_family(const std::string& id) {
    if (id == "exp") {
        // rho = e^{-2 c r}; scale invariance makes the ratio independent of c.
        return {id, {0.2}, {5.0}, {1.0}, [](std::span<const double> th, double r) {
                    return std::exp(-2.0 * th[0] * r);
                }};
    }
    if (id == "exppoly") {
        // rho = (1 + a1 r + a2 r^2 + a3 r^3)^2 e^{-2r}
        return {id, {-20.0, -20.0, -20.0}, {20.0, 20.0, 20.0}, {0.0, 0.0, 0.0},
                [](std::span<const double> th, double r) {
                    const double p = 1.0 + r * (th[0] + r * (th[1] + r * th[2]));
                    return p * p * std::exp(-2.0 * r);
                }};
    }
    if (id == "gaussmix") {
        // rho = e^{-(r/s1)^2} + c2 e^{-(r/s2)^2} + c3 e^{-(r/s3)^2}
        return {id,
                {0.2, 0.2, 0.2, 0.0, 0.0},
                {5.0, 5.0, 5.0, 5.0, 5.0},
                {1.0, 2.0, 0.5, 0.5, 0.5},
                [](std::span<const double> th, double r) {
                    auto g = [r](double s) { return std::exp(-(r / s) * (r / s)); };
                    return g(th[0]) + th[3] * g(th[1]) + th[4] * g(th[2]);
                }};
    }
    if (id == "shellcore") {
        // Gaussian shell at r = 1 of width sigma plus an exponential core of range l.
        return {id,
                {0.05, 0.0, 0.05},
                {1.0, 50.0, 5.0},
                {0.2, 1.0, 0.5},
                [](std::span<const double> th, double r) {
                    const double x = (r - 1.0) / th[0];
                    return std::exp(-0.5 * x * x) + th[1] * std::exp(-2.0 * r / th[2]);
                }};
    }
    throw std::invalid_argument("unknown trial family '" + id + "'");
}

std::vector<std::string> family_ids() { return {"exp", "exppoly", "gaussmix", "shellcore"}; }

namespace {

// Portable uniform draw in [0, 1) from the 53 high bits.
double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

class BoxObjective {
public:
    BoxObjective(const TrialFamily& family, GridPtr grid) : family_(family), grid_(std::move(grid)) {}

    std::vector<double> clamp(std::vector<double> theta) const {
        for (std::size_t k = 0; k < theta.size(); ++k) {
            theta[k] = std::clamp(theta[k], family_.lower[k], family_.upper[k]);
        }
        return theta;
    }

    double operator()(const std::vector<double>& theta) {
        ++evaluations;
        try {
            return beta_ratio(family_.generate(theta, grid_));
        } catch (const DegenerateDensity&) {
            return std::numeric_limits<double>::infinity();
        }
    }

    int evaluations = 0;

private:
    const TrialFamily& family_;
    GridPtr grid_;
};

struct Vertex {
    std::vector<double> x;
    double f;
};

Vertex nelder_mead(BoxObjective& objective, const TrialFamily& family, std::vector<double> start,
                   double tol, int max_evaluations) {
    const std::size_t d = start.size();
    const int budget_end = objective.evaluations + max_evaluations;
    Vertex best{start, objective(start)};

    for (int sweep = 0; sweep < 3; ++sweep) {
        std::vector<Vertex> simplex;
        simplex.push_back(best);
        for (std::size_t k = 0; k < d; ++k) {
            auto x = best.x;
            const double span = family.upper[k] - family.lower[k];
            const double step = 0.1 * span;
            x[k] = x[k] + step <= family.upper[k] ? x[k] + step : x[k] - step;
            x = objective.clamp(std::move(x));
            const double f = objective(x);
            simplex.push_back({std::move(x), f});
        }

        auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
        while (objective.evaluations < budget_end) {
            std::sort(simplex.begin(), simplex.end(), by_value);
            const double spread = simplex.back().f - simplex.front().f;
            if (spread <= tol * std::max(1.0, std::abs(simplex.front().f))) {
                break;
            }
            std::vector<double> centroid(d, 0.0);
            for (std::size_t v = 0; v < d; ++v) {
                for (std::size_t k = 0; k < d; ++k) {
                    centroid[k] += simplex[v].x[k] / static_cast<double>(d);
                }
            }
            auto along = [&](double coeff) {
                std::vector<double> x(d);
                for (std::size_t k = 0; k < d; ++k) {
                    x[k] = centroid[k] + coeff * (simplex.back().x[k] - centroid[k]);
                }
                return objective.clamp(std::move(x));
            };
            auto xr = along(-1.0);
            const double fr = objective(xr);
            if (fr < simplex.front().f) {
                auto xe = along(-2.0);
                const double fe = objective(xe);
                simplex.back() = fe < fr ? Vertex{std::move(xe), fe} : Vertex{std::move(xr), fr};
            } else if (fr < simplex[d - 1].f) {
                simplex.back() = {std::move(xr), fr};
            } else {
                const bool outside = fr < simplex.back().f;
                auto xc = along(outside ? -0.5 : 0.5);
                const double fc = objective(xc);
                if (fc < std::min(fr, simplex.back().f)) {
                    simplex.back() = {std::move(xc), fc};
                } else {
                    for (std::size_t v = 1; v <= d; ++v) {
                        for (std::size_t k = 0; k < d; ++k) {
                            simplex[v].x[k] =
                                simplex[0].x[k] + 0.5 * (simplex[v].x[k] - simplex[0].x[k]);
                        }
                        simplex[v].f = objective(simplex[v].x);
                    }
                }
            }
        }
        std::sort(simplex.begin(), simplex.end(), by_value);
        const bool improved = simplex.front().f < best.f - tol;
        if (simplex.front().f < best.f) {
            best = simplex.front();
        }
        if (!improved || objective.evaluations >= budget_end) {
            break;
        }
    }
    return best;
}

}  // namespace

BetaEstimate minimize_beta(const TrialFamily& family, const BetaOptions& options,
                           Diagnostics* diag) {
    family.validate();
    if (options.restarts < 0 || !(options.tol > 0.0)) {
        throw std::invalid_argument("minimize_beta: restarts must be >= 0 and tol > 0");
    }
    const auto grid = build_grid(options.n_points, options.r_min, options.r_max);
    BoxObjective objective(family, grid);

    // All starting points are drawn up front so the result does not depend on run order.
    std::mt19937_64 rng(options.seed);
    std::vector<std::vector<double>> starts{family.defaults};
    for (int k = 0; k < options.restarts; ++k) {
        std::vector<double> x(family.dimension());
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = family.lower[i] + unit_draw(rng) * (family.upper[i] - family.lower[i]);
        }
        starts.push_back(std::move(x));
    }

    BetaEstimate est;
    est.family = family.id;
    est.seed = options.seed;
    est.default_value = objective(family.defaults);
    est.value = est.default_value;
    est.theta_opt = family.defaults;
    for (const auto& s : starts) {
        const auto v = nelder_mead(objective, family, s, options.tol, options.max_evaluations);
        if (v.f < est.value) {
            est.value = v.f;
            est.theta_opt = v.x;
        }
    }
    est.evaluations = objective.evaluations;

    const auto fine = build_grid(2 * options.n_points, options.r_min, options.r_max);
    est.quad_error = std::abs(beta_ratio(family.generate(est.theta_opt, fine)) - est.value);

    if (diag && est.value < beta_lower_bound - 5e-3) {
        std::ostringstream os;
        os << "minimize_beta: value " << est.value
           << " lies below the proven lower bound; quadrature is unreliable";
        diag->warn(os.str());
    }
    return est;
}

double beta_on_hartree(const HartreeState& state, Diagnostics* diag) {
    const double b = beta_ratio(state.rho);
    if (diag && b < beta_lower_bound - 5e-3) {
        std::ostringstream os;
        os << "beta_on_hartree: ratio " << b << " lies below the proven lower bound";
        diag->warn(os.str());
    }
    return b;
}

}  // namespace hartree
