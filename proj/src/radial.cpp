#include "hartree/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hartree {

namespace {

constexpr double four_pi = 4.0 * std::numbers::pi;

// Sixth-order Gregory end weights; all positive, interior weight is 1.
constexpr std::array<double, 5> gregory_end = {95.0 / 288.0, 317.0 / 240.0, 23.0 / 30.0,
                                               793.0 / 720.0, 157.0 / 160.0};

std::string describe(const char* what, double value) {
    std::ostringstream os;
    os.precision(6);
    os << what << " = " << value;
    return os.str();
}

}  // namespace

std::shared_ptr<const RadialGrid> RadialGrid::build(int n_points, double r_min, double r_max) {
    if (n_points < 16) {
        throw std::invalid_argument("radial grid needs at least 16 points");
    }
    if (!(r_min > 0.0) || !std::isfinite(r_max) || !(r_max > r_min)) {
        throw std::invalid_argument("radial grid needs 0 < r_min < r_max");
    }
    const auto n = static_cast<std::size_t>(n_points);
    const double t0 = std::log(r_min);
    const double h = (std::log(r_max) - t0) / static_cast<double>(n - 1);

    std::vector<double> nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
        nodes[i] = std::exp(t0 + h * static_cast<double>(i));
    }
    nodes.front() = r_min;
    nodes.back() = r_max;

    std::vector<double> weights(n);
    for (std::size_t i = 0; i < n; ++i) {
        double c = 1.0;
        if (i < gregory_end.size()) {
            c = gregory_end[i];
        } else if (n - 1 - i < gregory_end.size()) {
            c = gregory_end[n - 1 - i];
        }
        const double r = nodes[i];
        weights[i] = four_pi * r * r * r * h * c;
    }
    return std::shared_ptr<const RadialGrid>(new RadialGrid(std::move(nodes), std::move(weights), h));
}

std::size_t RadialGrid::lower_index(double radius) const {
    return static_cast<std::size_t>(std::lower_bound(nodes_.begin(), nodes_.end(), radius) -
                                    nodes_.begin());
}

bool RadialGrid::same_as(const RadialGrid& other) const {
    return this == &other || (size() == other.size() && r_min() == other.r_min() &&
                              r_max() == other.r_max());
}

RadialFunction::RadialFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) {
        throw std::invalid_argument("radial function without grid");
    }
    if (values_.size() != grid_->size()) {
        throw std::invalid_argument("radial function size does not match its grid");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("radial function has non-finite values");
        }
    }
}

RadialFunction RadialFunction::sample(GridPtr grid, const std::function<double(double)>& f) {
    std::vector<double> v(grid->size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = f(grid->r(i));
    }
    return RadialFunction(std::move(grid), std::move(v));
}

RadialFunction RadialFunction::zero(GridPtr grid) {
    std::vector<double> v(grid->size(), 0.0);
    return RadialFunction(std::move(grid), std::move(v));
}

bool RadialFunction::is_nonnegative() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
}

double RadialFunction::max_abs() const {
    double m = 0.0;
    for (double v : values_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

RadialFunction RadialFunction::scaled(double factor) const {
    std::vector<double> v(values_);
    for (double& x : v) {
        x *= factor;
    }
    return RadialFunction(grid_, std::move(v));
}

RadialFunction RadialFunction::times(const RadialFunction& other) const {
    if (!grid_->same_as(other.grid())) {
        throw std::invalid_argument("pointwise product of functions on different grids");
    }
    std::vector<double> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = values_[i] * other.values_[i];
    }
    return RadialFunction(grid_, std::move(v));
}

void require_density(const RadialFunction& rho, const char* what) {
    if (!rho.is_nonnegative()) {
        throw std::invalid_argument(std::string(what) + ": density must be non-negative");
    }
}

double integrate_volume(const RadialFunction& f) {
    const auto w = f.grid().volume_weights();
    const auto v = f.values();
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        sum += w[i] * v[i];
    }
    return sum;
}

std::vector<double> log_derivative(const RadialFunction& f) {
    const auto v = f.values();
    const std::size_t n = v.size();
    const double s = 1.0 / (12.0 * f.grid().step());
    std::vector<double> d(n);
    d[0] = s * (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]);
    d[1] = s * (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]);
    for (std::size_t i = 2; i + 2 < n; ++i) {
        d[i] = s * (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]);
    }
    const std::size_t m = n - 1;
    d[m] = -s * (-25.0 * v[m] + 48.0 * v[m - 1] - 36.0 * v[m - 2] + 16.0 * v[m - 3] - 3.0 * v[m - 4]);
    d[m - 1] = -s * (-3.0 * v[m] - 10.0 * v[m - 1] + 18.0 * v[m - 2] - 6.0 * v[m - 3] + v[m - 4]);
    return d;
}

std::vector<double> log_second_derivative(const RadialFunction& f) {
    const auto v = f.values();
    const std::size_t n = v.size();
    const double h = f.grid().step();
    const double s = 1.0 / (12.0 * h * h);
    std::vector<double> d(n);
    auto edge0 = [&](auto at) {
        return s * (45.0 * at(0) - 154.0 * at(1) + 214.0 * at(2) - 156.0 * at(3) + 61.0 * at(4) -
                    10.0 * at(5));
    };
    auto edge1 = [&](auto at) {
        return s * (10.0 * at(0) - 15.0 * at(1) - 4.0 * at(2) + 14.0 * at(3) - 6.0 * at(4) + at(5));
    };
    auto fwd = [&](std::size_t k) { return v[k]; };
    auto bwd = [&](std::size_t k) { return v[n - 1 - k]; };
    d[0] = edge0(fwd);
    d[1] = edge1(fwd);
    for (std::size_t i = 2; i + 2 < n; ++i) {
        d[i] = s * (-v[i - 2] + 16.0 * v[i - 1] - 30.0 * v[i] + 16.0 * v[i + 1] - v[i + 2]);
    }
    d[n - 1] = edge0(bwd);
    d[n - 2] = edge1(bwd);
    return d;
}

RadialFunction laplacian(const RadialFunction& f) {
    const auto d1 = log_derivative(f);
    const auto d2 = log_second_derivative(f);
    std::vector<double> lap(f.size());
    for (std::size_t i = 0; i < lap.size(); ++i) {
        const double r = f.grid().r(i);
        lap[i] = (d2[i] + d1[i]) / (r * r);
    }
    return RadialFunction(f.grid_ptr(), std::move(lap));
}

double kinetic_energy(const RadialFunction& psi, Diagnostics* diag) {
    const double peak = psi.max_abs();
    if (peak == 0.0) {
        return 0.0;
    }
    if (diag && std::abs(psi.values().back()) >= 1e-8 * peak) {
        diag->warn(describe("kinetic_energy: wavefunction not decayed at r_max, |psi(r_max)|/max|psi|",
                            std::abs(psi.values().back()) / peak));
    }
    const auto d = log_derivative(psi);
    const auto w = psi.grid().volume_weights();
    double k = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double g = d[i] / psi.grid().r(i);
        k += w[i] * g * g;
    }
    return k;
}

double moment(const RadialFunction& rho, int power, Diagnostics* diag) {
    require_density(rho, "moment");
    const auto& g = rho.grid();
    const auto w = g.volume_weights();
    const auto v = rho.values();
    double total = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        total += w[i] * std::pow(g.r(i), power) * v[i];
    }
    if (diag && total > 0.0) {
        const double p3 = power + 3.0;
        const double head = p3 > 0.0 ? four_pi * std::pow(g.r_min(), p3) * v.front() / p3
                                     : std::numeric_limits<double>::infinity();
        const double tail = four_pi * std::pow(g.r_max(), p3) * v.back();
        if (head > 1e-6 * total) {
            diag->warn(describe("moment: unresolved head share", head / total));
        }
        if (tail > 1e-6 * total) {
            diag->warn(describe("moment: truncated tail share", tail / total));
        }
    }
    return total;
}

RadialFunction interpolate(const RadialFunction& f, GridPtr target) {
    const auto& src = f.grid();
    const std::size_t n = src.size();
    const double h = src.step();
    const double t0 = std::log(src.r_min());
    const auto y = f.values();

    // Fritsch-Carlson slopes on the uniform t mesh.
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        delta[i] = (y[i + 1] - y[i]) / h;
    }
    std::vector<double> m(n);
    m[0] = delta[0];
    m[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            m[i] = 0.0;
        } else {
            m[i] = 2.0 / (1.0 / delta[i - 1] + 1.0 / delta[i]);
        }
    }

    std::vector<double> out(target->size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double r = target->r(j);
        if (r <= src.r_min()) {
            out[j] = y.front();
            continue;
        }
        if (r > src.r_max()) {
            out[j] = 0.0;
            continue;
        }
        const double u = (std::log(r) - t0) / h;
        auto i = static_cast<std::size_t>(std::floor(u));
        i = std::min(i, n - 2);
        const double s = u - static_cast<double>(i);
        const double s2 = s * s;
        const double s3 = s2 * s;
        const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        const double h10 = s3 - 2.0 * s2 + s;
        const double h01 = -2.0 * s3 + 3.0 * s2;
        const double h11 = s3 - s2;
        out[j] = h00 * y[i] + h10 * h * m[i] + h01 * y[i + 1] + h11 * h * m[i + 1];
    }
    return RadialFunction(std::move(target), std::move(out));
}

RadialFunction dilate(const std::function<double(double)>& rho, double s, GridPtr grid) {
    const double s3 = s * s * s;
    return RadialFunction::sample(std::move(grid), [&](double r) { return s3 * rho(s * r); });
}

}  // namespace hartree
