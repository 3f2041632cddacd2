#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace hartree {

/// Collects non-fatal numerical warnings (tail truncation, route mismatches).
struct Diagnostics {
    std::vector<std::string> warnings;

    void warn(std::string message) { warnings.push_back(std::move(message)); }
    bool empty() const { return warnings.empty(); }
};

/// Logarithmic radial mesh r_i = r_min * q^i with volume quadrature weights.
///
/// The weights integrate f(|x|) over the shell r_min <= |x| <= r_max: they are
/// the trapezoid rule in t = ln r applied to 4*pi*r^3*f, with Gregory end
/// corrections so that non-decaying integrands also converge at high order.
class RadialGrid {
public:
    static std::shared_ptr<const RadialGrid> build(int n_points, double r_min, double r_max);

    std::size_t size() const { return nodes_.size(); }
    double r_min() const { return nodes_.front(); }
    double r_max() const { return nodes_.back(); }
    /// Uniform spacing in t = ln r.
    double step() const { return step_; }
    double r(std::size_t i) const { return nodes_[i]; }

    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> volume_weights() const { return weights_; }

    /// Index of the first node with r >= radius (size() if none).
    std::size_t lower_index(double radius) const;

    bool same_as(const RadialGrid& other) const;

private:
    RadialGrid(std::vector<double> nodes, std::vector<double> weights, double step)
        : nodes_(std::move(nodes)), weights_(std::move(weights)), step_(step) {}

    std::vector<double> nodes_;
    std::vector<double> weights_;
    double step_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

/// Convenience alias matching the operation name used throughout the tools.
inline GridPtr build_grid(int n_points, double r_min, double r_max) {
    return RadialGrid::build(n_points, r_min, r_max);
}

/// Values of a radially symmetric function sampled at the grid nodes.
class RadialFunction {
public:
    RadialFunction(GridPtr grid, std::vector<double> values);
    /// Samples f at every node.
    static RadialFunction sample(GridPtr grid, const std::function<double(double)>& f);
    static RadialFunction zero(GridPtr grid);

    const RadialGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    bool is_nonnegative() const;
    double max_abs() const;

    RadialFunction scaled(double factor) const;
    /// Pointwise product on a shared grid.
    RadialFunction times(const RadialFunction& other) const;
    RadialFunction squared() const { return times(*this); }

private:
    GridPtr grid_;
    std::vector<double> values_;
};

/// Throws std::invalid_argument if the function is not a valid density (finite, >= 0).
void require_density(const RadialFunction& rho, const char* what);

/// Sum of weights * values, i.e. the integral of f(|x|) over R^3 restricted to the grid.
double integrate_volume(const RadialFunction& f);

/// First derivative with respect to t = ln r (five-point centered, one-sided at the ends).
std::vector<double> log_derivative(const RadialFunction& f);
/// Second derivative with respect to t = ln r.
std::vector<double> log_second_derivative(const RadialFunction& f);
/// Radial Laplacian (f_tt + f_t) / r^2.
RadialFunction laplacian(const RadialFunction& f);

/// K = integral of |grad psi|^2. Warns when psi has not decayed at r_max.
double kinetic_energy(const RadialFunction& psi, Diagnostics* diag = nullptr);

/// Integral of r^power * rho(r) d^3x. Warns when the head or tail share exceeds 1e-6.
double moment(const RadialFunction& rho, int power, Diagnostics* diag = nullptr);

/// Monotone piecewise-cubic interpolation in ln r onto another grid.
/// Points outside the source grid take the nearest end value (head) or zero (tail).
RadialFunction interpolate(const RadialFunction& f, GridPtr target);

/// Density dilation rho -> s^3 rho(s r), mass preserving, evaluated from a generator.
RadialFunction dilate(const std::function<double(double)>& rho, double s, GridPtr grid);

}  // namespace hartree
