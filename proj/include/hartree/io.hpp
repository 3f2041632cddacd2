#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "hartree/beta.hpp"
#include "hartree/scf.hpp"
#include "hartree/verify.hpp"

namespace hartree::io {

using nlohmann::json;

/// Thrown for unreadable or malformed input files.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// "%.17g"
std::string format_number(double x);

/// CSV `r,value` plus `<stem>.json` sidecar `{n_points, r_min, r_max}`.
void write_radial_function(const RadialFunction& f, const std::filesystem::path& csv_path);
RadialFunction read_radial_function(const std::filesystem::path& csv_path);

json grid_json(const RadialGrid& grid);
json state_json(const HartreeState& state, const Observables& obs);
json report_json(const VerificationReport& report);
json beta_json(const BetaEstimate& estimate);

/// CSV `r,psi,rho,phi` plus `<stem>.json` sidecar with scalars and observables.
void write_state(const HartreeState& state, const std::filesystem::path& csv_path);
/// Reads a state written by write_state; the grid is rebuilt from the sidecar.
HartreeState read_state(const std::filesystem::path& csv_path);

/// Writes `value.dump(2)` followed by a newline.
void write_json(const json& value, const std::filesystem::path& path);

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

}  // namespace hartree::io
