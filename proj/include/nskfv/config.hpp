#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "nskfv/initial_data.hpp"
#include "nskfv/timeint.hpp"

namespace nskfv {

/// Fully resolved run configuration. Loaded from a flat sectioned key-value
/// text file ([grid], [params], [init], [control], [output]); every domain
/// constraint is validated at load time.
struct RunConfig {
    GridSpec grid;
    ModelParams params;
    InitExpr init;
    StepControl control;

    double rho_floor_rel = 1e-6;  // floor relative to the mean initial density
    bool deterministic = true;
    std::string output_dir = "out";
    std::string format = "binary";  // binary | csv | both

    void validate() const;

    /// The absolute density floor: rho_floor_rel times the analytic mean
    /// initial density.
    double resolved_rho_floor() const;

    /// ModelParams with the resolved floor filled in.
    ModelParams resolved_params() const;

    /// Echo the fully resolved configuration in the input format, so the
    /// summary of a run can itself be re-run.
    void echo(std::ostream& os) const;
};

RunConfig parse_config(std::istream& is);
RunConfig load_config(const std::string& path);

/// Raw parse: section -> key -> value, for study configs layered on top.
std::map<std::string, std::map<std::string, std::string>> parse_sections(std::istream& is);

}  // namespace nskfv
