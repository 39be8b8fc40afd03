#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nskfv/scheme.hpp"

namespace nskfv {

/// One row of structure-preservation quantities at a single instant.
struct LedgerRow {
    double t = 0.0;
    double mass = 0.0;
    double momentum_x = 0.0;
    double momentum_y = 0.0;
    double E_h = 0.0;
    double D_visc_dev = 0.0;
    double D_visc_div = 0.0;
    double D_rusanov = 0.0;
    double lambda = 0.0;
    double dt = 0.0;
    double semidiscrete_residual = 0.0;  // Edot + sum of dissipation terms
    double dg_u = 0.0;
    double dg_rho = 0.0;
};

struct EnergyLedger {
    std::vector<LedgerRow> rows;

    /// |E(t_0)| + sum |E(t_{n+1}) - E(t_n)|. Throws ConfigError on empty ledger.
    double bv_norm() const;

    /// Row whose time matches t within tolerance; throws if absent.
    const LedgerRow& row_at(double t, double tol = 1e-9) const;
};

/// Compute every ledger field for a state with its tendency and lambda report.
LedgerRow record(const FluidState& s, const Tendency& tend, const LambdaReport& rep,
                 double dt, const ModelParams& p);

/// CSV with a fixed header naming every field; 17 significant digits.
void write_csv(const EnergyLedger& ledger, std::ostream& os);
void write_csv(const EnergyLedger& ledger, const std::string& path);
EnergyLedger read_ledger_csv(std::istream& is);
EnergyLedger read_ledger_csv(const std::string& path);

}  // namespace nskfv
