#include "nskfv/diagnostics.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace nskfv {

namespace {
const char* kHeader =
    "t,mass,momentum_x,momentum_y,E_h,D_visc_dev,D_visc_div,D_rusanov,lambda,dt,"
    "semidiscrete_residual,dg_u,dg_rho";
}

double EnergyLedger::bv_norm() const {
    if (rows.empty()) throw ConfigError("bv_norm: empty ledger");
    double tv = std::abs(rows.front().E_h);
    for (std::size_t n = 1; n < rows.size(); ++n)
        tv += std::abs(rows[n].E_h - rows[n - 1].E_h);
    return tv;
}

const LedgerRow& EnergyLedger::row_at(double t, double tol) const {
    const LedgerRow* best = nullptr;
    double best_d = tol;
    for (const auto& r : rows) {
        const double d = std::abs(r.t - t);
        if (d <= best_d) {
            best_d = d;
            best = &r;
        }
    }
    if (!best) throw ConfigError("ledger: no row at t=" + std::to_string(t));
    return *best;
}

LedgerRow record(const FluidState& s, const Tendency& tend, const LambdaReport& rep,
                 double dt, const ModelParams& p) {
    LedgerRow row;
    row.t = s.t;
    row.mass = integrate(s.rho);
    row.momentum_x = integrate(s.m.x);
    row.momentum_y = integrate(s.m.y);
    row.E_h = discrete_energy(s, p);
    const DissipationTerms d = dissipation_terms(s, rep.lambda, p);
    row.D_visc_dev = d.visc_dev;
    row.D_visc_div = d.visc_div;
    row.D_rusanov = d.rusanov;
    row.lambda = rep.lambda;
    row.dt = dt;
    row.semidiscrete_residual = energy_rate(s, tend, p) + d.total();
    row.dg_u = std::sqrt(dg_seminorm_sq(velocity(s, p)));
    row.dg_rho = std::sqrt(dg_seminorm_sq(s.rho));
    return row;
}

void write_csv(const EnergyLedger& ledger, std::ostream& os) {
    os << kHeader << "\n";
    os << std::setprecision(17);
    for (const auto& r : ledger.rows) {
        os << r.t << ',' << r.mass << ',' << r.momentum_x << ',' << r.momentum_y << ','
           << r.E_h << ',' << r.D_visc_dev << ',' << r.D_visc_div << ',' << r.D_rusanov
           << ',' << r.lambda << ',' << r.dt << ',' << r.semidiscrete_residual << ','
           << r.dg_u << ',' << r.dg_rho << "\n";
    }
}

void write_csv(const EnergyLedger& ledger, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open ledger file for writing: " + path);
    write_csv(ledger, os);
}

EnergyLedger read_ledger_csv(std::istream& is) {
    EnergyLedger ledger;
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("ledger csv: empty file");
    if (line != kHeader) throw ConfigError("ledger csv: unexpected header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        LedgerRow r;
        char c;
        ss >> r.t >> c >> r.mass >> c >> r.momentum_x >> c >> r.momentum_y >> c >> r.E_h >>
            c >> r.D_visc_dev >> c >> r.D_visc_div >> c >> r.D_rusanov >> c >> r.lambda >>
            c >> r.dt >> c >> r.semidiscrete_residual >> c >> r.dg_u >> c >> r.dg_rho;
        if (!ss) throw ConfigError("ledger csv: malformed row: " + line);
        ledger.rows.push_back(r);
    }
    return ledger;
}

EnergyLedger read_ledger_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open ledger file: " + path);
    return read_ledger_csv(is);
}

}  // namespace nskfv
