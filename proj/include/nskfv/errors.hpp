#pragma once

#include <stdexcept>
#include <string>

namespace nskfv {

// Invalid configuration or parameter values. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A cell density dropped to or below the floor: the ODE right-hand side is
// no longer Lipschitz and the run has hit its maximal existence time.
// CLI maps this to exit code 3.
class VacuumBreakdown : public std::runtime_error {
public:
    VacuumBreakdown(int i, int j, double t, double rho)
        : std::runtime_error("vacuum breakdown at cell (" + std::to_string(i) + "," +
                             std::to_string(j) + "), t=" + std::to_string(t) +
                             ", rho=" + std::to_string(rho)),
          i(i), j(j), t(t), rho(rho) {}
    int i;
    int j;
    double t;
    double rho;
};

// Step-size retry cap exceeded while trying to keep the energy monotone.
// CLI maps this to exit code 4.
class StabilityFailure : public std::runtime_error {
public:
    StabilityFailure(double t, double dt, const std::string& msg)
        : std::runtime_error("stability failure at t=" + std::to_string(t) +
                             ", dt=" + std::to_string(dt) + ": " + msg),
          t(t), dt(dt) {}
    double t;
    double dt;
};

}  // namespace nskfv
