#include "nskfv/config.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

namespace nskfv {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

class Section {
public:
    Section(const std::map<std::string, std::string>* kv, std::string name)
        : kv_(kv), name_(std::move(name)) {}

    bool has(const std::string& key) const { return kv_ && kv_->count(key); }

    std::string str(const std::string& key, const std::string& def) const {
        if (!has(key)) return def;
        return kv_->at(key);
    }
    double num(const std::string& key, double def) const {
        if (!has(key)) return def;
        const std::string& v = kv_->at(key);
        try {
            std::size_t pos = 0;
            const double x = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return x;
        } catch (const std::exception&) {
            throw ConfigError("config: [" + name_ + "] " + key + " = '" + v +
                              "' is not a number");
        }
    }
    int integer(const std::string& key, int def) const {
        const double x = num(key, def);
        const int n = static_cast<int>(x);
        if (n != x)
            throw ConfigError("config: [" + name_ + "] " + key + " must be an integer");
        return n;
    }
    bool flag(const std::string& key, bool def) const {
        const std::string v = str(key, def ? "true" : "false");
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        throw ConfigError("config: [" + name_ + "] " + key + " must be a boolean");
    }

private:
    const std::map<std::string, std::string>* kv_;
    std::string name_;
};

}  // namespace

std::map<std::string, std::map<std::string, std::string>> parse_sections(std::istream& is) {
    std::map<std::string, std::map<std::string, std::string>> out;
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            out[section];
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || section.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": key outside a section");
        out[section][key] = val;
    }
    return out;
}

RunConfig parse_config(std::istream& is) {
    const auto sections = parse_sections(is);
    auto get = [&](const std::string& name) -> Section {
        auto it = sections.find(name);
        return Section(it == sections.end() ? nullptr : &it->second, name);
    };

    RunConfig cfg;
    {
        const Section s = get("grid");
        cfg.grid = GridSpec(s.num("Lx", 1.0), s.num("Ly", 1.0), s.integer("M", 64),
                            s.integer("N", 64));
    }
    {
        const Section s = get("params");
        cfg.params.k = s.num("k", 1.0);
        cfg.params.gamma = s.num("gamma", 2.0);
        cfg.params.kappa = s.num("kappa", 1e-3);
        cfg.params.mu = s.num("mu", 0.0);
        cfg.params.eta = s.num("eta", 0.0);
        const std::string pol = s.str("lambda_policy", "rusanov");
        if (pol == "rusanov")
            cfg.params.lambda_policy = LambdaPolicy::RusanovAuto;
        else if (pol == "fixed")
            cfg.params.lambda_policy = LambdaPolicy::Fixed;
        else
            throw ConfigError("config: lambda_policy must be 'rusanov' or 'fixed'");
        cfg.params.lambda_fixed = s.num("lambda_fixed", 0.0);
        cfg.params.cfl = s.num("cfl", 0.5);
        cfg.rho_floor_rel = s.num("rho_floor_rel", 1e-6);
    }
    {
        const Section s = get("init");
        cfg.init.Lx = cfg.grid.Lx;
        cfg.init.Ly = cfg.grid.Ly;
        const std::string d = s.str("density", "constant");
        if (d == "constant")
            cfg.init.density = InitExpr::Density::Constant;
        else if (d == "perturbed")
            cfg.init.density = InitExpr::Density::PerturbedConstant;
        else if (d == "bubble")
            cfg.init.density = InitExpr::Density::Bubble;
        else
            throw ConfigError("config: unknown density expression '" + d + "'");
        cfg.init.rho_bar = s.num("rho_bar", 1.0);
        cfg.init.amp = s.num("amp", 0.0);
        cfg.init.px = s.integer("px", 1);
        cfg.init.qy = s.integer("qy", 1);
        cfg.init.bubble_amp = s.num("bubble_amp", 0.0);
        cfg.init.bubble_w = s.num("bubble_w", 0.25);
        cfg.init.bubble_x0 = s.num("bubble_x0", 0.5 * cfg.grid.Lx);
        cfg.init.bubble_y0 = s.num("bubble_y0", 0.5 * cfg.grid.Ly);
        const std::string v = s.str("velocity", "zero");
        if (v == "zero")
            cfg.init.velocity = InitExpr::Velocity::Zero;
        else if (v == "shear")
            cfg.init.velocity = InitExpr::Velocity::Shear;
        else if (v == "solid")
            cfg.init.velocity = InitExpr::Velocity::SolidMode;
        else
            throw ConfigError("config: unknown velocity expression '" + v + "'");
        cfg.init.vel_A = s.num("vel_A", 0.0);
        cfg.init.vel_B = s.num("vel_B", 0.0);
        cfg.init.vel_phase = s.num("vel_phase", 0.0);
    }
    {
        const Section s = get("control");
        cfg.control.t_end = s.num("t_end", 0.1);
        cfg.control.snapshot_stride = s.integer("snapshot_stride", 1);
        cfg.control.tol_E_rel = s.num("tol_E_rel", 1e-8);
        cfg.control.dt_max = s.num("dt_max", std::numeric_limits<double>::infinity());
        cfg.control.dt_fixed = s.num("dt_fixed", 0.0);
        cfg.control.cfl = cfg.params.cfl;
        cfg.control.c_K = s.num("c_K", 4.0);
        const std::string m = s.str("method", "ssprk3");
        if (m == "ssprk3")
            cfg.control.method = RkMethod::Ssprk3;
        else if (m == "rk4")
            cfg.control.method = RkMethod::Rk4;
        else
            throw ConfigError("config: method must be 'ssprk3' or 'rk4'");
        cfg.deterministic = s.flag("deterministic", true);
    }
    {
        const Section s = get("output");
        cfg.output_dir = s.str("directory", "out");
        cfg.format = s.str("format", "binary");
        if (cfg.format != "binary" && cfg.format != "csv" && cfg.format != "both")
            throw ConfigError("config: format must be binary, csv or both");
    }

    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config: cannot open '" + path + "'");
    return parse_config(is);
}

void RunConfig::validate() const {
    ModelParams p = params;
    p.rho_floor = 1.0;  // placeholder; the relative floor is validated below
    p.validate();
    init.validate();
    control.validate();
    if (!(rho_floor_rel > 0.0) || rho_floor_rel >= 1.0)
        throw ConfigError("config: rho_floor_rel must be in (0,1)");
    if ((params.mu > 0.0) != (params.eta > 0.0))
        std::cerr << "warning: mixed viscosity (mu > 0 xor eta > 0) is outside the "
                     "supported solution classes (fully inviscid or fully viscous)\n";
}

double RunConfig::resolved_rho_floor() const {
    const double mean_rho = init.total_mass() / (grid.Lx * grid.Ly);
    return rho_floor_rel * mean_rho;
}

ModelParams RunConfig::resolved_params() const {
    ModelParams p = params;
    p.rho_floor = resolved_rho_floor();
    return p;
}

void RunConfig::echo(std::ostream& os) const {
    os.precision(17);
    os << "[grid]\n"
       << "Lx = " << grid.Lx << "\nLy = " << grid.Ly << "\nM = " << grid.M
       << "\nN = " << grid.N << "\n";
    os << "[params]\n"
       << "k = " << params.k << "\ngamma = " << params.gamma << "\nkappa = " << params.kappa
       << "\nmu = " << params.mu << "\neta = " << params.eta << "\nlambda_policy = "
       << (params.lambda_policy == LambdaPolicy::RusanovAuto ? "rusanov" : "fixed")
       << "\nlambda_fixed = " << params.lambda_fixed << "\ncfl = " << params.cfl
       << "\nrho_floor_rel = " << rho_floor_rel << "\n";
    os << "[init]\n";
    switch (init.density) {
        case InitExpr::Density::Constant:
            os << "density = constant\n";
            break;
        case InitExpr::Density::PerturbedConstant:
            os << "density = perturbed\n";
            break;
        case InitExpr::Density::Bubble:
            os << "density = bubble\n";
            break;
    }
    os << "rho_bar = " << init.rho_bar << "\namp = " << init.amp << "\npx = " << init.px
       << "\nqy = " << init.qy << "\nbubble_amp = " << init.bubble_amp
       << "\nbubble_w = " << init.bubble_w << "\nbubble_x0 = " << init.bubble_x0
       << "\nbubble_y0 = " << init.bubble_y0 << "\n";
    switch (init.velocity) {
        case InitExpr::Velocity::Zero:
            os << "velocity = zero\n";
            break;
        case InitExpr::Velocity::Shear:
            os << "velocity = shear\n";
            break;
        case InitExpr::Velocity::SolidMode:
            os << "velocity = solid\n";
            break;
    }
    os << "vel_A = " << init.vel_A << "\nvel_B = " << init.vel_B
       << "\nvel_phase = " << init.vel_phase << "\n";
    os << "[control]\n"
       << "t_end = " << control.t_end << "\nsnapshot_stride = " << control.snapshot_stride
       << "\ntol_E_rel = " << control.tol_E_rel << "\ndt_max = " << control.dt_max
       << "\ndt_fixed = " << control.dt_fixed << "\nc_K = " << control.c_K
       << "\nmethod = " << (control.method == RkMethod::Ssprk3 ? "ssprk3" : "rk4")
       << "\ndeterministic = " << (deterministic ? "true" : "false") << "\n";
    os << "[output]\n"
       << "directory = " << output_dir << "\nformat = " << format << "\n";
}

}  // namespace nskfv
