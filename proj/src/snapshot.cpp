#include "nskfv/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace nskfv {

namespace {

constexpr char kMagic[8] = {'N', 'S', 'K', 'F', 'S', 'N', 'A', 'P'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "snapshot payload is little-endian; byte swapping is not implemented");

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!is) throw ConfigError("snapshot: truncated file");
    return v;
}

void put_name(std::ostream& os, const std::string& s) {
    put<std::uint32_t>(os, static_cast<std::uint32_t>(s.size()));
    os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_name(std::istream& is) {
    const auto n = get<std::uint32_t>(is);
    if (n > 64) throw ConfigError("snapshot: implausible field-name length");
    std::string s(n, '\0');
    is.read(s.data(), n);
    if (!is) throw ConfigError("snapshot: truncated file");
    return s;
}

}  // namespace

void write_snapshot(const FluidState& s, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("snapshot: cannot open '" + path + "' for writing");
    const GridSpec& g = s.grid();
    os.write(kMagic, sizeof(kMagic));
    put<std::uint32_t>(os, kVersion);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(g.M));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(g.N));
    put<double>(os, g.Lx);
    put<double>(os, g.Ly);
    put<double>(os, s.t);
    put<std::uint32_t>(os, 3);
    put_name(os, "rho");
    put_name(os, "m_x");
    put_name(os, "m_y");
    for (const ScalarField* f : {&s.rho, &s.m.x, &s.m.y})
        os.write(reinterpret_cast<const char*>(f->data().data()),
                 static_cast<std::streamsize>(f->data().size() * sizeof(double)));
    if (!os) throw ConfigError("snapshot: write failed for '" + path + "'");
}

FluidState read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("snapshot: cannot open '" + path + "'");
    char magic[8];
    is.read(magic, sizeof(magic));
    if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw ConfigError("snapshot: bad magic in '" + path + "'");
    if (get<std::uint32_t>(is) != kVersion)
        throw ConfigError("snapshot: unsupported version in '" + path + "'");
    const int M = static_cast<int>(get<std::uint32_t>(is));
    const int N = static_cast<int>(get<std::uint32_t>(is));
    const double Lx = get<double>(is);
    const double Ly = get<double>(is);
    const double t = get<double>(is);
    const auto nfields = get<std::uint32_t>(is);
    if (nfields != 3) throw ConfigError("snapshot: expected 3 fields");
    const std::string names[3] = {get_name(is), get_name(is), get_name(is)};
    if (names[0] != "rho" || names[1] != "m_x" || names[2] != "m_y")
        throw ConfigError("snapshot: unexpected field names");

    GridSpec g(Lx, Ly, M, N);
    FluidState s(g);
    s.t = t;
    for (ScalarField* f : {&s.rho, &s.m.x, &s.m.y}) {
        is.read(reinterpret_cast<char*>(f->data().data()),
                static_cast<std::streamsize>(f->data().size() * sizeof(double)));
        if (!is) throw ConfigError("snapshot: truncated payload in '" + path + "'");
    }
    return s;
}

void write_snapshot_csv(const FluidState& s, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw ConfigError("snapshot: cannot open '" + path + "' for writing");
    os << std::setprecision(17);
    os << "# t " << s.t << "\n";
    os << "i,j,rho,m_x,m_y\n";
    const GridSpec& g = s.grid();
    for (int j = 0; j < g.N; ++j)
        for (int i = 0; i < g.M; ++i)
            os << i << ',' << j << ',' << s.rho(i, j) << ',' << s.m.x(i, j) << ','
               << s.m.y(i, j) << "\n";
}

void write_run(const Trajectory& traj, const std::string& dir, const std::string& format) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    for (std::size_t n = 0; n < traj.snapshots.size(); ++n) {
        std::ostringstream name;
        name << "snap_" << std::setw(5) << std::setfill('0') << n;
        const std::string base = (fs::path(dir) / name.str()).string();
        if (format == "binary" || format == "both") write_snapshot(traj.snapshots[n], base + ".bin");
        if (format == "csv" || format == "both") write_snapshot_csv(traj.snapshots[n], base + ".csv");
    }
    write_csv(traj.ledger, (fs::path(dir) / "ledger.csv").string());
}

Trajectory read_run(const std::string& dir) {
    namespace fs = std::filesystem;
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        const std::string name = e.path().filename().string();
        if (name.rfind("snap_", 0) == 0 && e.path().extension() == ".bin")
            files.push_back(e.path().string());
    }
    if (files.empty()) throw ConfigError("read_run: no snapshots in '" + dir + "'");
    std::sort(files.begin(), files.end());

    Trajectory traj;
    for (const auto& f : files) traj.snapshots.push_back(read_snapshot(f));
    std::sort(traj.snapshots.begin(), traj.snapshots.end(),
              [](const FluidState& a, const FluidState& b) { return a.t < b.t; });
    traj.ledger = read_ledger_csv((fs::path(dir) / "ledger.csv").string());
    return traj;
}

}  // namespace nskfv
