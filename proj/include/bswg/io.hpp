// io.hpp — CSV output with lossless floating-point formatting. Column orders
// are part of the tool's external contract; keep them stable.

#pragma once

#include "bswg/bound_states.hpp"
#include "bswg/dynamics.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bswg {

// 17 significant digits: round-trips a double exactly.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    return out;
}

// time, P_L, P_R, P_plus, P_minus, norm (two emitters);
// time, P_L, P_C, P_R, P_even1, P_even2, P_odd, norm (three emitters).
inline void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    auto out = open_output(path);
    const int ne = static_cast<int>(traj.pops_site.cols());
    if (ne == 2) {
        out << "time,P_L,P_R,P_plus,P_minus,norm\n";
    } else if (ne == 3) {
        out << "time,P_L,P_C,P_R,P_even1,P_even2,P_odd,norm\n";
    } else {
        out << "time";
        for (int e = 0; e < ne; ++e) out << ",P_" << e;
        out << ",norm\n";
    }
    for (int i = 0; i < traj.times.size(); ++i) {
        out << fmt17(traj.times(i));
        for (int e = 0; e < ne; ++e) out << ',' << fmt17(traj.pops_site(i, e));
        for (int s = 0; s < traj.pops_sector.cols(); ++s) out << ',' << fmt17(traj.pops_sector(i, s));
        out << ',' << fmt17(traj.norm(i)) << '\n';
    }
}

// Long format: time, cavity_index, occupation.
inline void write_fieldmap_csv(const std::filesystem::path& path, const Trajectory& traj) {
    if (traj.field_map.size() == 0)
        throw std::invalid_argument("write_fieldmap_csv: trajectory has no field data");
    auto out = open_output(path);
    out << "time,cavity_index,occupation\n";
    for (int r = 0; r < traj.field_map.rows(); ++r)
        for (int c = 0; c < traj.field_map.cols(); ++c)
            out << fmt17(traj.field_times(r)) << ',' << (traj.field_cavity_lo + c) << ','
                << fmt17(traj.field_map(r, c)) << '\n';
}

// time and the bound-mode prediction in both bases.
inline void write_asymptote_csv(const std::filesystem::path& path, const AsymptoticModel& model,
                                const Eigen::VectorXd& times) {
    auto out = open_output(path);
    out << "time,P_L_pred,P_R_pred,P_plus_pred,P_minus_pred\n";
    for (int i = 0; i < times.size(); ++i) {
        const double t = times(i);
        out << fmt17(t) << ',' << fmt17(model.predict_site(0, t)) << ','
            << fmt17(model.predict_site(1, t)) << ',' << fmt17(model.predict_sector(Sector::plus, t))
            << ',' << fmt17(model.predict_sector(Sector::minus, t)) << '\n';
    }
}

inline std::string scan_flag_name(std::uint8_t f) {
    if ((f & scan_edge) && (f & scan_rwa)) return "edge+rwa";
    if (f & scan_edge) return "edge";
    if (f & scan_rwa) return "rwa";
    return "ok";
}

// delta, g, count, flag.
inline void write_scan_csv(const std::filesystem::path& path, const RegionScanResult& scan) {
    auto out = open_output(path);
    out << "delta,g,count,flag\n";
    for (std::size_t i = 0; i < scan.delta_grid.size(); ++i)
        for (std::size_t j = 0; j < scan.g_grid.size(); ++j)
            out << fmt17(scan.delta_grid[i]) << ',' << fmt17(scan.g_grid[j]) << ',' << scan.count(i, j)
                << ',' << scan_flag_name(scan.flag(i, j)) << '\n';
}

// E, Re F+, Im F+, Re F−, Im F−.
inline void write_pole_curve_csv(const std::filesystem::path& path,
                                 const std::vector<double>& energies,
                                 const std::vector<complex>& f_plus,
                                 const std::vector<complex>& f_minus) {
    auto out = open_output(path);
    out << "E,ReF_plus,ImF_plus,ReF_minus,ImF_minus\n";
    for (std::size_t i = 0; i < energies.size(); ++i)
        out << fmt17(energies[i]) << ',' << fmt17(f_plus[i].real()) << ',' << fmt17(f_plus[i].imag())
            << ',' << fmt17(f_minus[i].real()) << ',' << fmt17(f_minus[i].imag()) << '\n';
}

// energy, sector, kind, residue.
inline void write_roots_csv(const std::filesystem::path& path, const std::vector<BoundState>& roots) {
    auto out = open_output(path);
    out << "energy,sector,kind,residue\n";
    for (const auto& b : roots)
        out << fmt17(b.energy) << ',' << sector_name(b.sector) << ',' << bound_kind_name(b.kind) << ','
            << fmt17(b.residue) << '\n';
}

}  // namespace bswg
