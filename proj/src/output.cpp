#include "becsim/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace becsim {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj, const Grid& grid) {
    auto out = open_out(path);
    out << "t,x,n\n";
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const auto& s = traj.states[k];
        for (std::size_t i = 0; i < grid.size(); ++i)
            out << format_double(traj.times[k]) << ',' << format_double(grid.centers[i]) << ','
                << format_double(s.n[i]) << '\n';
    }
}

void write_summary_csv(const std::string& path, const Trajectory& traj,
                       const std::vector<double>* eq_residual) {
    auto out = open_out(path);
    out << "t,N,ledger,n_eps,sup_violation,oleinik_violation,energy_slack,entropy,clip_mass";
    if (eq_residual) out << ",eq_residual";
    out << '\n';
    for (std::size_t k = 0; k < traj.reports.size(); ++k) {
        const auto& r = traj.reports[k];
        out << format_double(r.t) << ',' << format_double(r.N) << ',' << format_double(r.ledger)
            << ',' << format_double(r.n_eps) << ',' << format_double(r.sup_violation) << ','
            << format_double(r.oleinik_violation) << ',' << format_double(r.energy_slack) << ','
            << format_double(r.entropy) << ',' << format_double(r.clip_mass);
        if (eq_residual) out << ',' << format_double((*eq_residual)[k]);
        out << '\n';
    }
}

void write_compare_csv(const std::string& path, const std::vector<double>& times,
                       const ContractionReport& rep) {
    auto out = open_out(path);
    out << "t,d,d_plus,envelope\n";
    for (std::size_t k = 0; k < times.size(); ++k)
        out << format_double(times[k]) << ',' << format_double(rep.d[k]) << ','
            << format_double(rep.d_plus[k]) << ',' << format_double(rep.envelope[k]) << '\n';
}

void ensure_dir(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw std::runtime_error("cannot create directory " + path + ": " + ec.message());
}

bool files_identical(const std::string& a, const std::string& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    if (!fa || !fb) return false;
    std::string ca((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
    std::string cb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
    return ca == cb;
}

}  // namespace becsim
