#include "becsim/initdata.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace becsim {

InitialSpec InitialSpec::constant(double c) {
    InitialSpec s;
    s.family = Family::constant;
    s.c = c;
    s.validate();
    return s;
}

InitialSpec InitialSpec::linear(double a) {
    InitialSpec s;
    s.family = Family::linear;
    s.a = a;
    s.validate();
    return s;
}

InitialSpec InitialSpec::scaled_equilibrium(double a, double mu) {
    InitialSpec s;
    s.family = Family::scaled_equilibrium;
    s.a = a;
    s.mu = mu;
    s.validate();
    return s;
}

InitialSpec InitialSpec::bump(double center, double width, double height) {
    InitialSpec s;
    s.family = Family::bump;
    s.center = center;
    s.width = width;
    s.height = height;
    s.validate();
    return s;
}

InitialSpec InitialSpec::from_table(std::vector<std::pair<double, double>> points) {
    InitialSpec s;
    s.family = Family::table;
    s.table = std::move(points);
    s.validate();
    return s;
}

InitialSpec InitialSpec::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("initial table: cannot open " + path);
    std::vector<std::pair<double, double>> pts;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::string cleaned = line;
        std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
        std::istringstream ls(cleaned);
        double x, v;
        if (!(ls >> x >> v)) {
            if (first) {  // header row
                first = false;
                continue;
            }
            throw std::invalid_argument("initial table: malformed row '" + line + "'");
        }
        first = false;
        pts.emplace_back(x, v);
    }
    return from_table(std::move(pts));
}

void InitialSpec::validate() const {
    switch (family) {
        case Family::constant:
            if (!(c >= 0.0)) throw std::invalid_argument("initial constant(c): c must be >= 0");
            break;
        case Family::linear:
            if (!(a >= 0.0)) throw std::invalid_argument("initial linear(a): a must be >= 0");
            break;
        case Family::scaled_equilibrium:
            if (!(a >= 0.0) || !(mu >= 0.0))
                throw std::invalid_argument("initial scaled_equilibrium(a, mu): a, mu must be >= 0");
            break;
        case Family::bump:
            if (!(height >= 0.0) || !(width > 0.0))
                throw std::invalid_argument("initial bump: needs width > 0, height >= 0");
            break;
        case Family::table: {
            if (table.size() < 2) throw std::invalid_argument("initial table: needs >= 2 points");
            for (std::size_t i = 0; i + 1 < table.size(); ++i)
                if (!(table[i].first < table[i + 1].first))
                    throw std::invalid_argument("initial table: x must be strictly increasing");
            for (const auto& [x, v] : table)
                if (!(v >= 0.0)) throw std::invalid_argument("initial table: values must be >= 0");
            break;
        }
    }
    if (kappa != 0.0 && !(kappa > 0.0 && kappa <= 0.1))
        throw std::invalid_argument("initial: kappa must be 0 or in (0, 0.1]");
    if (!(p >= 0.0)) throw std::invalid_argument("initial: weight exponent p must be >= 0");
}

double InitialSpec::eval_raw(double x) const {
    switch (family) {
        case Family::constant:
            return c;
        case Family::linear:
            return a * x;
        case Family::scaled_equilibrium:
            return a * x * x / (x + mu);
        case Family::bump: {
            const double u = (x - center) / width;
            if (std::abs(u) >= 1.0) return 0.0;
            return height * std::exp(1.0 - 1.0 / (1.0 - u * u));
        }
        case Family::table: {
            // clamped linear interpolation
            if (x <= table.front().first) return table.front().second;
            if (x >= table.back().first) return table.back().second;
            auto it = std::upper_bound(table.begin(), table.end(), x,
                                       [](double v, const auto& q) { return v < q.first; });
            const auto& [x1, v1] = *it;
            const auto& [x0, v0] = *(it - 1);
            const double w = (x - x0) / (x1 - x0);
            return v0 + w * (v1 - v0);
        }
    }
    return 0.0;
}

State sample_raw(const InitialSpec& spec, const Grid& grid) {
    spec.validate();
    if (spec.family == InitialSpec::Family::table) {
        if (spec.table.front().first > grid.epsilon || spec.table.back().first < 1.0)
            throw std::invalid_argument("initial table: does not cover [epsilon, 1]");
    }
    State s;
    s.t = 0.0;
    s.n.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) s.n[i] = spec.eval_raw(grid.centers[i]);
    return s;
}

Mollified::Mollified(const InitialSpec& spec) : spec_(spec), kappa_(spec.kappa), weight_p_(spec.p) {
    spec.validate();
    if (!(kappa_ > 0.0)) throw std::invalid_argument("mollify: kappa must be positive");
}

void Mollified::convolution(double x, double* val, double* der) const {
    // integral over y in [x - kappa, x + kappa] intersected with [2k, 1 - 2k],
    // composite midpoint with 8 subpoints per kappa of width
    const double lo = std::max(x - kappa_, 2.0 * kappa_);
    const double hi = std::min(x + kappa_, 1.0 - 2.0 * kappa_);
    if (val) *val = 0.0;
    if (der) *der = 0.0;
    if (!(hi > lo)) return;
    const int nsub = std::max(8, int(std::ceil((hi - lo) / (kappa_ / 8.0))));
    const double dy = (hi - lo) / nsub;
    double sv = 0.0, sd = 0.0;
    for (int j = 0; j < nsub; ++j) {
        const double y = lo + (j + 0.5) * dy;
        const double w = std::pow(y, weight_p_) * spec_.eval_raw(y);
        const double u = (x - y) / kappa_;
        if (val) sv += bump(u) / kappa_ * w;
        if (der) sd += bump_derivative(u) / (kappa_ * kappa_) * w;
    }
    if (val) *val = sv * dy;
    if (der) *der = sd * dy;
}

double Mollified::value(double x) const {
    double conv = 0.0;
    convolution(x, &conv, nullptr);
    const double chi = bump_cdf(4.0 * x - 2.0);
    const double tail = kappa_ * std::pow(x, 2.0 + weight_p_) / (1.0 + kappa_ * x * chi);
    return (conv + tail) * std::pow(x, -weight_p_);
}

double Mollified::derivative(double x) const {
    double conv = 0.0, dconv = 0.0;
    convolution(x, &conv, &dconv);
    const double chi = bump_cdf(4.0 * x - 2.0);
    const double q = kappa_ * x * chi;
    const double dq = kappa_ * chi + kappa_ * x * 4.0 * bump(4.0 * x - 2.0);
    const double xp2 = std::pow(x, 2.0 + weight_p_);
    const double tail = kappa_ * xp2 / (1.0 + q);
    const double dtail =
        kappa_ * ((2.0 + weight_p_) * xp2 / x * (1.0 + q) - xp2 * dq) / ((1.0 + q) * (1.0 + q));
    if (weight_p_ == 0.0) return dconv + dtail;
    const double xm = std::pow(x, -weight_p_);
    return -weight_p_ * xm / x * (conv + tail) + xm * (dconv + dtail);
}

double Mollified::target_flux(double x) const {
    const double n = value(x);
    return flux_pointwise(n, derivative(x), x);
}

State mollify(const InitialSpec& spec, const Grid& grid) {
    Mollified m(spec);
    State s;
    s.t = 0.0;
    s.n.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) s.n[i] = m.value(grid.centers[i]);
    return s;
}

State initial_state(const InitialSpec& spec, const Grid& grid) {
    return spec.kappa > 0.0 ? mollify(spec, grid) : sample_raw(spec, grid);
}

CutoffAdjustment cutoff_compatible_detail(const State& state, const CutoffProfile& profile,
                                          const Grid& grid,
                                          const std::function<double(double)>& target_flux,
                                          int substeps_per_cell) {
    if (state.n.size() != grid.size())
        throw std::invalid_argument("cutoff_compatible: state does not match grid");
    if (substeps_per_cell < 1) throw std::invalid_argument("cutoff_compatible: bad substep count");

    const double left = 1.0 - 2.0 * profile.h;

    CutoffAdjustment out;
    out.state = state;

    // nodes: strip entry, every cell center in the strip, then x = 1,
    // each gap subdivided uniformly
    std::vector<double> anchors{left};
    std::vector<std::size_t> anchor_cell(1, std::size_t(-1));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid.centers[i] > left) {
            anchors.push_back(grid.centers[i]);
            anchor_cell.push_back(i);
        }
    }
    anchors.push_back(1.0);
    anchor_cell.push_back(std::size_t(-1));

    const double target_step = grid.max_width() / substeps_per_cell;

    auto rhs = [&](double x, double n) {
        const double chi = profile.chi_h(x);
        return (target_flux(x) + 2.0 * x * n - n * n - (3.0 * n - n * n) * chi) / (x * x);
    };

    // starting value: interpolate the input state at the strip entry
    double n_cur = 0.0;
    {
        std::size_t i = 0;
        while (i + 1 < grid.size() && grid.centers[i + 1] < left) ++i;
        if (i + 1 < grid.size()) {
            const double w = (left - grid.centers[i]) / grid.spacing(i);
            n_cur = state.n[i] + w * (state.n[i + 1] - state.n[i]);
        } else {
            n_cur = state.n.back();
        }
    }

    out.path_x.push_back(left);
    out.path_n.push_back(n_cur);

    for (std::size_t k = 0; k + 1 < anchors.size(); ++k) {
        const double a = anchors[k], b = anchors[k + 1];
        const int nsub = std::max(1, int(std::ceil((b - a) / target_step)));
        const double h = (b - a) / nsub;
        for (int j = 0; j < nsub; ++j) {
            const double x = a + j * h;
            const double k1 = rhs(x, n_cur);
            const double k2 = rhs(x + 0.5 * h, n_cur + 0.5 * h * k1);
            const double k3 = rhs(x + 0.5 * h, n_cur + 0.5 * h * k2);
            const double k4 = rhs(x + h, n_cur + h * k3);
            n_cur += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if (!std::isfinite(n_cur))
                throw std::runtime_error(
                    "cutoff_compatible: ODE blow-up on the strip (cutoff width too large for data)");
            out.path_x.push_back(x + h);
            out.path_n.push_back(n_cur);
        }
        if (anchor_cell[k + 1] != std::size_t(-1)) out.state.n[anchor_cell[k + 1]] = n_cur;
    }
    return out;
}

State cutoff_compatible(const State& state, const CutoffProfile& profile, const Grid& grid,
                        const Mollified& source) {
    if (!(profile.h < source.kappa()))
        throw std::invalid_argument(
            "cutoff_compatible: cutoff width must be smaller than the kappa tail region");
    auto flux = [&source](double x) { return source.target_flux(x); };
    return cutoff_compatible_detail(state, profile, grid, flux).state;
}

}  // namespace becsim
