#include "becsim/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace becsim {

double Grid::max_width() const {
    double m = 0.0;
    for (double w : widths) m = std::max(m, w);
    return m;
}

Grid build_grid(double epsilon, std::size_t cells, double grading) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("build_grid: epsilon must lie in (0,1), got " + std::to_string(epsilon));
    if (cells < 2)
        throw std::invalid_argument("build_grid: need at least 2 cells");
    if (!(grading >= 1.0))
        throw std::invalid_argument("build_grid: grading ratio must be >= 1");

    const std::size_t m = cells;
    Grid g;
    g.epsilon = epsilon;
    g.grading = grading;
    g.interfaces.resize(m + 1);
    g.centers.resize(m);
    g.widths.resize(m);

    const double span = 1.0 - epsilon;
    if (grading == 1.0) {
        for (std::size_t k = 0; k <= m; ++k)
            g.interfaces[k] = epsilon + span * (double(k) / double(m));
    } else {
        // width_i = w1 * r^(i-1), sum = w1 (r^m - 1)/(r - 1) = span
        const double r = grading;
        const double w1 = span * (r - 1.0) / (std::pow(r, double(m)) - 1.0);
        double pw = 1.0;   // r^k accumulator
        double sum = 0.0;  // (r^k - 1)/(r - 1) accumulator
        g.interfaces[0] = epsilon;
        for (std::size_t k = 1; k <= m; ++k) {
            sum += pw;
            pw *= r;
            g.interfaces[k] = epsilon + w1 * sum;
        }
    }
    g.interfaces[m] = 1.0;  // pin the right endpoint exactly

    for (std::size_t i = 0; i < m; ++i) {
        g.widths[i] = g.interfaces[i + 1] - g.interfaces[i];
        g.centers[i] = 0.5 * (g.interfaces[i] + g.interfaces[i + 1]);
    }
    return g;
}

double quad(const std::vector<double>& values, double weight_exponent, const Grid& grid) {
    if (values.size() != grid.size())
        throw std::invalid_argument("quad: values length does not match grid");
    if (!(weight_exponent >= 0.0))
        throw std::invalid_argument("quad: weight exponent must be >= 0");

    double s = 0.0;
    if (weight_exponent == 0.0) {
        for (std::size_t i = 0; i < values.size(); ++i) s += grid.widths[i] * values[i];
    } else {
        for (std::size_t i = 0; i < values.size(); ++i)
            s += grid.widths[i] * std::pow(grid.centers[i], weight_exponent) * values[i];
    }
    return s;
}

}  // namespace becsim
