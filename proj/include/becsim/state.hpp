#pragma once

#include <vector>

namespace becsim {

/// A nonnegative density sample n(x_i) at cell centers, tagged with its time stamp.
struct State {
    double t = 0.0;
    std::vector<double> n;
};

}  // namespace becsim
