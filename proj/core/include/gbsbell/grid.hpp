#pragma once

#include <stdexcept>
#include <vector>

namespace gbsbell {

/// Uniform 1-D grid: count points from start to stop inclusive (count == 1
/// yields just start).
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  double at(int i) const {
    if (count <= 1) return start;
    return start + (stop - start) * static_cast<double>(i) /
                       static_cast<double>(count - 1);
  }

  std::vector<double> points() const {
    if (count < 1) throw std::invalid_argument("grid count must be >= 1");
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = at(i);
    return v;
  }
};

}  // namespace gbsbell
