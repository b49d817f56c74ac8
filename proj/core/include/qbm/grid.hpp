#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qbm {

/// Uniform time grid 0, dt, 2*dt, ..., (size-1)*dt shared by all tables.
struct TimeGrid {
  double dt = 0.01;
  std::size_t size = 0;

  TimeGrid() = default;
  TimeGrid(double step, std::size_t n) : dt(step), size(n) {
    if (!(dt > 0.0)) throw std::invalid_argument("TimeGrid: dt must be positive");
    if (size < 2) throw std::invalid_argument("TimeGrid: need at least two points");
  }

  static TimeGrid from_range(double step, double t_max) {
    if (!(step > 0.0) || !(t_max > 0.0))
      throw std::invalid_argument("TimeGrid: dt and t_max must be positive");
    auto n = static_cast<std::size_t>(std::llround(t_max / step)) + 1;
    return TimeGrid(step, n < 2 ? 2 : n);
  }

  double time(std::size_t i) const { return static_cast<double>(i) * dt; }
  double t_max() const { return time(size - 1); }

  std::vector<double> times() const {
    std::vector<double> t(size);
    for (std::size_t i = 0; i < size; ++i) t[i] = time(i);
    return t;
  }

  /// Maps t to its grid index; rejects times that are not grid multiples.
  std::size_t index_of(double t) const {
    double r = t / dt;
    auto i = static_cast<long long>(std::llround(r));
    if (i < 0 || static_cast<std::size_t>(i) >= size ||
        std::abs(r - static_cast<double>(i)) > 1e-9 * (1.0 + std::abs(r)))
      throw std::invalid_argument("TimeGrid: time off the shared grid");
    return static_cast<std::size_t>(i);
  }

  bool operator==(const TimeGrid& o) const { return dt == o.dt && size == o.size; }
};

inline void require_same_grid(const TimeGrid& a, const TimeGrid& b, const char* where) {
  if (!(a == b)) throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

}  // namespace qbm
