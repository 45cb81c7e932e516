#include "foms/rates.hpp"

#include <cmath>

namespace foms {

RateReport fit_rate(const SolverTrace& trace, std::pair<long, long> window) {
  require(window.first >= 1 && window.second >= window.first, "fit_rate: bad window");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long count = 0;
  for (const TraceRow& r : trace.rows) {
    if (r.k < window.first || r.k > window.second) continue;
    if (!(r.gap > 0.0) || !std::isfinite(r.gap)) continue;
    const double lx = std::log(static_cast<double>(r.k));
    const double ly = std::log(r.gap);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < 2) throw std::invalid_argument("fit_rate: window holds fewer than two usable gaps");
  const double denom = count * sxx - sx * sx;
  RateReport report;
  report.slope = denom != 0.0 ? (count * sxy - sx * sy) / denom : 0.0;
  report.window = window;
  report.points = count;
  return report;
}

}  // namespace foms
