#pragma once

#include "foms/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace foms {

/// One per-iteration record. `gap` is NaN when no reference value is known;
/// counters are cumulative within the run.
struct TraceRow {
  long k = 0;
  double objective = 0.0;
  double gap = std::numeric_limits<double>::quiet_NaN();
  double step = 0.0;
  long grad_calls = 0;
  long prox_calls = 0;
  long lo_calls = 0;
  std::int64_t wall_ns = 0;
};

class SolverTrace {
 public:
  std::vector<TraceRow> rows;
  /// Free-form audit metadata (solver, seed, generator, ...). Emitted as
  /// '#'-prefixed comment lines above the CSV column header.
  std::map<std::string, std::string> meta;

  void push(TraceRow row);

  const TraceRow& back() const { return rows.back(); }
  bool empty() const { return rows.empty(); }
  std::size_t size() const { return rows.size(); }

  /// CSV with header `k,objective,gap,step,grad_calls,prox_calls,lo_calls,wall_ns`.
  /// Doubles are printed with enough digits to round-trip exactly.
  std::string to_csv() const;
  static SolverTrace from_csv(const std::string& text);

  void save_csv(const std::string& path) const;
  static SolverTrace load_csv(const std::string& path);
};

/// Iterate plus the per-iteration record of the run that produced it.
struct SolverResult {
  Vec x;
  SolverTrace trace;
};

/// Stopwatch for wall_ns columns.
class Stopwatch {
 public:
  Stopwatch();
  std::int64_t elapsed_ns() const;

 private:
  std::int64_t start_;
};

}  // namespace foms
