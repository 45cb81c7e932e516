#include "foms/trace.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace foms {

namespace {

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  if (s == "nan" || s.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::stod(s);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void SolverTrace::push(TraceRow row) {
  if (!rows.empty()) {
    if (row.k <= rows.back().k) throw internal_fault("trace: iteration index must increase");
    if (row.grad_calls < rows.back().grad_calls || row.prox_calls < rows.back().prox_calls ||
        row.lo_calls < rows.back().lo_calls)
      throw internal_fault("trace: oracle counters must be non-decreasing");
  } else if (row.k != 0) {
    throw internal_fault("trace: first row must have k = 0");
  }
  rows.push_back(row);
}

std::string SolverTrace::to_csv() const {
  std::ostringstream os;
  for (const auto& [key, value] : meta) os << "# " << key << "=" << value << "\n";
  os << "k,objective,gap,step,grad_calls,prox_calls,lo_calls,wall_ns\n";
  for (const auto& r : rows) {
    os << r.k << ',' << fmt_double(r.objective) << ',' << fmt_double(r.gap) << ','
       << fmt_double(r.step) << ',' << r.grad_calls << ',' << r.prox_calls << ',' << r.lo_calls
       << ',' << r.wall_ns << "\n";
  }
  return os.str();
}

SolverTrace SolverTrace::from_csv(const std::string& text) {
  SolverTrace trace;
  std::istringstream is(text);
  std::string line;
  bool saw_header = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        std::string key = line.substr(1, eq - 1);
        while (!key.empty() && key.front() == ' ') key.erase(key.begin());
        trace.meta[key] = line.substr(eq + 1);
      }
      continue;
    }
    if (!saw_header) {
      if (line.rfind("k,objective", 0) != 0)
        throw std::invalid_argument("trace csv: missing header row");
      saw_header = true;
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 8) throw std::invalid_argument("trace csv: expected 8 fields per row");
    TraceRow r;
    r.k = std::stol(f[0]);
    r.objective = parse_double(f[1]);
    r.gap = parse_double(f[2]);
    r.step = parse_double(f[3]);
    r.grad_calls = std::stol(f[4]);
    r.prox_calls = std::stol(f[5]);
    r.lo_calls = std::stol(f[6]);
    r.wall_ns = std::stoll(f[7]);
    trace.rows.push_back(r);
  }
  if (!saw_header) throw std::invalid_argument("trace csv: empty input");
  return trace;
}

void SolverTrace::save_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << to_csv();
}

SolverTrace SolverTrace::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return from_csv(os.str());
}

Stopwatch::Stopwatch()
    : start_(std::chrono::duration_cast<std::chrono::nanoseconds>(
                 std::chrono::steady_clock::now().time_since_epoch())
                 .count()) {}

std::int64_t Stopwatch::elapsed_ns() const {
  const auto now = std::chrono::duration_cast<std::chrono::nanoseconds>(
                       std::chrono::steady_clock::now().time_since_epoch())
                       .count();
  return now - start_;
}

}  // namespace foms
