#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "dfnls/types.hpp"

namespace dfnls {

/// Composite merit used for benchmarking: the objective when (nearly)
/// feasible, otherwise the objective plus a large violation penalty.
inline double merit_phi(double f, double cviol_inf) {
  return cviol_inf <= 1e-6 ? f : f + 1e4 * cviol_inf;
}

struct TraceRow {
  long fevals = 0;
  double merit_phi = kNaN;   ///< best merit over all points evaluated so far
  double f = kNaN;           ///< objective at the best point
  double cviol_inf = kNaN;   ///< ||c||_inf at the best point
  double kkt_scaled = kNaN;  ///< scaled KKT measure at the latest outer iterate
};

/// Accumulates the best-so-far merit as a step function of the combined
/// evaluation count. Every point at which both r and c were evaluated
/// contributes, including smoothing probes and rejected trial steps.
class TraceRecorder {
 public:
  void on_point(long fevals, double f, double cviol_inf) {
    const double phi = merit_phi(f, cviol_inf);
    if (rows_.empty() || phi < best_phi_) {
      best_phi_ = phi;
      best_f_ = f;
      best_cviol_ = cviol_inf;
    }
    rows_.push_back({fevals, best_phi_, best_f_, best_cviol_, kkt_});
  }

  void set_kkt(double v) { kkt_ = v; }

  const std::vector<TraceRow>& rows() const { return rows_; }

 private:
  std::vector<TraceRow> rows_;
  double best_phi_ = kInf;
  double best_f_ = kNaN;
  double best_cviol_ = kNaN;
  double kkt_ = kNaN;
};

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// CSV schema: fevals,merit_phi,f,cviol_inf,kkt_scaled ('.' decimals, LF).
inline void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows) {
  os << "fevals,merit_phi,f,cviol_inf,kkt_scaled\n";
  for (const auto& r : rows) {
    os << r.fevals << ',' << format_double(r.merit_phi) << ',' << format_double(r.f) << ','
       << format_double(r.cviol_inf) << ',' << format_double(r.kkt_scaled) << '\n';
  }
}

}  // namespace dfnls
