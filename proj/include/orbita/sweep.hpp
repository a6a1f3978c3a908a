#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "orbita/rotated.hpp"

namespace orbita {

/// One (e, alpha) cell of the rotated-ellipse sweep.
struct SweepRecord {
  double e = 0.0;
  double alpha_deg = 0.0;  // requested angle
  long a = 0, b = 0;
  double best_f1 = 0.0;
  std::string best_case;
  double separation_deg = 0.0;
  double apogee_f1 = 0.0;
  double ratio_pct = 0.0;  // 100 best_f1 / apogee_f1
  bool case1_found = false;
  double case2b_best_f1 = 0.0;  // NaN when case 2b returned nothing
  /// Set instead of the results when the cell failed.
  std::string error;
};

SweepRecord sweep_cell(double e, double alpha_deg, const Case1Config& case1 = {});

/// Cells in e-major order, computed on `threads` threads.
std::vector<SweepRecord> sweep_rotated(const std::vector<double>& es, const std::vector<double>& alphas,
                                       int threads, const Case1Config& case1 = {});

/// Header plus one row per record, floats with 12 significant digits.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& rows);

/// "start:stop:step" (stop included up to rounding) or "v1,v2,...".
/// Throws std::invalid_argument on malformed text.
std::vector<double> parse_value_list(const std::string& text);

}  // namespace orbita
