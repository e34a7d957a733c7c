#pragma once

#include <iosfwd>
#include <string>

#include "mabo/runtime.hpp"

namespace mabo {

// Values are serialized with 12 significant digits.
std::string format_sig12(double v);

// One row per ADMM iteration: k, x0, r, s, then per agent x_i, lambda_i and
// its newest observation. Vector components get _1.._d suffixes when the
// domain has more than one dimension. The residual columns are recomputed
// from the serialized (quantized) vector values, so a reader can verify them
// bit-exactly at file precision.
void write_trace_csv(const RunTrace& trace, std::ostream& os);
void write_trace_csv_file(const RunTrace& trace, const std::string& path);

// Side-by-side consensus and residual columns for a BO trace and a
// model-based trace produced under the same seed.
void write_compare_csv(const RunTrace& bo, const RunTrace& model, std::ostream& os);
void write_compare_csv_file(const RunTrace& bo, const RunTrace& model, const std::string& path);

}  // namespace mabo
