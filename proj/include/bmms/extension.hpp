#pragma once

#include <vector>

#include "bmms/besov.hpp"
#include "bmms/trace.hpp"
#include "bmms/whitney.hpp"

// Whitney-type extension of boundary data into the interior: each cover ball
// receives the nu-mean of f over its boundary shadow, and the extension blends
// the coefficients with the cover's partition of unity.  Values are convex
// combinations of shadow means, so the extension preserves constants and the
// convex hull of f.

namespace bmms {

struct ExtensionResult {
  WhitneyCover cover;
  std::vector<double> coefficients;  // nu-mean of f over each ball's shadow
  std::vector<double> values;        // per atom id; boundary atoms keep f
};

// Interior values of the homogeneous extension; f is indexed by atom id with
// meaningful entries on the boundary.
ExtensionResult whitney_extension(const Domain& dom,
                                  const std::vector<double>& f);

// Multiplies the extension by the boundary-distance cutoff
// clamp(2 - dist(x, boundary), 0, 1): identical near the boundary, zero where
// the boundary is farther than 2.
std::vector<double> cutoff_extension(const Domain& dom,
                                     const ExtensionResult& ext);

struct RoundtripReport {
  std::vector<double> traced;      // T(Ext f) on the boundary list
  std::vector<double> deviations;  // |traced - f| per boundary atom
  double max_deviation = 0;
  double lp_deviation = 0;         // L^p(nu) norm of traced - f
  TraceResult trace_detail;
};

// Extends f, traces the extension back at the default scales, and compares
// with f on the boundary.
RoundtripReport roundtrip_check(const Domain& dom, const std::vector<double>& f,
                                const BesovParams& params);

struct OperatorNormRow {
  std::string quantity;  // which ratio
  int function_index = 0;
  double numerator = 0;
  double denominator = 0;
  double ratio = 0;      // 0 when the denominator vanishes (skipped)
  bool skipped = false;
};

struct OperatorNormReport {
  std::vector<OperatorNormRow> rows;
  double trace_energy_ratio_max = 0;      // smoothness alpha - theta/p on the boundary
  double extension_energy_ratio_max = 0;  // smoothness alpha + theta/p inside
  double trace_lp_ratio_max = 0;          // ||Tu||_p vs ||u||_p + energy
  double extension_lp_ratio_max = 0;      // ||Ext f||_p vs ||f||_p
};

// Empirical operator norms: for interior test functions u, the boundary
// energy of Tu at smoothness alpha - theta/p against the interior energy of u
// at alpha, and the boundary L^p norm of Tu against ||u||_p plus energy; for
// boundary test functions f, the interior energy of the extension at
// alpha + theta/p against the boundary energy at alpha, and the L^p ratio.
// Constant functions have zero energy and are reported as skipped.
OperatorNormReport operator_norm_report(
    const Domain& dom, const BesovParams& params,
    const std::vector<std::vector<double>>& interior_functions,
    const std::vector<std::vector<double>>& boundary_functions);

}  // namespace bmms
