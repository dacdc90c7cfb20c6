#pragma once

#include "cascade.hpp"

#include <string>
#include <vector>

namespace specwin {

enum class SfFlavor { ScalarAxis, Longitudinal, Transverse };

const char* sf_flavor_name(SfFlavor f);

/// S_n(r) sampled on grid-aligned separations; per cycle or cycle-averaged.
struct StructureFunctionTable {
    int order = 2;
    SfFlavor flavor = SfFlavor::ScalarAxis;
    std::vector<double> r;
    std::vector<double> values;
    std::vector<double> variance; // across-cycle sample variance, 0 per cycle
    int cycle = -1;               // -1 = averaged
    bool original_frame = false;
};

/// S_n(r) = (1/N) sum_j (u(x_j + r) - u(x_j))^n; r must be grid multiples.
StructureFunctionTable structure_function_1d(const PhysicalField& f, int order,
                                             const std::vector<double>& r_values);

/// Separations along one axis; longitudinal differences the component
/// parallel to the axis, transverse averages the two perpendicular ones,
/// scalar-axis averages all three.
StructureFunctionTable structure_function_3d_axis(const PhysicalField& f, int order,
                                                  const std::vector<double>& r_values,
                                                  SfFlavor flavor, int axis);

/// Axis-aligned separations averaged over the three axes.
StructureFunctionTable structure_function_3d(const PhysicalField& f, int order,
                                             const std::vector<double>& r_values, SfFlavor flavor);

/// r_orig = r_local / alpha^cycle; values are frame-invariant since the
/// velocity scale gamma is 1.
StructureFunctionTable translate_to_original_scale(const StructureFunctionTable& t, int cycle,
                                                   double alpha = 4.0 / 3.0);

/// Pointwise mean over cycles on a common local-frame separation grid.
StructureFunctionTable average_over_cycles(const std::vector<StructureFunctionTable>& tables,
                                           bool exclude_cycle0);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;     // in log S
    double slope_stderr = 0.0;
    double r_min = 0.0, r_max = 0.0;
    int points = 0;
    int sign = 1;               // sign of the fitted values (odd orders can be negative)
};

/// Ordinary least squares of log|S_n| vs log r over [r_min, r_max].
FitResult fit_power_law(const StructureFunctionTable& t, double r_min, double r_max);

/// Widest separation window (>= 5 points) where the local log-log slope
/// stays within 20% of its window median. Falls back to the full positive
/// range when no window qualifies.
std::pair<double, double> detect_core_range(const StructureFunctionTable& t);

/// Trapezoid rule over an original-frame series of the vorticity sup norm.
double bkm_integral(const std::vector<double>& t_orig, const std::vector<double>& vort_orig);

struct BlowupFit {
    double T_est = 0.0;
    double zeta = 0.0;
    double zeta_stderr = 0.0;
    double intercept = 0.0;
    int points_used = 0;
};

/// OLS slope of log w against -log(T_est - t) over the last tail_count
/// samples; T_est is supplied externally (ledger sum), never re-estimated.
BlowupFit fit_blowup_exponent(const std::vector<double>& t_orig,
                              const std::vector<double>& vort_orig, double T_est, int tail_count);

/// Flatten per-cycle diagnostics into original-frame time and vorticity
/// series: t = prior accumulated time + t_local/beta^i, w = (alpha/gamma)^i
/// times the local component maximum.
void original_frame_series(const CycleLedger& ledger,
                           const std::vector<std::vector<DiagnosticsSample>>& samples_per_cycle,
                           const RescaleParams& params, std::vector<double>& t_out,
                           std::vector<double>& w_out);

} // namespace specwin
