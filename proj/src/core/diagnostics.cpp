#include "diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace specwin {

namespace {

double pow_int(double x, int n) {
    double p = 1.0;
    for (int i = 0; i < n; ++i) p *= x;
    return p;
}

int separation_cells(double r, double h, int n) {
    double m = r / h;
    int mi = static_cast<int>(std::lround(m));
    if (std::abs(m - mi) > 1e-9 * n || mi < 0)
        fail(ErrorCode::NonGridSeparation, "separation is not a grid multiple");
    return mi;
}

struct LineFit {
    double slope, intercept, slope_stderr;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t m = x.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    double slope = sxy / sxx;
    double intercept = my - slope * mx;
    double ssr = 0;
    for (std::size_t i = 0; i < m; ++i) {
        double e = y[i] - (intercept + slope * x[i]);
        ssr += e * e;
    }
    double var = m > 2 ? ssr / static_cast<double>(m - 2) : 0.0;
    return {slope, intercept, std::sqrt(var / sxx)};
}

} // namespace

const char* sf_flavor_name(SfFlavor f) {
    switch (f) {
    case SfFlavor::ScalarAxis: return "scalar";
    case SfFlavor::Longitudinal: return "longitudinal";
    case SfFlavor::Transverse: return "transverse";
    }
    return "unknown";
}

// ============================================================================
// Structure functions
// ============================================================================

StructureFunctionTable structure_function_1d(const PhysicalField& f, int order,
                                             const std::vector<double>& r_values) {
    const Grid& g = f.grid();
    const int n = g.n;
    const double h = g.spacing();

    StructureFunctionTable t;
    t.order = order;
    t.flavor = SfFlavor::ScalarAxis;
    t.r = r_values;
    t.values.resize(r_values.size());
    t.variance.assign(r_values.size(), 0.0);

    auto u = f.component(0);
    for (std::size_t q = 0; q < r_values.size(); ++q) {
        int m = separation_cells(r_values[q], h, n);
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += pow_int(u[(j + m) % n] - u[j], order);
        t.values[q] = acc / n;
    }
    return t;
}

StructureFunctionTable structure_function_3d_axis(const PhysicalField& f, int order,
                                                  const std::vector<double>& r_values,
                                                  SfFlavor flavor, int axis) {
    const Grid& g = f.grid();
    if (g.dim != 3 || f.ncomp() != 3)
        fail(ErrorCode::GridMismatch, "3D structure functions need a 3-component 3D field");
    if (axis < 1 || axis > 3) fail(ErrorCode::InvalidAxis, "axis out of range");
    const int n = g.n;
    const double h = g.spacing();

    std::vector<int> comps;
    switch (flavor) {
    case SfFlavor::ScalarAxis: comps = {0, 1, 2}; break;
    case SfFlavor::Longitudinal: comps = {axis - 1}; break;
    case SfFlavor::Transverse:
        for (int c = 0; c < 3; ++c)
            if (c != axis - 1) comps.push_back(c);
        break;
    }

    StructureFunctionTable t;
    t.order = order;
    t.flavor = flavor;
    t.r = r_values;
    t.values.resize(r_values.size());
    t.variance.assign(r_values.size(), 0.0);

    const std::int64_t npts = g.points();
    for (std::size_t q = 0; q < r_values.size(); ++q) {
        int m = separation_cells(r_values[q], h, n);
        double acc = 0.0;
        for (int c : comps) {
            auto u = f.component(c);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) {
                        int is = i, js = j, ks = k;
                        if (axis == 1)
                            is = (i + m) % n;
                        else if (axis == 2)
                            js = (j + m) % n;
                        else
                            ks = (k + m) % n;
                        double d = u[(std::int64_t(is) * n + js) * n + ks] -
                                   u[(std::int64_t(i) * n + j) * n + k];
                        acc += pow_int(d, order);
                    }
        }
        t.values[q] = acc / (static_cast<double>(npts) * comps.size());
    }
    return t;
}

StructureFunctionTable structure_function_3d(const PhysicalField& f, int order,
                                             const std::vector<double>& r_values,
                                             SfFlavor flavor) {
    StructureFunctionTable out;
    for (int axis = 1; axis <= 3; ++axis) {
        StructureFunctionTable t = structure_function_3d_axis(f, order, r_values, flavor, axis);
        if (axis == 1) {
            out = std::move(t);
        } else {
            for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += t.values[i];
        }
    }
    for (double& v : out.values) v /= 3.0;
    return out;
}

StructureFunctionTable translate_to_original_scale(const StructureFunctionTable& t, int cycle,
                                                   double alpha) {
    StructureFunctionTable out = t;
    const double factor = std::pow(alpha, -cycle);
    for (double& r : out.r) r *= factor;
    out.original_frame = true;
    out.cycle = cycle;
    return out;
}

StructureFunctionTable average_over_cycles(const std::vector<StructureFunctionTable>& tables,
                                           bool exclude_cycle0) {
    std::vector<const StructureFunctionTable*> included;
    for (const auto& t : tables) {
        if (exclude_cycle0 && t.cycle == 0) continue;
        included.push_back(&t);
    }
    if (included.empty()) fail(ErrorCode::InconsistentTables, "no tables to average");

    const StructureFunctionTable& first = *included.front();
    for (const auto* t : included) {
        if (t->order != first.order || t->flavor != first.flavor ||
            t->original_frame != first.original_frame || t->r.size() != first.r.size())
            fail(ErrorCode::InconsistentTables, "tables disagree in order, flavor or frame");
        for (std::size_t i = 0; i < t->r.size(); ++i)
            if (std::abs(t->r[i] - first.r[i]) > 1e-12)
                fail(ErrorCode::InconsistentTables, "tables disagree on the separation grid");
    }

    StructureFunctionTable out;
    out.order = first.order;
    out.flavor = first.flavor;
    out.r = first.r;
    out.cycle = -1;
    out.original_frame = first.original_frame;
    const std::size_t np = first.r.size();
    const std::size_t m = included.size();
    out.values.assign(np, 0.0);
    out.variance.assign(np, 0.0);
    for (const auto* t : included)
        for (std::size_t i = 0; i < np; ++i) out.values[i] += t->values[i];
    for (double& v : out.values) v /= static_cast<double>(m);
    if (m > 1) {
        for (const auto* t : included)
            for (std::size_t i = 0; i < np; ++i) {
                double d = t->values[i] - out.values[i];
                out.variance[i] += d * d;
            }
        for (double& v : out.variance) v /= static_cast<double>(m - 1);
    }
    return out;
}

// ============================================================================
// Fits
// ============================================================================

FitResult fit_power_law(const StructureFunctionTable& t, double r_min, double r_max) {
    std::vector<double> xs, ys;
    double value_sum = 0.0;
    for (std::size_t i = 0; i < t.r.size(); ++i) {
        if (t.r[i] < r_min || t.r[i] > r_max || t.r[i] <= 0.0) continue;
        double v = t.values[i];
        if (t.order % 2 == 0) {
            if (v <= 0.0) fail(ErrorCode::NonPositiveValues, "even-order values must be positive");
        } else {
            if (v == 0.0) fail(ErrorCode::NonPositiveValues, "zero value in fit range");
            value_sum += v;
            v = std::abs(v);
        }
        xs.push_back(std::log(t.r[i]));
        ys.push_back(std::log(v));
    }
    if (xs.size() < 5) fail(ErrorCode::InsufficientPoints, "fit needs at least 5 points");

    LineFit lf = fit_line(xs, ys);
    FitResult fr;
    fr.slope = lf.slope;
    fr.intercept = lf.intercept;
    fr.slope_stderr = lf.slope_stderr;
    fr.r_min = r_min;
    fr.r_max = r_max;
    fr.points = static_cast<int>(xs.size());
    fr.sign = (t.order % 2 == 1 && value_sum < 0) ? -1 : 1;
    return fr;
}

std::pair<double, double> detect_core_range(const StructureFunctionTable& t) {
    // cycle-averaged tables are only trustworthy at small separations, so
    // candidates are capped at half the reduced box
    std::vector<double> xs, rs;
    for (std::size_t i = 0; i < t.r.size(); ++i) {
        if (t.r[i] <= 0.0 || t.r[i] > pi / 2 || t.values[i] == 0.0) continue;
        xs.push_back(std::log(std::abs(t.values[i])));
        rs.push_back(t.r[i]);
    }
    const std::size_t n = xs.size();
    if (n < 6) {
        return {rs.empty() ? 0.0 : rs.front(), rs.empty() ? 0.0 : rs.back()};
    }

    std::vector<double> slope(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        slope[i] = (xs[i + 1] - xs[i]) / (std::log(rs[i + 1]) - std::log(rs[i]));

    // Qualifying windows keep every local slope within 20% of the window
    // median; the widest window in log extent wins.
    double best_extent = -1.0;
    std::size_t best_lo = 0, best_hi = n - 1;
    std::vector<double> sorted;
    for (std::size_t lo = 0; lo + 4 < n; ++lo) {
        sorted.clear();
        for (std::size_t hi = lo + 1; hi < n; ++hi) {
            double s_new = slope[hi - 1];
            sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), s_new), s_new);
            if (hi < lo + 4) continue;
            double med = sorted[sorted.size() / 2];
            if (med == 0.0) continue;
            bool ok = true;
            for (std::size_t k = lo; k < hi; ++k)
                if (std::abs(slope[k] - med) > 0.2 * std::abs(med)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            double extent = std::log(rs[hi]) - std::log(rs[lo]);
            if (extent > best_extent) {
                best_extent = extent;
                best_lo = lo;
                best_hi = hi;
            }
        }
    }
    if (best_extent < 0) return {rs.front(), rs.back()};
    return {rs[best_lo], rs[best_hi]};
}

// ============================================================================
// Blow-up diagnostics
// ============================================================================

double bkm_integral(const std::vector<double>& t_orig, const std::vector<double>& vort_orig) {
    if (t_orig.empty() || t_orig.size() != vort_orig.size())
        fail(ErrorCode::EmptySeries, "need a non-empty, matching series");
    double acc = 0.0;
    for (std::size_t i = 1; i < t_orig.size(); ++i)
        acc += 0.5 * (vort_orig[i] + vort_orig[i - 1]) * (t_orig[i] - t_orig[i - 1]);
    return acc;
}

BlowupFit fit_blowup_exponent(const std::vector<double>& t_orig,
                              const std::vector<double>& vort_orig, double T_est,
                              int tail_count) {
    if (t_orig.size() != vort_orig.size()) fail(ErrorCode::EmptySeries, "series sizes disagree");
    if (tail_count < 2 || static_cast<std::size_t>(tail_count) > t_orig.size())
        fail(ErrorCode::InsufficientPoints, "tail_count outside the series length");

    std::vector<double> xs, ys;
    xs.reserve(tail_count);
    std::size_t start = t_orig.size() - static_cast<std::size_t>(tail_count);
    for (std::size_t i = start; i < t_orig.size(); ++i) {
        double gap = T_est - t_orig[i];
        if (gap <= 0.0) fail(ErrorCode::InsufficientPoints, "sample time not below T_est");
        if (vort_orig[i] <= 0.0) fail(ErrorCode::NonPositiveValues, "vorticity must be positive");
        xs.push_back(-std::log(gap));
        ys.push_back(std::log(vort_orig[i]));
    }
    if (xs.size() < 2) fail(ErrorCode::InsufficientPoints, "need at least 2 tail samples");

    LineFit lf = fit_line(xs, ys);
    BlowupFit bf;
    bf.T_est = T_est;
    bf.zeta = lf.slope;
    bf.zeta_stderr = lf.slope_stderr;
    bf.intercept = lf.intercept;
    bf.points_used = static_cast<int>(xs.size());
    return bf;
}

void original_frame_series(const CycleLedger& ledger,
                           const std::vector<std::vector<DiagnosticsSample>>& samples_per_cycle,
                           const RescaleParams& params, std::vector<double>& t_out,
                           std::vector<double>& w_out) {
    t_out.clear();
    w_out.clear();
    double t_base = 0.0;
    double beta_pow = 1.0, amp_pow = 1.0;
    for (std::size_t i = 0; i < samples_per_cycle.size(); ++i) {
        for (const DiagnosticsSample& d : samples_per_cycle[i]) {
            t_out.push_back(t_base + d.t_local / beta_pow);
            w_out.push_back(amp_pow * d.max_vort_component);
        }
        if (i < ledger.entries().size()) t_base = ledger.entries()[i].accumulated_original;
        beta_pow *= params.beta;
        amp_pow *= params.alpha / params.gamma;
    }
}

} // namespace specwin
