#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace specwin {

namespace {

// FFTW_ESTIMATE keeps plan selection independent of timing noise, so repeated
// runs produce bitwise-identical sequences of floating point operations.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int dim, int n, bool forward) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_tuple(dim, n, forward);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::size_t total = 1;
        for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(n);
        scratch_in_.emplace_back(total);
        scratch_out_.emplace_back(total);
        auto* in = reinterpret_cast<fftw_complex*>(scratch_in_.back().data());
        auto* out = reinterpret_cast<fftw_complex*>(scratch_out_.back().data());

        fftw_plan plan = nullptr;
        int sign = forward ? FFTW_FORWARD : FFTW_BACKWARD;
        if (dim == 1) {
            plan = fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE);
        } else {
            plan = fftw_plan_dft_3d(n, n, n, in, out, sign, FFTW_ESTIMATE);
        }
        if (!plan) fail(ErrorCode::Internal, "fftw plan creation failed");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    PlanCache() = default;
    std::mutex mutex_;
    std::map<std::tuple<int, int, bool>, fftw_plan> plans_;
    // Keep the buffers the plans were built on alive for the process lifetime.
    std::vector<aligned_vector<cplx>> scratch_in_;
    std::vector<aligned_vector<cplx>> scratch_out_;
};

} // namespace

void fft_exec(int dim, int n, const cplx* in, cplx* out, bool forward) {
    fftw_plan plan = PlanCache::instance().get(dim, n, forward);
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

SpectralField forward_transform(const PhysicalField& f) {
    const Grid& g = f.grid();
    SpectralField out(g, f.ncomp());
    const double scale = 1.0 / static_cast<double>(g.points());

    aligned_vector<cplx> in(static_cast<std::size_t>(g.points()));
    for (int c = 0; c < f.ncomp(); ++c) {
        auto fv = f.component(c);
        for (std::size_t i = 0; i < in.size(); ++i) in[i] = cplx(fv[i], 0.0);
        auto ov = out.component(c);
        fft_exec(g.dim, g.n, in.data(), ov.data(), true);
        for (cplx& v : ov) v *= scale;
    }
    return out;
}

PhysicalField inverse_transform_unchecked(const SpectralField& s) {
    const Grid& g = s.grid();
    PhysicalField out(g, s.ncomp());

    aligned_vector<cplx> tmp(static_cast<std::size_t>(g.points()));
    for (int c = 0; c < s.ncomp(); ++c) {
        auto sv = s.component(c);
        fft_exec(g.dim, g.n, sv.data(), tmp.data(), false);
        auto ov = out.component(c);
        for (std::size_t i = 0; i < tmp.size(); ++i) ov[i] = tmp[i].real();
    }
    return out;
}

PhysicalField inverse_transform(const SpectralField& s) {
    if (s.hermitian_defect() > 1e-10)
        fail(ErrorCode::NonHermitianInput, "coefficients are not conjugate-symmetric");
    return inverse_transform_unchecked(s);
}

SpectralField spectral_derivative(const SpectralField& s, int axis) {
    const Grid& g = s.grid();
    if (axis < 1 || axis > g.dim) fail(ErrorCode::InvalidAxis, "axis out of range");

    SpectralField out(g, s.ncomp());
    const int n = g.n;
    if (g.dim == 1) {
        for (int c = 0; c < s.ncomp(); ++c)
            for (int i = 0; i < n; ++i) {
                int k = wavenumber(i, n);
                out.at(c, i) = (i == n / 2) ? cplx(0.0) : cplx(0.0, k) * s.at(c, i);
            }
    } else {
        for (int c = 0; c < s.ncomp(); ++c)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) {
                        int idx = axis == 1 ? i : (axis == 2 ? j : k);
                        if (idx == n / 2) {
                            out.at(c, i, j, k) = 0.0;
                        } else {
                            int kw = wavenumber(idx, n);
                            out.at(c, i, j, k) = cplx(0.0, kw) * s.at(c, i, j, k);
                        }
                    }
    }
    return out;
}

} // namespace specwin
