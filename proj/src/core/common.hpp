#pragma once

#include <complex>
#include <cstddef>
#include <cstdlib>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

namespace specwin {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;

/// Error taxonomy shared by the whole library. The C API maps these to
/// status codes; C++ callers catch specwin::Error and inspect code().
enum class ErrorCode {
    NonHermitianInput,
    GridMismatch,
    InvalidAxis,
    EmptyInnerShell,
    StepUnderflow,
    NonFiniteState,
    ExtentTooLarge,
    SizeMismatch,
    CycleDegenerate,
    NonGridSeparation,
    NonPositiveValues,
    InsufficientPoints,
    InconsistentTables,
    EmptySeries,
    ZeroGradient,
    MissingCheckpoint,
    ConfigError,
    IoError,
    Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

/// Allocator with 64-byte alignment so FFTW plans created on one buffer can
/// be executed on any other (SIMD-aligned) buffer of the same shape.
template <typename T>
struct AlignedAlloc {
    using value_type = T;
    static constexpr std::size_t alignment = 64;

    AlignedAlloc() = default;
    template <typename U>
    AlignedAlloc(const AlignedAlloc<U>&) {}

    T* allocate(std::size_t n) {
        if (n == 0) return nullptr;
        std::size_t bytes = (n * sizeof(T) + alignment - 1) / alignment * alignment;
        void* p = std::aligned_alloc(alignment, bytes);
        if (!p) throw std::bad_alloc();
        return static_cast<T*>(p);
    }
    void deallocate(T* p, std::size_t) noexcept { std::free(p); }

    template <typename U>
    bool operator==(const AlignedAlloc<U>&) const { return true; }
};

template <typename T>
using aligned_vector = std::vector<T, AlignedAlloc<T>>;

} // namespace specwin
