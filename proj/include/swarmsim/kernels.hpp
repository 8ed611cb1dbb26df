#pragma once

#include <cstddef>
#include <span>

// Data-parallel inner loops shared by the similarity measures and the SOM
// trainer. A scalar reference implementation is always available; on x86-64
// an AVX2+FMA variant is selected at startup when the CPU supports it. The
// two variants agree to rounding error and are equivalence-tested; the active
// backend is recorded in artifact metadata.
namespace swarmsim::kernels {

enum class Backend { scalar, avx2 };

const char* name(Backend b);
bool is_supported(Backend b);
Backend detect_best();

// Active backend for all kernel entry points. Defaults to detect_best().
Backend active();

// Test/benchmark hook. Returns false (and leaves the backend unchanged) if
// the requested backend is not supported on this CPU.
bool set_backend(Backend b);

double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);

// w[i] += c * (x[i] - w[i])  -- the SOM prototype pull.
void blend_toward(double* w, const double* x, double c, std::size_t n);

// Index of the row of `rows` (row-major, n_rows x dim) with minimal squared
// distance to `query`. Rows are scanned in order and ties keep the first
// minimum, so the result is deterministic. Optionally reports the distance.
std::size_t argmin_squared_distance(const double* rows, std::size_t n_rows, std::size_t dim,
                                    const double* query, double* best_sq_dist = nullptr);

inline double dot(std::span<const double> a, std::span<const double> b) {
    return dot(a.data(), b.data(), a.size());
}
inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    return squared_distance(a.data(), b.data(), a.size());
}
inline void blend_toward(std::span<double> w, std::span<const double> x, double c) {
    blend_toward(w.data(), x.data(), c, w.size());
}

// Scalar reference implementations, always available. These are the ground
// truth the SIMD variants are tested against.
namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
void blend_toward(double* w, const double* x, double c, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define SWARMSIM_HAVE_AVX2_KERNELS 1
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
void blend_toward(double* w, const double* x, double c, std::size_t n);
}  // namespace avx2
#else
#define SWARMSIM_HAVE_AVX2_KERNELS 0
#endif

}  // namespace swarmsim::kernels
