#include "swarmsim/kernels.hpp"

#include <atomic>

namespace swarmsim::kernels {

namespace {

struct Table {
    double (*dot)(const double*, const double*, std::size_t);
    double (*squared_distance)(const double*, const double*, std::size_t);
    void (*blend_toward)(double*, const double*, double, std::size_t);
};

constexpr Table kScalarTable{scalar::dot, scalar::squared_distance, scalar::blend_toward};
#if SWARMSIM_HAVE_AVX2_KERNELS
constexpr Table kAvx2Table{avx2::dot, avx2::squared_distance, avx2::blend_toward};
#endif

const Table& table_for(Backend b) {
#if SWARMSIM_HAVE_AVX2_KERNELS
    if (b == Backend::avx2) return kAvx2Table;
#endif
    (void)b;
    return kScalarTable;
}

std::atomic<Backend> g_backend{detect_best()};

}  // namespace

const char* name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool is_supported(Backend b) {
    if (b == Backend::scalar) return true;
#if SWARMSIM_HAVE_AVX2_KERNELS
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend detect_best() {
    return is_supported(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

Backend active() { return g_backend.load(std::memory_order_relaxed); }

bool set_backend(Backend b) {
    if (!is_supported(b)) return false;
    g_backend.store(b, std::memory_order_relaxed);
    return true;
}

double dot(const double* a, const double* b, std::size_t n) {
    return table_for(active()).dot(a, b, n);
}

double squared_distance(const double* a, const double* b, std::size_t n) {
    return table_for(active()).squared_distance(a, b, n);
}

void blend_toward(double* w, const double* x, double c, std::size_t n) {
    table_for(active()).blend_toward(w, x, c, n);
}

std::size_t argmin_squared_distance(const double* rows, std::size_t n_rows, std::size_t dim,
                                    const double* query, double* best_sq_dist) {
    const auto& t = table_for(active());
    std::size_t best = 0;
    double best_d = t.squared_distance(rows, query, dim);
    for (std::size_t r = 1; r < n_rows; ++r) {
        double d = t.squared_distance(rows + r * dim, query, dim);
        if (d < best_d) {
            best_d = d;
            best = r;
        }
    }
    if (best_sq_dist) *best_sq_dist = best_d;
    return best;
}

}  // namespace swarmsim::kernels
