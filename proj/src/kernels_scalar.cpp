#include "swarmsim/kernels.hpp"

namespace swarmsim::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void blend_toward(double* w, const double* x, double c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) w[i] += c * (x[i] - w[i]);
}

}  // namespace swarmsim::kernels::scalar
