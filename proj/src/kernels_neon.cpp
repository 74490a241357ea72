// NEON kernel variants for aarch64. float64x2 lanes, scalar tail.

#if defined(__aarch64__)

#include "ozs/kernels.hpp"

#include <arm_neon.h>
#include <cmath>

namespace ozs::kern::neon {

bool supported() {
    return true; // NEON is mandatory on aarch64
}

double dot(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
    double r = vaddvq_f64(acc);
    for (; i < n; ++i) r += a[i] * b[i];
    return r;
}

double sum(const double* a, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(a + i));
    double r = vaddvq_f64(acc);
    for (; i < n; ++i) r += a[i];
    return r;
}

double max_value(const double* a, std::size_t n) {
    std::size_t i = 0;
    double m;
    if (n >= 2) {
        float64x2_t acc = vld1q_f64(a);
        for (i = 2; i + 2 <= n; i += 2) acc = vmaxq_f64(acc, vld1q_f64(a + i));
        m = vmaxvq_f64(acc);
    } else {
        m = a[0];
        i = 1;
    }
    for (; i < n; ++i) m = std::max(m, a[i]);
    return m;
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        acc = vfmaq_f64(acc, d, d);
    }
    double r = vaddvq_f64(acc);
    for (; i < n; ++i) {
        double d = a[i] - b[i];
        r += d * d;
    }
    return r;
}

double sum_abs_diff(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = vaddq_f64(acc, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    }
    double r = vaddvq_f64(acc);
    for (; i < n; ++i) r += std::fabs(a[i] - b[i]);
    return r;
}

Comoments comoments(const double* x, const double* y, std::size_t n) {
    float64x2_t sx = vdupq_n_f64(0.0), sy = vdupq_n_f64(0.0);
    float64x2_t sxx = vdupq_n_f64(0.0), syy = vdupq_n_f64(0.0), sxy = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t vx = vld1q_f64(x + i);
        float64x2_t vy = vld1q_f64(y + i);
        sx = vaddq_f64(sx, vx);
        sy = vaddq_f64(sy, vy);
        sxx = vfmaq_f64(sxx, vx, vx);
        syy = vfmaq_f64(syy, vy, vy);
        sxy = vfmaq_f64(sxy, vx, vy);
    }
    Comoments m;
    m.sx = vaddvq_f64(sx);
    m.sy = vaddvq_f64(sy);
    m.sxx = vaddvq_f64(sxx);
    m.syy = vaddvq_f64(syy);
    m.sxy = vaddvq_f64(sxy);
    for (; i < n; ++i) {
        m.sx += x[i];
        m.sy += y[i];
        m.sxx += x[i] * x[i];
        m.syy += y[i] * y[i];
        m.sxy += x[i] * y[i];
    }
    return m;
}

} // namespace ozs::kern::neon

#endif // aarch64
