#include "ozs/kernels.hpp"

#include "ozs/errors.hpp"

namespace ozs::kern {

namespace {

struct Vtable {
    double (*dot)(const double*, const double*, std::size_t);
    double (*sum)(const double*, std::size_t);
    double (*max_value)(const double*, std::size_t);
    double (*sum_sq_diff)(const double*, const double*, std::size_t);
    double (*sum_abs_diff)(const double*, const double*, std::size_t);
    Comoments (*comoments)(const double*, const double*, std::size_t);
};

constexpr Vtable kScalar{scalar::dot, scalar::sum, scalar::max_value,
                         scalar::sum_sq_diff, scalar::sum_abs_diff,
                         scalar::comoments};

#if defined(__x86_64__) || defined(_M_X64)
constexpr Vtable kAvx2{avx2::dot, avx2::sum, avx2::max_value,
                       avx2::sum_sq_diff, avx2::sum_abs_diff, avx2::comoments};
#endif
#if defined(__aarch64__)
constexpr Vtable kNeon{neon::dot, neon::sum, neon::max_value,
                       neon::sum_sq_diff, neon::sum_abs_diff, neon::comoments};
#endif

Backend detect() {
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2::supported()) return Backend::avx2;
#endif
#if defined(__aarch64__)
    if (neon::supported()) return Backend::neon;
#endif
    return Backend::scalar;
}

Backend g_backend = detect();

const Vtable& table() {
    switch (g_backend) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::avx2: return kAvx2;
#endif
#if defined(__aarch64__)
        case Backend::neon: return kNeon;
#endif
        default: return kScalar;
    }
}

void check_lengths(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw ContractError("kernel operands have mismatched lengths");
}

} // namespace

Backend active_backend() { return g_backend; }

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
        default: return "scalar";
    }
}

void force_backend(Backend b) {
    bool ok = (b == Backend::scalar);
#if defined(__x86_64__) || defined(_M_X64)
    if (b == Backend::avx2) ok = avx2::supported();
#endif
#if defined(__aarch64__)
    if (b == Backend::neon) ok = neon::supported();
#endif
    if (!ok) throw ConfigError(std::string("kernel backend unavailable: ") + backend_name(b));
    g_backend = b;
}

void reset_backend() { g_backend = detect(); }

double dot(std::span<const double> a, std::span<const double> b) {
    check_lengths(a, b);
    return table().dot(a.data(), b.data(), a.size());
}

double sum(std::span<const double> a) { return table().sum(a.data(), a.size()); }

double max_value(std::span<const double> a) {
    if (a.empty()) throw ContractError("max_value of empty span");
    return table().max_value(a.data(), a.size());
}

double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
    check_lengths(a, b);
    return table().sum_sq_diff(a.data(), b.data(), a.size());
}

double sum_abs_diff(std::span<const double> a, std::span<const double> b) {
    check_lengths(a, b);
    return table().sum_abs_diff(a.data(), b.data(), a.size());
}

Comoments comoments(std::span<const double> x, std::span<const double> y) {
    check_lengths(x, y);
    return table().comoments(x.data(), y.data(), x.size());
}

} // namespace ozs::kern
