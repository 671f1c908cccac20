#include <atomic>

#include "tubersg/kernels.hpp"

namespace tubersg::kernels {

#if defined(TUBERSG_HAVE_AVX2_BUILD)
const Ops* avx2_ops_table() noexcept;  // defined in kernels_avx2.cpp
#endif

namespace {

bool cpu_has_avx2() noexcept {
#if defined(TUBERSG_HAVE_AVX2_BUILD) && (defined(__x86_64__) || defined(__i386__))
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

struct Selection {
    const Ops* ops;
    Backend backend;
};

std::atomic<const Ops*> g_active_ops{nullptr};
std::atomic<Backend> g_active_backend{Backend::Auto};

Selection pick(Backend backend) noexcept {
    switch (backend) {
        case Backend::Scalar:
            return {&scalar_ops(), Backend::Scalar};
        case Backend::Avx2:
            if (const Ops* avx2 = avx2_ops_or_null()) {
                return {avx2, Backend::Avx2};
            }
            return {nullptr, Backend::Avx2};
        case Backend::Auto:
        default:
            if (const Ops* avx2 = avx2_ops_or_null()) {
                return {avx2, Backend::Avx2};
            }
            return {&scalar_ops(), Backend::Scalar};
    }
}

void ensure_initialized() noexcept {
    if (g_active_ops.load(std::memory_order_acquire) == nullptr) {
        const Selection sel = pick(Backend::Auto);
        g_active_ops.store(sel.ops, std::memory_order_release);
        g_active_backend.store(sel.backend, std::memory_order_release);
    }
}

}  // namespace

bool avx2_available() noexcept { return avx2_ops_or_null() != nullptr; }

const Ops* avx2_ops_or_null() noexcept {
#if defined(TUBERSG_HAVE_AVX2_BUILD)
    return cpu_has_avx2() ? avx2_ops_table() : nullptr;
#else
    return nullptr;
#endif
}

const Ops& active() noexcept {
    ensure_initialized();
    return *g_active_ops.load(std::memory_order_acquire);
}

Backend active_backend() noexcept {
    ensure_initialized();
    return g_active_backend.load(std::memory_order_acquire);
}

bool set_backend(Backend backend) noexcept {
    const Selection sel = pick(backend);
    if (sel.ops == nullptr) {
        return false;
    }
    g_active_ops.store(sel.ops, std::memory_order_release);
    g_active_backend.store(sel.backend, std::memory_order_release);
    return true;
}

}  // namespace tubersg::kernels
