#include "grassmatch/kernels.hpp"

#include <atomic>

namespace grassmatch::kernels {

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {
std::atomic<const Table*> g_active{nullptr};

const Table* pick_default() {
    return avx2_available() ? &avx2() : &scalar();
}
} // namespace

const Table& active() {
    const Table* t = g_active.load(std::memory_order_acquire);
    if (t == nullptr) {
        t = pick_default();
        g_active.store(t, std::memory_order_release);
    }
    return *t;
}

void set_active(const Table& t) {
    g_active.store(&t, std::memory_order_release);
}

} // namespace grassmatch::kernels
