#include "anita/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>

namespace anita::kernels {

#if !(defined(__x86_64__) || defined(_M_X64))
const Ops* avx2_ops() { return nullptr; }
#endif

namespace {

const Ops* best_supported() {
  if (const Ops* v = avx2_ops()) return v;
  return &scalar_ops();
}

const Ops* initial_selection() {
  if (const char* env = std::getenv("ANITA_KERNELS")) {
    std::string_view name(env);
    if (name == "scalar") return &scalar_ops();
    if (name == "avx2" && avx2_ops()) return avx2_ops();
  }
  return best_supported();
}

std::atomic<const Ops*>& current() {
  static std::atomic<const Ops*> ops{initial_selection()};
  return ops;
}

}  // namespace

const Ops& active() { return *current().load(std::memory_order_relaxed); }

bool select(std::string_view name) {
  const Ops* next = nullptr;
  if (name == "scalar") next = &scalar_ops();
  else if (name == "avx2") next = avx2_ops();
  else if (name == "auto") next = best_supported();
  if (!next) return false;
  current().store(next, std::memory_order_relaxed);
  return true;
}

bool all_finite(std::span<const double> x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace anita::kernels
