#include "lattice/kernels.hpp"

#include <cstdlib>

namespace lattice {
namespace {

const KernelTable* g_active = nullptr;

const KernelTable* pick_default() {
  if (const char* env = std::getenv("LATTICE_KERNELS")) {
    const std::string want(env);
    if (want == "scalar") return &scalar_kernels();
    if (want == "avx2" && avx2_kernels()) return avx2_kernels();
  }
  if (const KernelTable* v = avx2_kernels()) return v;
  return &scalar_kernels();
}

}  // namespace

const KernelTable& kernels() {
  if (!g_active) g_active = pick_default();
  return *g_active;
}

bool set_kernel_variant(const std::string& name) {
  if (name == "scalar") {
    g_active = &scalar_kernels();
    return true;
  }
  if (name == "avx2") {
    if (const KernelTable* v = avx2_kernels()) {
      g_active = v;
      return true;
    }
    return false;
  }
  if (name == "auto" || name.empty()) {
    g_active = pick_default();
    return true;
  }
  return false;
}

}  // namespace lattice
