#include <cstdlib>
#include <string_view>

#include "sgate/kernels.hpp"

namespace sgate::kernels {

#if defined(SGATE_HAVE_AVX2_KERNELS)
const KernelTable& avx2_table_impl();
#endif

const KernelTable* avx2_table() {
#if defined(SGATE_HAVE_AVX2_KERNELS)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return supported ? &avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable* table = [] {
    const char* forced = std::getenv("SPECTRAL_GATE_ISA");
    if (forced != nullptr && std::string_view(forced) == "scalar") return &scalar_table();
    const KernelTable* fast = avx2_table();
    return fast != nullptr ? fast : &scalar_table();
  }();
  return *table;
}

const char* to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace sgate::kernels
