#include "critnls/kernels.hpp"

#include <cstdlib>

#include "critnls/errors.hpp"

namespace critnls::kernels {

const Ops* avx2OpsOrNull();  // kernels_avx2.cpp
const Ops* neonOpsOrNull();  // kernels_neon.cpp

std::vector<std::string> availableNames() {
  std::vector<std::string> names = {"scalar"};
  if (avx2OpsOrNull()) names.push_back("avx2");
  if (neonOpsOrNull()) names.push_back("neon");
  return names;
}

const Ops* opsByName(const std::string& name) {
  if (name == "scalar") return &scalarOps();
  if (name == "avx2") return avx2OpsOrNull();
  if (name == "neon") return neonOpsOrNull();
  return nullptr;
}

const Ops& active() {
  static const Ops* chosen = [] {
    if (const char* env = std::getenv("CRITNLS_KERNELS")) {
      const Ops* ops = opsByName(env);
      if (!ops) {
        throw Error(std::string("CRITNLS_KERNELS requests unavailable "
                                "kernel variant '") +
                    env + "'");
      }
      return ops;
    }
    if (const Ops* ops = avx2OpsOrNull()) return ops;
    if (const Ops* ops = neonOpsOrNull()) return ops;
    return &scalarOps();
  }();
  return *chosen;
}

}  // namespace critnls::kernels
