#pragma once

#include <nlohmann/json.hpp>

#include "cchaos/chaos.hpp"

namespace cchaos {

/// {"constant_re","constant_im","terms":[{"p","q","kernel":<Kernel JSON>}]}
nlohmann::json chaos_to_json(const ChaosVariable& F);

/// Accepts the ChaosVariable format, or a bare Kernel object which is read
/// as the single term I_{p,q}(f). Non-symmetric kernels are symmetrized.
ChaosVariable chaos_from_json(const nlohmann::json& j);

/// {"components": [ChaosVariable or Kernel JSON, ...]}
nlohmann::json vector_to_json(const ChaosVector& F);
ChaosVector vector_from_json(const nlohmann::json& j);

}  // namespace cchaos
