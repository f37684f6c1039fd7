#include <cmath>
#include <string>

#include "coordcycle/fields.hpp"
#include "coordcycle/game.hpp"

namespace coordcycle {

void validate(const ModelParams &p) {
  if (!(p.k > 0.0 && p.k < 1.0)) {
    throw ConfigError("k must lie in (0, 1)");
  }
  if (!(p.x_hat > 0.0 && p.x_hat < std::min(p.k, 1.0 - p.k))) {
    throw ConfigError("x_hat must lie in (0, min(k, 1 - k))");
  }
  if (!(p.r >= 0.0) || !std::isfinite(p.r)) {
    throw ConfigError("r must be finite and non-negative");
  }
  if (!(p.eta > 0.0) || !std::isfinite(p.eta)) {
    throw ConfigError("eta must be positive");
  }
  if (!(p.s > 0.0) || !std::isfinite(p.s)) {
    throw ConfigError("s must be positive");
  }
}

std::string to_string(DynamicKind kind) {
  switch (kind) {
    case DynamicKind::BestResponse:
      return "best_response";
    case DynamicKind::Logit:
      return "logit";
    case DynamicKind::Replicator:
      return "replicator";
  }
  return "unknown";
}

DynamicKind parse_dynamic_kind(std::string_view name) {
  if (name == "best_response") return DynamicKind::BestResponse;
  if (name == "logit") return DynamicKind::Logit;
  if (name == "replicator") return DynamicKind::Replicator;
  throw ConfigError("unknown dynamic '" + std::string(name) +
                    "' (expected best_response, logit or replicator)");
}

}  // namespace coordcycle
