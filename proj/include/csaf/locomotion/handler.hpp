#pragma once

#include "csaf/locomotion/types.hpp"

#include <string>
#include <vector>

namespace csaf::locomotion {

/// A provider entry as authored in a plan or preset list, before validation.
struct ProviderCandidate {
    std::string type; ///< registry type identifier, e.g. "ContinuousMoveProvider"
    ProviderParams params;
    std::vector<Action> left_actions;
    std::vector<Action> right_actions;
};

struct HandlerConfig {
    ProviderSet set;
    std::vector<std::string> diagnostics; ///< one line per dropped entry
};

/// Why a candidate cannot be used on `side`, or nullopt when it conforms.
std::optional<std::string> conformance_error(const ProviderCandidate& candidate, Side side);

/// Rebuilds the provider set from scratch: clears whatever was active, drops entries that do not
/// satisfy the custom-provider contract (with a diagnostic), instantiates the rest and enables each
/// one's actions for the side whose list holds it.
HandlerConfig configure_handler(const std::vector<ProviderCandidate>& left, const std::vector<ProviderCandidate>& right,
                                TeleportSurfaces surfaces = {});

} // namespace csaf::locomotion
