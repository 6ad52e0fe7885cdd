#pragma once

#include "csaf/registry/registry.hpp"

namespace csaf::registry {

/// Identifiers of the feature types shipped with the engine.
namespace builtin {
inline constexpr const char* kGameHandler = "GameHandler";
inline constexpr const char* kDataSaver = "DataSaver";
inline constexpr const char* kFmsQuestionnaire = "FmsQuestionnaire";
inline constexpr const char* kSensitivityTest = "PersonalSensitivityTest";
inline constexpr const char* kRodAndFrameTest = "RodAndFrameTest";
inline constexpr const char* kCamera = "Camera";
inline constexpr const char* kCameraRotator = "CameraRotator";
inline constexpr const char* kPathCreator = "PathCreator";
inline constexpr const char* kCollectiblePlacer = "CollectiblePlacer";
inline constexpr const char* kTerrainGenerator = "TerrainGenerator";
inline constexpr const char* kBackgroundMusic = "BackgroundMusic";
inline constexpr const char* kFovRestrictor = "FovRestrictor";
inline constexpr const char* kVisionSnapper = "VisionSnapper";
inline constexpr const char* kColorManipulation = "ColorManipulation";
inline constexpr const char* kDepthOfField = "DepthOfField";
inline constexpr const char* kPixelize = "Pixelize";
inline constexpr const char* kRestFrames = "RestFrames";
inline constexpr const char* kLocomotionHandler = "LocomotionHandler";
inline constexpr const char* kContinuousMove = "ContinuousMoveProvider";
inline constexpr const char* kTeleportation = "TeleportationProvider";
inline constexpr const char* kGrabMove = "GrabMoveProvider";
inline constexpr const char* kContinuousTurn = "ContinuousTurnProvider";
inline constexpr const char* kSnapTurn = "SnapTurnProvider";
inline constexpr const char* kPathFollow = "PathFollowProvider";
} // namespace builtin

void register_builtin_types(Registry& registry);

/// A registry with every built-in feature type.
Registry make_builtin_registry();

} // namespace csaf::registry
