#include "csaf/gateway/command.hpp"

namespace csaf::gateway {

const char* to_string(CommandKind kind) {
    switch (kind) {
    case CommandKind::LoadScene: return "LoadScene";
    case CommandKind::ToggleFeature: return "ToggleFeature";
    case CommandKind::CreatePreset: return "CreatePreset";
    case CommandKind::DeletePreset: return "DeletePreset";
    case CommandKind::ApplyPreset: return "ApplyPreset";
    case CommandKind::StartSession: return "StartSession";
    case CommandKind::StopSession: return "StopSession";
    case CommandKind::SubmitFms: return "SubmitFms";
    case CommandKind::SubmitHit: return "SubmitHit";
    case CommandKind::AdvanceSet: return "AdvanceSet";
    }
    return "?";
}

std::optional<CommandKind> command_kind_from_string(std::string_view name) {
    for (auto k : {CommandKind::LoadScene, CommandKind::ToggleFeature, CommandKind::CreatePreset,
                   CommandKind::DeletePreset, CommandKind::ApplyPreset, CommandKind::StartSession,
                   CommandKind::StopSession, CommandKind::SubmitFms, CommandKind::SubmitHit, CommandKind::AdvanceSet})
        if (name == to_string(k)) return k;
    return std::nullopt;
}

int http_status(ErrorCode code) {
    switch (code) {
    case ErrorCode::NotFound: return 404;
    case ErrorCode::Duplicate:
    case ErrorCode::Conflict: return 409;
    case ErrorCode::OutOfRange: return 422;
    case ErrorCode::Io: return 500;
    case ErrorCode::InvalidArgument:
    case ErrorCode::TypeMismatch:
    case ErrorCode::UnknownField:
    case ErrorCode::VersionUnsupported:
    case ErrorCode::Parse: return 400;
    }
    return 500;
}

CommandResult error_result(ErrorCode code, const std::string& message) {
    return {http_status(code), {{"error", to_string(code)}, {"message", message}}};
}

} // namespace csaf::gateway
