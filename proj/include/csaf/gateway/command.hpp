#pragma once

#include "csaf/core/error.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace csaf::gateway {

/// Every mutation the service accepts. GET queries are not commands.
enum class CommandKind {
    LoadScene,     ///< {"file": path} or {"scene": {...}}
    ToggleFeature, ///< {"entity": id|name, "type": str, "enabled": bool}
    CreatePreset,  ///< {"type", "name", "values": {...}}; an existing name is a conflict
    DeletePreset,  ///< {"type", "name"}
    ApplyPreset,   ///< {"entity", "type", "name"}
    StartSession,  ///< {"plan": {...}} or {"plan_file": path}, optional "seed"
    StopSession,   ///< {}
    SubmitFms,     ///< {"rating": int, "source": str}
    SubmitHit,     ///< {"target": id}
    AdvanceSet,    ///< {"set": {...}|path} to load, else advance from the last finished session
};

const char* to_string(CommandKind kind);
std::optional<CommandKind> command_kind_from_string(std::string_view name);

struct Command {
    CommandKind kind = CommandKind::StopSession;
    nlohmann::json payload = nlohmann::json::object();
};

struct CommandResult {
    int status = 200; ///< HTTP-style
    nlohmann::json body = nlohmann::json::object();

    [[nodiscard]] bool ok() const { return status < 300; }
};

/// 400 for invalid input, 404 not found, 409 conflicts and duplicates, 422 for range errors.
int http_status(ErrorCode code);

CommandResult error_result(ErrorCode code, const std::string& message);

} // namespace csaf::gateway
