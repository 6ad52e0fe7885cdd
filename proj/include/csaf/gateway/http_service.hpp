#pragma once

#include "csaf/gateway/control_service.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace httplib {
class Server;
}

namespace csaf::gateway {

/// HTTP front of a ControlService. Routes:
///   GET  /scene, /scene/names?name=, /presets[?type=], /presets/{type}/{name}, /session, /set
///   POST /scene/load, /scene/toggle, /presets, /presets/apply, /session/start, /session/stop,
///        /fms, /hit, /set/advance
///   DELETE /presets/{type}/{name}
///   GET  /events (server-sent telemetry stream)
///   static assets under / from `static_dir`
class HttpService {
  public:
    HttpService(ControlService& service, std::optional<std::filesystem::path> static_dir = std::nullopt);
    ~HttpService();

    /// Binds and serves on a background thread. Port 0 picks a free port. Throws Io on bind failure.
    int start(const std::string& host, int port);
    /// Blocks serving on the calling thread.
    void listen(const std::string& host, int port);
    void stop();

  private:
    void install_routes();

    ControlService* service_;
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
    std::atomic<bool> stopping_{false};
};

} // namespace csaf::gateway
