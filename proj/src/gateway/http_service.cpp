#include "csaf/gateway/http_service.hpp"

#include "csaf/core/error.hpp"

#include <httplib.h>

namespace csaf::gateway {

using nlohmann::json;

namespace {

void reply(httplib::Response& res, const CommandResult& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
}

void reply_json(httplib::Response& res, const json& body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

std::optional<json> body_json(const httplib::Request& req, httplib::Response& res) {
    if (req.body.empty()) return json::object();
    try {
        json doc = json::parse(req.body);
        if (doc.is_object()) return doc;
    } catch (const json::exception&) {
    }
    reply(res, error_result(ErrorCode::Parse, "request body must be a JSON object"));
    return std::nullopt;
}

} // namespace

HttpService::HttpService(ControlService& service, std::optional<std::filesystem::path> static_dir)
    : service_(&service), server_(std::make_unique<httplib::Server>()) {
    install_routes();
    if (static_dir && std::filesystem::is_directory(*static_dir)) server_->set_mount_point("/", static_dir->string());
}

HttpService::~HttpService() { stop(); }

void HttpService::install_routes() {
    auto& srv = *server_;
    ControlService& svc = *service_;

    auto command = [&svc](CommandKind kind) {
        return [&svc, kind](const httplib::Request& req, httplib::Response& res) {
            const auto body = body_json(req, res);
            if (!body) return;
            reply(res, svc.execute({kind, *body}));
        };
    };

    srv.Get("/scene", [&svc](const httplib::Request&, httplib::Response& res) { reply_json(res, svc.scene_snapshot()); });
    srv.Get("/scene/names", [&svc](const httplib::Request& req, httplib::Response& res) {
        const std::string name = req.get_param_value("name");
        const auto check = svc.registry().validate_feature_name(name);
        reply_json(res, {{"name", name}, {"result", registry::to_string(check)}, {"ok", check == registry::NameCheck::Ok}});
    });
    srv.Post("/scene/load", command(CommandKind::LoadScene));
    srv.Post("/scene/toggle", command(CommandKind::ToggleFeature));

    srv.Get("/presets", [&svc](const httplib::Request& req, httplib::Response& res) {
        reply_json(res, svc.presets_snapshot(req.get_param_value("type")));
    });
    srv.Get(R"(/presets/([A-Za-z0-9_]+)/([A-Za-z0-9_\-]+))", [&svc](const httplib::Request& req, httplib::Response& res) {
        const auto doc = svc.preset_snapshot(req.matches[1].str(), req.matches[2].str());
        if (doc)
            reply_json(res, *doc);
        else
            reply(res, error_result(ErrorCode::NotFound, "no such preset"));
    });
    srv.Post("/presets", command(CommandKind::CreatePreset));
    srv.Post("/presets/apply", command(CommandKind::ApplyPreset));
    srv.Delete(R"(/presets/([A-Za-z0-9_]+)/([A-Za-z0-9_\-]+))", [&svc](const httplib::Request& req, httplib::Response& res) {
        reply(res, svc.execute({CommandKind::DeletePreset, {{"type", req.matches[1].str()}, {"name", req.matches[2].str()}}}));
    });

    srv.Get("/session", [&svc](const httplib::Request&, httplib::Response& res) { reply_json(res, svc.session_snapshot()); });
    srv.Post("/session/start", command(CommandKind::StartSession));
    srv.Post("/session/stop", command(CommandKind::StopSession));
    srv.Post("/fms", command(CommandKind::SubmitFms));
    srv.Post("/hit", command(CommandKind::SubmitHit));
    srv.Get("/set", [&svc](const httplib::Request&, httplib::Response& res) { reply_json(res, svc.set_snapshot()); });
    srv.Post("/set/advance", command(CommandKind::AdvanceSet));

    srv.Get("/events", [&svc, this](const httplib::Request& req, httplib::Response& res) {
        // Last-Event-ID lets a reconnecting client resume without gaps or duplicates
        std::uint64_t after = svc.latest_seq();
        if (req.has_header("Last-Event-ID")) after = std::stoull(req.get_header_value("Last-Event-ID"));
        else if (req.has_param("after")) after = std::stoull(req.get_param_value("after"));
        res.set_header("Cache-Control", "no-cache");
        res.set_chunked_content_provider("text/event-stream", [&svc, this, after](std::size_t, httplib::DataSink& sink) mutable {
            while (!stopping_) {
                const auto frames = svc.frames_after(after, std::chrono::milliseconds(250));
                if (frames.empty()) {
                    if (!sink.is_writable()) return false;
                    const std::string ping = ": keep-alive\n\n";
                    if (!sink.write(ping.data(), ping.size())) return false;
                    continue;
                }
                for (const auto& f : frames) {
                    const std::string msg = "id: " + std::to_string(f.seq) + "\nevent: telemetry\ndata: " + to_json(f).dump() + "\n\n";
                    if (!sink.write(msg.data(), msg.size())) return false;
                    after = f.seq;
                }
            }
            sink.done();
            return true;
        });
    });
}

int HttpService::start(const std::string& host, int port) {
    int bound = port;
    if (port == 0)
        bound = server_->bind_to_any_port(host);
    else if (!server_->bind_to_port(host, port))
        bound = -1;
    require(bound > 0, ErrorCode::Io, "cannot bind " + host + ":" + std::to_string(port));
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
    return bound;
}

void HttpService::listen(const std::string& host, int port) {
    require(server_->bind_to_port(host, port), ErrorCode::Io, "cannot bind " + host + ":" + std::to_string(port));
    server_->listen_after_bind();
}

void HttpService::stop() {
    stopping_ = true;
    if (server_) server_->stop();
    if (thread_.joinable()) thread_.join();
}

} // namespace csaf::gateway
