#include "csaf/core/csv.hpp"
#include "csaf/core/error.hpp"
#include "csaf/gateway/http_service.hpp"
#include "csaf/registry/builtin_types.hpp"
#include "csaf/report/report.hpp"
#include "csaf/runtime/experiment_set.hpp"
#include "csaf/runtime/summary.hpp"
#include "csaf/susceptibility/rft.hpp"
#include "csaf/susceptibility/sensitivity.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace csaf;

namespace {

// exit status for input that cannot be parsed; runtime failures exit 1
constexpr int kParseFailure = 2;

bool is_parse_error(ErrorCode code) {
    return code == ErrorCode::Parse || code == ErrorCode::VersionUnsupported || code == ErrorCode::TypeMismatch ||
           code == ErrorCode::UnknownField;
}

fs::path data_root() {
    const char* env = std::getenv("CSAF_DATA_DIR");
    return env && *env ? fs::path(env) : fs::current_path();
}

// relative outputs land under CSAF_DATA_DIR when it is set
fs::path output_path(const std::string& p) {
    fs::path path(p);
    if (path.is_absolute() || !std::getenv("CSAF_DATA_DIR")) return path;
    return data_root() / path;
}

json read_json(const fs::path& file) {
    std::string text;
    try {
        text = csv::read_file(file);
    } catch (const Error& e) {
        fail(ErrorCode::Parse, e.what());
    }
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, file.string() + ": " + e.what());
    }
}

void write_or_print(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-")
        std::cout << text;
    else
        csv::write_file(output_path(out), text);
}

// anything that fails while reading inputs counts as a parse failure
template <typename F> auto load_input(F&& load) {
    try {
        return load();
    } catch (const Error& e) {
        if (is_parse_error(e.code())) throw;
        fail(ErrorCode::Parse, e.what());
    }
}

int cmd_run(const std::string& plan_file, std::optional<std::uint64_t> seed, const std::string& out) {
    const auto reg = registry::make_builtin_registry();
    runtime::SessionPlan plan = load_input([&] { return runtime::load_plan(plan_file); });
    if (seed) plan.seed = *seed;
    auto state = runtime::run_to_completion(runtime::start_session(reg, std::move(plan)));
    for (const auto& d : state.resources->diagnostics) std::cerr << "warning: " << d << "\n";
    const auto artifacts = runtime::finalize(state);
    for (const auto& f : runtime::write_artifacts(artifacts, output_path(out))) std::cout << f.string() << "\n";
    const auto& s = artifacts.summary;
    std::cout << "duration " << csv::format_number(s.duration) << " s, fms prompts " << s.fms_prompts << ", coins "
              << s.coins_collected << "/" << s.coins_total << "\n";
    return 0;
}

int cmd_rft(std::uint64_t seed, const std::string& out, const std::string& config, const std::string& responses) {
    susceptibility::RftConfig cfg;
    if (!config.empty()) {
        const json c = read_json(config);
        cfg.frame_tilt = c.value("frame_tilt", cfg.frame_tilt);
        cfg.rod_tilt = c.value("rod_tilt", cfg.rod_tilt);
        cfg.repetitions_per_permutation = c.value("repetitions_per_permutation", cfg.repetitions_per_permutation);
        cfg.rod_step = c.value("rod_step", cfg.rod_step);
    }
    const auto trials = susceptibility::generate_rft_trials(cfg, seed);
    if (responses.empty()) {
        write_or_print(out, susceptibility::rft_trials_csv(trials));
        return 0;
    }
    const auto answers = load_input([&] { return susceptibility::parse_rft_responses(csv::read_file(responses)); });
    const auto result = susceptibility::score_rft(trials, answers);
    write_or_print(out, susceptibility::rft_result_csv(trials, answers, result));
    std::cerr << "mean " << csv::format_number(result.mean) << " deg, std " << csv::format_number(result.std) << " deg\n";
    return 0;
}

int cmd_sensitivity(const std::string& config, std::uint64_t seed, const std::string& out) {
    const auto cfg = susceptibility::sensitivity_from_json(read_json(config));
    write_or_print(out, susceptibility::schedule_csv(susceptibility::build_sensitivity_schedule(cfg, seed)));
    return 0;
}

int cmd_report_validate(const std::string& file) {
    const auto r = load_input([&] { return report::parse_report(csv::read_file(file)); });
    const auto violations = report::validate_report(r);
    for (const auto& v : violations) std::cout << v.path << ": " << v.message << "\n";
    if (violations.empty()) std::cout << "ok\n";
    return violations.empty() ? 0 : 1;
}

int cmd_report_render(const std::string& file, const std::string& format, const std::string& out) {
    const auto r = load_input([&] { return report::parse_report(csv::read_file(file)); });
    write_or_print(out, report::render_report(r, format == "json" ? report::Format::Machine : report::Format::Document));
    return 0;
}

// study.json: {"demographics": {...}, "hardware": {...}, "design": str, "vr_content": str}
int cmd_report_prefill(const std::vector<std::string>& runs, const std::string& study_file, const std::string& out) {
    const auto reg = registry::make_builtin_registry();
    std::vector<runtime::RunSummary> sessions;
    for (const auto& dir : runs) sessions.push_back(runtime::summary_from_json(reg, read_json(fs::path(dir) / "summary.json")));
    report::Demographics demo;
    report::Hardware hw;
    report::StudyContext ctx;
    if (!study_file.empty()) {
        const json study = read_json(study_file);
        json wrapped = report::to_json(report::StandardReport{});
        if (study.contains("demographics")) wrapped["demographics"] = study.at("demographics");
        if (study.contains("hardware")) wrapped["hardware"] = study.at("hardware");
        const auto base = report::report_from_json(wrapped);
        demo = base.demographics;
        hw = base.hardware;
        ctx.design = study.value("design", ctx.design);
        ctx.vr_content = study.value("vr_content", ctx.vr_content);
    }
    write_or_print(out, report::render_report(report::from_session(sessions, demo, hw, ctx), report::Format::Machine));
    return 0;
}

int cmd_set(const std::string& set_file, const std::string& out) {
    const auto reg = registry::make_builtin_registry();
    const auto set = runtime::experiment_set_from_json(read_json(set_file));
    const fs::path base = fs::path(set_file).parent_path();
    std::map<std::string, int, std::less<>> visits;
    std::optional<std::string> node = set.start;
    int index = 0;
    while (node) {
        ++visits[*node];
        const runtime::SetNode& n = *set.node(*node);
        runtime::SessionPlan plan = runtime::load_plan(base / n.plan);
        for (const auto& p : n.presets) plan.presets.push_back(read_json(base / p));
        const auto state = runtime::run_to_completion(runtime::start_session(reg, std::move(plan)));
        const auto artifacts = runtime::finalize(state);
        const fs::path dir = output_path(out) / (std::to_string(++index) + "-" + n.id);
        runtime::write_artifacts(artifacts, dir);
        std::cout << n.id << " -> " << dir.string() << "\n";
        node = runtime::next_node(set, *node, runtime::node_results(artifacts.summary), visits);
    }
    return 0;
}

int cmd_serve(int port, const std::string& host, const std::string& scene, const std::string& static_dir,
              const std::string& preset_dir, double time_scale) {
    const auto reg = registry::make_builtin_registry();
    gateway::ServiceConfig cfg;
    cfg.data_dir = data_root();
    if (!preset_dir.empty()) cfg.preset_dir = preset_dir;
    cfg.time_scale = time_scale;
    gateway::ControlService service(reg, cfg);
    if (!scene.empty()) {
        const auto r = service.execute({gateway::CommandKind::LoadScene, {{"file", fs::absolute(scene).string()}}});
        if (!r.ok()) {
            std::cerr << "error: " << r.body.dump() << "\n";
            return r.status == 400 ? kParseFailure : 1;
        }
    }
    service.start_background();
    gateway::HttpService http(service, static_dir.empty() ? std::nullopt : std::optional<fs::path>(static_dir));
    std::cout << "serving on http://" << host << ":" << port << "\n" << std::flush;
    http.listen(host, port);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cybersickness assessment engine"};
    app.require_subcommand(1);

    std::string plan_file, out, config, responses, file, format = "md", scene, static_dir, preset_dir, study,
                                                     host = "127.0.0.1", set_file;
    std::vector<std::string> runs;
    std::optional<std::uint64_t> seed;
    std::uint64_t seed_value = 0;
    int port = 8080;
    double time_scale = 1.0;

    auto* run = app.add_subcommand("run", "Run a session plan headless");
    run->add_option("--plan", plan_file, "Plan JSON")->required();
    run->add_option("--seed", seed, "Override the plan seed");
    run->add_option("--out", out, "Artifact directory")->required();

    auto* rft = app.add_subcommand("rft", "Rod-and-frame trial schedule or scoring");
    rft->add_option("--seed", seed_value, "Shuffle seed")->required();
    rft->add_option("--out", out, "Output CSV (- for stdout)")->required();
    rft->add_option("--config", config, "RFT config JSON");
    rft->add_option("--responses", responses, "Responses CSV to score");

    auto* sens = app.add_subcommand("sensitivity", "Passive motion battery schedule");
    sens->add_option("--config", config, "Sensitivity config JSON")->required();
    sens->add_option("--seed", seed_value, "Seed for shuffled orders");
    sens->add_option("--out", out, "Output CSV (- for stdout)")->required();

    auto* rep = app.add_subcommand("report", "Standardized data report");
    rep->require_subcommand(1);
    auto* rep_validate = rep->add_subcommand("validate", "Check a report.v1.json");
    rep_validate->add_option("file", file)->required();
    auto* rep_render = rep->add_subcommand("render", "Render a report.v1.json");
    rep_render->add_option("file", file)->required();
    rep_render->add_option("--format", format, "md or json")->check(CLI::IsMember({"md", "json"}));
    rep_render->add_option("--out", out, "Output file (stdout by default)");
    auto* rep_prefill = rep->add_subcommand("prefill", "Build a report from run directories");
    rep_prefill->add_option("--runs", runs, "Run artifact directories, one per session")->required();
    rep_prefill->add_option("--study", study, "Study JSON with demographics and hardware");
    rep_prefill->add_option("--out", out, "Output file (stdout by default)");

    auto* set = app.add_subcommand("set", "Run an experiment set headless");
    set->add_option("--set", set_file, "Experiment set JSON")->required();
    set->add_option("--out", out, "Artifact root")->required();

    auto* serve = app.add_subcommand("serve", "Serve the control API");
    serve->add_option("--port", port, "TCP port");
    serve->add_option("--host", host, "Bind address");
    serve->add_option("--scene", scene, "Scene description to load");
    serve->add_option("--static", static_dir, "Static asset directory for the panel");
    serve->add_option("--presets", preset_dir, "Preset directory");
    serve->add_option("--time-scale", time_scale, "Session seconds per wall second");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParseFailure;
    }

    try {
        if (*run) return cmd_run(plan_file, seed, out);
        if (*rft) return cmd_rft(seed_value, out, config, responses);
        if (*sens) return cmd_sensitivity(config, seed_value, out);
        if (*rep_validate) return cmd_report_validate(file);
        if (*rep_render) return cmd_report_render(file, format, out);
        if (*rep_prefill) return cmd_report_prefill(runs, study, out);
        if (*set) return cmd_set(set_file, out);
        if (*serve) return cmd_serve(port, host, scene, static_dir, preset_dir, time_scale);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_parse_error(e.code()) ? kParseFailure : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
