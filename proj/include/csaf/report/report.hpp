#pragma once

#include "csaf/runtime/summary.hpp"

#include <json.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace csaf::report {

struct AgeStats {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double std = 0.0;

    bool operator==(const AgeStats&) const = default;
};

struct Demographics {
    long long participants = 0;
    long long females = 0;
    long long experienced = 0;
    long long inexperienced = 0;
    AgeStats age;

    bool operator==(const Demographics&) const = default;
};

struct ExperimentSettings {
    std::string design;
    long long sessions = 0;
    std::optional<double> baseline_min;
    double exposure_min = 0.0;
    std::optional<double> break_min;
    std::vector<std::string> motion_breakdown; ///< one entry per session
    std::string vr_content;
    runtime::ControlType control_type = runtime::ControlType::Active;
    std::vector<std::string> navigation_per_session;
    std::optional<double> optic_flow; ///< proxy value, see optic_flow_definition()

    bool operator==(const ExperimentSettings&) const = default;
};

struct Technique {
    std::string name;
    std::string apply_condition;
    std::string details;

    bool operator==(const Technique&) const = default;
};

struct Hardware {
    std::string hmd;
    double fov = 0.0; ///< deg

    bool operator==(const Hardware&) const = default;
};

struct StandardReport {
    Demographics demographics;
    ExperimentSettings experiment;
    std::vector<Technique> reduction_techniques;
    Hardware hardware;

    bool operator==(const StandardReport&) const = default;
};

struct Violation {
    std::string path; ///< e.g. "demographics.females"
    std::string message;
};

/// Every invariant violation, empty when the report is valid. Never throws.
std::vector<Violation> validate_report(const StandardReport& r);

/// Free-text fields the runs cannot supply.
struct StudyContext {
    std::string design = "Within-subject design";
    std::string vr_content = "Customized VR game";
};

/// Prefills experiment settings from finalized runs (one per session) and vision presets.
/// Throws InvalidArgument for zero sessions or sessions whose phase durations disagree.
StandardReport from_session(std::span<const runtime::RunSummary> sessions, const Demographics& demographics,
                            const Hardware& hardware, const StudyContext& context = {});

/// Table entry for one vision preset, e.g. "FOV reduction" with its size and speed.
Technique describe_technique(const registry::PresetDoc& preset);

const char* optic_flow_definition();

enum class Format { Machine, Document };

/// Machine: canonical `report.v1` JSON. Document: Markdown table with the standard row labels.
/// Throws InvalidArgument when the report does not validate.
std::string render_report(const StandardReport& r, Format format);

nlohmann::json to_json(const StandardReport& r);
StandardReport report_from_json(const nlohmann::json& doc);
/// Parses the machine format; throws Parse.
StandardReport parse_report(std::string_view text);

/// Row labels of the document layout, in order, sections included.
const std::vector<std::string>& row_labels();

} // namespace csaf::report
