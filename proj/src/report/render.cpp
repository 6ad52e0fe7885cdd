#include "csaf/core/csv.hpp"
#include "csaf/core/error.hpp"
#include "csaf/report/report.hpp"

#include <cmath>

namespace csaf::report {

namespace {

constexpr const char* kNotApplicable = "If any — not applicable";

struct Row {
    std::string label;
    std::string explanation;
    bool section = false;
};

const std::vector<Row>& layout() {
    static const std::vector<Row> rows = {
        {"Basic Demographics", "", true},
        {"Number of participants", "Total number of participants"},
        {"Number of Female", "Total number of females among participants"},
        {"Number of experienced Users", "Total number of experienced Users of VR"},
        {"Number of inexperienced Users", "Total number of inexperienced Users of VR"},
        {"Age range", "Report of age with range, mean and std"},
        {"Experiment settings", "", true},
        {"Experiment design",
         "The experiment design refers to the overall structure and plan for conducting a scientific experiment"},
        {"Number of Sessions", "Total number of sessions that each participant experienced"},
        {"Duration of baseline (If any)", "Total time of each session without VR exposure"},
        {"Duration of the experiment (per session)", "Total time of each session during VR exposure"},
        {"Break between sessions/exposure (If any)", "Gap between each session or each period of exposure"},
        {"Break down of linear acceleration and rotation in time (If passive navigation)",
         "Duration of time in linear acceleration and rotation"},
        {"VR content", "VR Game or 360 video with names if any"},
        {"Control type", "Passive locomotion or Active locomotion with controllers"},
        {"Navigation type (per session)", "Navigation type in each session"},
        {"Optic Flow magnitude (per session if available)",
         "If available, provide the mean or median of optic flow magnitude"},
        {"Cybersickness reduction techniques (if any)", "", true},
        {"Name of the Techniques", "Describe the technique in short"},
        {"Apply condition", "When will the techniques be applied"},
        {"Details of the techniques", "Size, speed and other parameters of the techniques"},
        {"Hardware settings", "", true},
        {"HMD device", "Head-mounted display model"},
        {"Related FOV", "Field of view of the HMD"},
    };
    return rows;
}

std::string num(double v) { return csv::format_number(v); }

std::string minutes(const std::optional<double>& v) { return v ? num(*v) + " min" : kNotApplicable; }

std::string per_session(const std::vector<std::string>& items, const char* sep) {
    if (items.empty()) return kNotApplicable;
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i)
        out += (i ? ", " : "") + std::string("S") + std::to_string(i + 1) + sep + items[i];
    return out;
}

std::string techniques(const StandardReport& r, std::string Technique::*field) {
    if (r.reduction_techniques.empty()) return kNotApplicable;
    std::string out;
    for (const auto& t : r.reduction_techniques) out += (out.empty() ? "" : "; ") + t.*field;
    return out;
}

std::string cell(std::string s) {
    std::string out;
    for (char c : s) {
        if (c == '|') out += '\\';
        out += c == '\n' ? ' ' : c;
    }
    return out;
}

std::string value_of(const StandardReport& r, std::size_t row) {
    const auto& d = r.demographics;
    const auto& e = r.experiment;
    switch (row) {
    case 1: return std::to_string(d.participants);
    case 2: return std::to_string(d.females);
    case 3: return std::to_string(d.experienced);
    case 4: return std::to_string(d.inexperienced);
    case 5:
        return num(d.age.min) + "-" + num(d.age.max) + " (M: " + num(d.age.mean) + ", Std: " + num(d.age.std) + ")";
    case 7: return e.design.empty() ? kNotApplicable : e.design;
    case 8: {
        std::string out = std::to_string(e.sessions);
        if (e.sessions > 0 && e.sessions <= 16) {
            out += " (";
            for (long long i = 1; i <= e.sessions; ++i) out += (i > 1 ? ", S" : "S") + std::to_string(i);
            out += ")";
        }
        return out;
    }
    case 9: return minutes(e.baseline_min);
    case 10: return num(e.exposure_min) + " min";
    case 11: return minutes(e.break_min);
    case 12: return per_session(e.motion_breakdown, ": ");
    case 13: return e.vr_content;
    case 14: return e.control_type == runtime::ControlType::Passive ? "Passive locomotion" : "Active locomotion";
    case 15: return per_session(e.navigation_per_session, ". ");
    case 16: return e.optic_flow ? num(*e.optic_flow) + " (" + optic_flow_definition() + ")" : kNotApplicable;
    case 18: return techniques(r, &Technique::name);
    case 19: return techniques(r, &Technique::apply_condition);
    case 20: return techniques(r, &Technique::details);
    case 22: return r.hardware.hmd.empty() ? kNotApplicable : r.hardware.hmd;
    case 23: return num(r.hardware.fov) + " degrees";
    }
    return "";
}

} // namespace

const std::vector<std::string>& row_labels() {
    static const std::vector<std::string> labels = [] {
        std::vector<std::string> out;
        for (const auto& r : layout()) out.push_back(r.label);
        return out;
    }();
    return labels;
}

std::string render_report(const StandardReport& r, Format format) {
    const auto violations = validate_report(r);
    if (!violations.empty()) {
        std::string msg = "report does not validate:";
        for (const auto& v : violations) msg += " " + v.path + " (" + v.message + ");";
        fail(ErrorCode::InvalidArgument, msg);
    }
    if (format == Format::Machine) return to_json(r).dump(2) + "\n";

    std::string out = "# Standardized data report\n\n";
    out += "| List of provided features | Explanation | Example |\n|---|---|---|\n";
    const auto& rows = layout();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].section)
            out += "| **" + rows[i].label + "** | | |\n";
        else
            out += "| " + cell(rows[i].label) + " | " + cell(rows[i].explanation) + " | " + cell(value_of(r, i)) + " |\n";
    }
    return out;
}

} // namespace csaf::report
