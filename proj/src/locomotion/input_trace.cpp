#include "csaf/locomotion/input_trace.hpp"

#include "csaf/core/csv.hpp"
#include "csaf/core/error.hpp"

#include <algorithm>

namespace csaf::locomotion {

namespace {

constexpr std::string_view kHeader = "t,side,jx,jy,grip,trigger,validate,cpx,cpy,cpz,cqw,cqx,cqy,cqz";
constexpr double kTimeSlack = 1e-9;

bool parse_flag(const std::string& s) {
    if (s == "1" || s == "true") return true;
    if (s == "0" || s == "false") return false;
    fail(ErrorCode::Parse, "expected 0/1 flag, got '" + s + "'");
}

void assign(InputPair& pair, const InputSample& s) {
    (s.side == Side::Left ? pair.left : pair.right) = s.input;
}

} // namespace

InputPair InputTrace::at(double t) const {
    InputPair pair;
    for (const auto& s : samples) {
        if (s.t > t + kTimeSlack) break;
        assign(pair, s);
    }
    return pair;
}

InputPair TraceCursor::advance_to(double t) {
    while (next_ < trace_->samples.size() && trace_->samples[next_].t <= t + kTimeSlack) assign(current_, trace_->samples[next_++]);
    return current_;
}

InputTrace parse_input_trace(std::string_view text) {
    const csv::Table table = csv::parse(text);
    const std::vector<std::string> expected = {"t",   "side", "jx",  "jy",  "grip", "trigger", "validate",
                                               "cpx", "cpy",  "cpz", "cqw", "cqx",  "cqy",     "cqz"};
    require(table.header == expected, ErrorCode::Parse, "input trace header must be '" + std::string(kHeader) + "'");
    InputTrace trace;
    for (const auto& row : table.rows) {
        InputSample s;
        s.t = csv::parse_number(row[0]);
        const auto side = side_from_string(row[1]);
        require(side.has_value(), ErrorCode::Parse, "side must be left or right, got '" + row[1] + "'");
        s.side = *side;
        s.input.joystick = {csv::parse_number(row[2]), csv::parse_number(row[3])};
        s.input.grip = parse_flag(row[4]);
        s.input.trigger = parse_flag(row[5]);
        s.input.validate_button = parse_flag(row[6]);
        s.input.controller_pose.position = {csv::parse_number(row[7]), csv::parse_number(row[8]),
                                            csv::parse_number(row[9])};
        s.input.controller_pose.orientation = Quat(csv::parse_number(row[10]), csv::parse_number(row[11]),
                                                   csv::parse_number(row[12]), csv::parse_number(row[13]));
        require(std::abs(s.input.joystick.x()) <= 1.0 && std::abs(s.input.joystick.y()) <= 1.0, ErrorCode::Parse,
                "joystick component outside [-1, 1] at t=" + row[0]);
        require(std::abs(s.input.controller_pose.orientation.norm() - 1.0) < 1e-6, ErrorCode::Parse,
                "controller orientation is not a unit quaternion at t=" + row[0]);
        require(trace.samples.empty() || s.t >= trace.samples.back().t, ErrorCode::Parse,
                "input trace timestamps must be non-decreasing");
        trace.samples.push_back(s);
    }
    return trace;
}

std::string input_trace_csv(const InputTrace& trace) {
    csv::Writer w(kHeader);
    for (const auto& s : trace.samples) {
        const auto& in = s.input;
        const auto& p = in.controller_pose;
        w.field(s.t).field(to_string(s.side)).field(in.joystick.x()).field(in.joystick.y());
        w.field(in.grip ? 1 : 0).field(in.trigger ? 1 : 0).field(in.validate_button ? 1 : 0);
        w.field(p.position.x()).field(p.position.y()).field(p.position.z());
        w.field(p.orientation.w()).field(p.orientation.x()).field(p.orientation.y()).field(p.orientation.z());
        w.end_row();
    }
    return w.str();
}

} // namespace csaf::locomotion
