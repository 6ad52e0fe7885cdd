#include "csaf/susceptibility/rft.hpp"

#include "csaf/core/csv.hpp"
#include "csaf/core/error.hpp"
#include "csaf/core/geometry.hpp"
#include "csaf/core/random.hpp"

#include <cmath>

namespace csaf::susceptibility {

void validate(const RftConfig& cfg) {
    require(std::isfinite(cfg.frame_tilt) && cfg.frame_tilt > 0.0 && std::isfinite(cfg.rod_tilt) && cfg.rod_tilt > 0.0,
            ErrorCode::InvalidArgument, "rft tilts must be > 0");
    require(cfg.repetitions_per_permutation >= 1, ErrorCode::InvalidArgument,
            "repetitions_per_permutation must be >= 1");
    require(std::isfinite(cfg.rod_step) && cfg.rod_step > 0.0, ErrorCode::InvalidArgument, "rod_step must be > 0");
}

std::vector<RftTrial> generate_rft_trials(const RftConfig& cfg, std::uint64_t seed) {
    validate(cfg);
    std::vector<RftTrial> trials;
    for (int r = 0; r < cfg.repetitions_per_permutation; ++r)
        for (int frame : {1, -1})
            for (int rod : {1, -1})
                trials.push_back({0, frame, rod, frame * cfg.frame_tilt, rod * cfg.rod_tilt});
    Rng rng = make_rng(seed);
    shuffle(std::span<RftTrial>(trials), rng);
    for (std::size_t i = 0; i < trials.size(); ++i) trials[i].index = static_cast<int>(i);
    return trials;
}

double normalize_rod_angle(double deg) { return wrap_to_half_turn_90(deg); }

RodState start_trial(const RftTrial& trial) { return {normalize_rod_angle(trial.rod_start), false}; }

RodState rotate_rod(RodState state, double input, const RftConfig& cfg) {
    require(!state.committed, ErrorCode::Conflict, "trial already committed");
    require(std::isfinite(input), ErrorCode::InvalidArgument, "rod input must be finite");
    state.angle = normalize_rod_angle(state.angle + input * cfg.rod_step);
    return state;
}

RodState commit(RodState state) {
    require(!state.committed, ErrorCode::Conflict, "trial already committed");
    state.committed = true;
    return state;
}

RftResult score_rft(std::span<const RftTrial> trials, std::span<const RftResponse> responses) {
    require(trials.size() == responses.size(), ErrorCode::InvalidArgument,
            "expected one response per trial (" + std::to_string(trials.size()) + " trials, " +
                std::to_string(responses.size()) + " responses)");
    require(!trials.empty(), ErrorCode::InvalidArgument, "no trials to score");
    RftResult out;
    double sum = 0.0;
    for (const auto& r : responses) {
        require(std::isfinite(r.final_rod_angle), ErrorCode::InvalidArgument, "response must be finite");
        const double e = std::abs(normalize_rod_angle(r.final_rod_angle));
        out.absolute_errors.push_back(e);
        sum += e;
    }
    const double n = static_cast<double>(out.absolute_errors.size());
    out.mean = sum / n;
    if (out.absolute_errors.size() > 1) {
        double ss = 0.0;
        for (double e : out.absolute_errors) ss += (e - out.mean) * (e - out.mean);
        out.std = std::sqrt(ss / (n - 1.0));
    }
    return out;
}

std::string rft_trials_csv(std::span<const RftTrial> trials) {
    csv::Writer w("trial,frame_sign,rod_sign,frame_deg,rod_start_deg");
    for (const auto& t : trials) {
        w.field(t.index).field(t.frame_sign).field(t.rod_sign).field(t.frame_angle).field(t.rod_start);
        w.end_row();
    }
    return w.str();
}

std::string rft_result_csv(std::span<const RftTrial> trials, std::span<const RftResponse> responses,
                           const RftResult& result) {
    require(trials.size() == responses.size() && trials.size() == result.absolute_errors.size(),
            ErrorCode::InvalidArgument, "trial, response and error counts differ");
    csv::Writer w("trial,frame_sign,rod_sign,response_deg,abs_error_deg");
    for (std::size_t i = 0; i < trials.size(); ++i) {
        w.field(trials[i].index).field(trials[i].frame_sign).field(trials[i].rod_sign);
        w.field(responses[i].final_rod_angle).field(result.absolute_errors[i]);
        w.end_row();
    }
    return w.str();
}

std::vector<RftResponse> parse_rft_responses(const std::string& text) {
    const csv::Table table = csv::parse(text);
    std::size_t col = 0;
    if (table.header.size() != 1) col = table.column("response_deg");
    std::vector<RftResponse> out;
    for (const auto& row : table.rows) {
        require(col < row.size(), ErrorCode::Parse, "short row in responses CSV");
        out.push_back({csv::parse_number(row[col])});
    }
    return out;
}

} // namespace csaf::susceptibility
