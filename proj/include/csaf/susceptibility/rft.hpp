#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace csaf::susceptibility {

struct RftConfig {
    double frame_tilt = 18.0; ///< deg
    double rod_tilt = 27.0;   ///< deg
    int repetitions_per_permutation = 4;
    double rod_step = 1.0;    ///< deg per input unit
};

void validate(const RftConfig& cfg);

struct RftTrial {
    int index = 0;
    int frame_sign = 1;
    int rod_sign = 1;
    double frame_angle = 0.0; ///< signed, deg
    double rod_start = 0.0;   ///< signed, deg
};

/// Four sign permutations repeated evenly, then shuffled with the seed.
std::vector<RftTrial> generate_rft_trials(const RftConfig& cfg, std::uint64_t seed);

struct RodState {
    double angle = 0.0; ///< deg from gravitational vertical, in (-90, 90]
    bool committed = false;
};

RodState start_trial(const RftTrial& trial);
/// Throws Conflict once the trial has been committed.
RodState rotate_rod(RodState state, double input, const RftConfig& cfg);
RodState commit(RodState state);

/// Wraps into (-90, 90]; a rod is symmetric under half turns.
double normalize_rod_angle(double deg);

struct RftResponse {
    double final_rod_angle = 0.0;
};

struct RftResult {
    std::vector<double> absolute_errors;
    double mean = 0.0;
    double std = 0.0; ///< sample standard deviation (0 for a single trial)
};

RftResult score_rft(std::span<const RftTrial> trials, std::span<const RftResponse> responses);

/// Trial schedule, header `trial,frame_sign,rod_sign,frame_deg,rod_start_deg`.
std::string rft_trials_csv(std::span<const RftTrial> trials);
/// Header `trial,frame_sign,rod_sign,response_deg,abs_error_deg`.
std::string rft_result_csv(std::span<const RftTrial> trials, std::span<const RftResponse> responses,
                           const RftResult& result);
/// Reads `response_deg` (or the single column) of a CSV into responses.
std::vector<RftResponse> parse_rft_responses(const std::string& text);

} // namespace csaf::susceptibility
