#pragma once

#include "csaf/locomotion/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace csaf::locomotion {

struct InputSample {
    double t = 0.0;
    Side side = Side::Left;
    ControllerInput input;
};

/// Time-ordered controller samples. Header:
/// `t,side,jx,jy,grip,trigger,validate,cpx,cpy,cpz,cqw,cqx,cqy,cqz`
struct InputTrace {
    std::vector<InputSample> samples;

    /// Latest sample per side with sample.t <= t (sample and hold); neutral input before the first.
    [[nodiscard]] InputPair at(double t) const;
    [[nodiscard]] double duration() const { return samples.empty() ? 0.0 : samples.back().t; }
};

InputTrace parse_input_trace(std::string_view csv_text);
std::string input_trace_csv(const InputTrace& trace);

/// Sequential reader for a fixed-step replay; cheaper than InputTrace::at for long traces.
class TraceCursor {
  public:
    explicit TraceCursor(const InputTrace& trace) : trace_(&trace) {}
    InputPair advance_to(double t);

  private:
    const InputTrace* trace_;
    std::size_t next_ = 0;
    InputPair current_;
};

} // namespace csaf::locomotion
