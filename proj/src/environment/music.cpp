#include "csaf/environment/music.hpp"

#include "csaf/core/error.hpp"

#include <cmath>

namespace csaf::environment {

void validate(const MusicTimeline& timeline) {
    require(timeline.horizon >= 0.0 && std::isfinite(timeline.horizon), ErrorCode::InvalidArgument,
            "music horizon must be >= 0");
    if (timeline.intro)
        require(timeline.intro->duration > 0.0, ErrorCode::InvalidArgument, "intro duration must be > 0");
    for (const auto& t : timeline.loop_tracks)
        require(t.duration > 0.0, ErrorCode::InvalidArgument, "loop track '" + t.id + "' needs a duration > 0");
}

std::vector<MusicEvent> playlist_schedule(const MusicTimeline& timeline) {
    validate(timeline);
    std::vector<MusicEvent> events;
    double t = 0.0;
    if (timeline.intro && t < timeline.horizon) {
        events.push_back({t, timeline.intro->id});
        t += timeline.intro->duration;
    }
    if (timeline.loop_tracks.empty()) return events;
    for (std::size_t k = 0; t < timeline.horizon; ++k) {
        const Track& track = timeline.loop_tracks[k % timeline.loop_tracks.size()];
        events.push_back({t, track.id});
        t += track.duration;
    }
    return events;
}

} // namespace csaf::environment
