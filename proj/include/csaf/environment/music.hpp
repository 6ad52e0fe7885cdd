#pragma once

#include <optional>
#include <string>
#include <vector>

namespace csaf::environment {

struct Track {
    std::string id;
    double duration = 0.0; ///< s
    double bpm = 0.0;
};

/// Background music as a timeline: an optional intro played once, then loop tracks cycled.
struct MusicTimeline {
    std::optional<Track> intro;
    std::vector<Track> loop_tracks;
    double horizon = 0.0; ///< s
};

struct MusicEvent {
    double start = 0.0;
    std::string track_id;
    bool operator==(const MusicEvent&) const = default;
};

void validate(const MusicTimeline& timeline);

/// Track starts strictly before the horizon, sorted by start time.
std::vector<MusicEvent> playlist_schedule(const MusicTimeline& timeline);

} // namespace csaf::environment
