#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "numgram/grammar.hpp"
#include "numgram/lexicon.hpp"
#include "numgram/teacher.hpp"

namespace numgram {

enum class EventKind {
    RoteAdd,
    SegmentationRevision,
    Reward,
    Punish,
    LicensingReorg,
    SemanticReorg,
};

std::string to_string(EventKind k);
EventKind parse_event_kind(std::string_view s);

/// Audit record of one learning event. Folding added/removed over the empty
/// lexicon, event by event, reconstructs the learner's final lexicon.
struct TraceEvent {
    int t = 0;
    EventKind kind = EventKind::RoteAdd;
    std::vector<Sign> added;
    std::vector<Sign> removed;
    std::optional<Ump> ump;
    std::string offending;
};

std::string to_json_line(const TraceEvent& event);
TraceEvent from_json_line(std::string_view line);

void save_trace(const std::vector<TraceEvent>& trace, const std::filesystem::path& path);
std::vector<TraceEvent> load_trace(const std::filesystem::path& path);

/// Event-sourcing replay: applies removals then additions of every event in
/// order, starting from the empty lexicon.
Lexicon replay_trace(const std::vector<TraceEvent>& trace);

}  // namespace numgram
