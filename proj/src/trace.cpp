#include "numgram/trace.hpp"

#include <fstream>

#include <json.hpp>

namespace numgram {

std::string to_string(EventKind k) {
    switch (k) {
        case EventKind::RoteAdd: return "RoteAdd";
        case EventKind::SegmentationRevision: return "SegmentationRevision";
        case EventKind::Reward: return "Reward";
        case EventKind::Punish: return "Punish";
        case EventKind::LicensingReorg: return "LicensingReorg";
        case EventKind::SemanticReorg: return "SemanticReorg";
    }
    return {};
}

EventKind parse_event_kind(std::string_view s) {
    if (s == "RoteAdd") return EventKind::RoteAdd;
    if (s == "SegmentationRevision") return EventKind::SegmentationRevision;
    if (s == "Reward") return EventKind::Reward;
    if (s == "Punish") return EventKind::Punish;
    if (s == "LicensingReorg") return EventKind::LicensingReorg;
    if (s == "SemanticReorg") return EventKind::SemanticReorg;
    throw std::runtime_error("unknown trace event kind: " + std::string(s));
}

std::string to_json_line(const TraceEvent& event) {
    nlohmann::json j;
    j["t"] = event.t;
    j["kind"] = to_string(event.kind);
    j["added"] = nlohmann::json::array();
    for (const auto& s : event.added) j["added"].push_back(Lexicon::format_line(s));
    j["removed"] = nlohmann::json::array();
    for (const auto& s : event.removed) j["removed"].push_back(Lexicon::format_line(s));
    if (event.ump)
        j["ump"] = {{"exponent", event.ump->exponent},
                    {"term", format_term(event.ump->semantics)}};
    else
        j["ump"] = nullptr;
    j["offending"] = event.offending;
    return j.dump();
}

TraceEvent from_json_line(std::string_view line) {
    nlohmann::json j = nlohmann::json::parse(line);
    TraceEvent event;
    event.t = j.at("t").get<int>();
    event.kind = parse_event_kind(j.at("kind").get<std::string>());
    for (const auto& s : j.at("added"))
        event.added.push_back(Lexicon::parse_line(s.get<std::string>()));
    for (const auto& s : j.at("removed"))
        event.removed.push_back(Lexicon::parse_line(s.get<std::string>()));
    if (!j.at("ump").is_null())
        event.ump = Ump{j["ump"].at("exponent").get<std::string>(),
                        parse_term(j["ump"].at("term").get<std::string>())};
    event.offending = j.at("offending").get<std::string>();
    return event;
}

void save_trace(const std::vector<TraceEvent>& trace, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write trace file: " + path.string());
    for (const auto& event : trace) out << to_json_line(event) << '\n';
}

std::vector<TraceEvent> load_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file: " + path.string());
    std::vector<TraceEvent> trace;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        trace.push_back(from_json_line(line));
    }
    return trace;
}

Lexicon replay_trace(const std::vector<TraceEvent>& trace) {
    Lexicon lex;
    for (const auto& event : trace) {
        for (const auto& s : event.removed) lex.remove(s);
        for (const auto& s : event.added) lex.add(s);
    }
    return lex;
}

}  // namespace numgram
