#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hbral/anomaly.hpp"
#include "hbral/evaluation.hpp"
#include "hbral/grammar.hpp"
#include "hbral/hmm.hpp"

// JSON file formats:
//
//   model      {n_states, n_symbols, state_labels, symbol_labels,
//               transition, emission, initial}
//   hierarchy  {rooms: [{type, width?, length?, height?, objects}],
//               activities: {room: [...]}, activity_objects: {activity: [...]}}
//   scenario   {start: "HH:MM", end: "HH:MM", events: [...]} or a bare
//              event array; events are {time: "HH:MM", room, activity, objects}
//   thresholds {room: usual_minutes}   (PDT is derived, never stored)
//
// Loading a model rejects dimension mismatches and non-stochastic rows
// with row/entry-precise messages.

namespace hbral {

using json = nlohmann::json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- time of day --------------------------------------------------------

// "HH:MM", 24-hour; "24:00" is accepted as end-of-day.
inline int parse_hhmm(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 3 != text.size())
        throw ParseError("invalid time '" + text + "' (expected HH:MM)");
    int hours = 0, minutes = 0;
    for (char c : text.substr(0, colon)) {
        if (c < '0' || c > '9') throw ParseError("invalid time '" + text + "'");
        hours = hours * 10 + (c - '0');
    }
    for (char c : text.substr(colon + 1)) {
        if (c < '0' || c > '9') throw ParseError("invalid time '" + text + "'");
        minutes = minutes * 10 + (c - '0');
    }
    if (hours > 24 || minutes > 59 || (hours == 24 && minutes != 0))
        throw ParseError("time '" + text + "' out of range");
    return hours * 60 + minutes;
}

inline std::string format_hhmm(int minutes_since_midnight) {
    if (minutes_since_midnight < 0 || minutes_since_midnight > 24 * 60)
        throw std::invalid_argument("minutes " + std::to_string(minutes_since_midnight) +
                                    " outside one day");
    const int h = minutes_since_midnight / 60, m = minutes_since_midnight % 60;
    char buf[6];
    std::snprintf(buf, sizeof(buf), "%02d:%02d", h, m);
    return buf;
}

namespace io_detail {

inline json parse_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

template <typename F>
auto with_context(const std::string& origin, F&& f) {
    try {
        return f();
    } catch (const ParseError&) {
        throw;
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace io_detail

// --- model ---------------------------------------------------------------

// Structural parse only; run validate_model (or use model_from_json)
// before inference.
inline HmmModel model_from_json_raw(const json& j) {
    HmmModel m;
    m.n_states = j.at("n_states").get<int>();
    m.n_symbols = j.at("n_symbols").get<int>();
    m.transition = j.at("transition").get<Matrix>();
    m.emission = j.at("emission").get<Matrix>();
    m.initial = j.at("initial").get<Vector>();
    if (j.contains("state_labels"))
        m.state_labels = j.at("state_labels").get<std::vector<std::string>>();
    if (j.contains("symbol_labels"))
        m.symbol_labels = j.at("symbol_labels").get<std::vector<std::string>>();
    return m;
}

inline HmmModel model_from_json(const json& j) {
    HmmModel m = model_from_json_raw(j);
    auto report = validate_model(m);
    if (!report.ok()) {
        std::string what = "invalid model:";
        for (const auto& v : report.violations) what += "\n  " + v.text();
        throw ParseError(what);
    }
    return m;
}

inline json model_to_json(const HmmModel& m) {
    json j;
    j["n_states"] = m.n_states;
    j["n_symbols"] = m.n_symbols;
    j["state_labels"] = m.state_labels;
    j["symbol_labels"] = m.symbol_labels;
    j["transition"] = m.transition;
    j["emission"] = m.emission;
    j["initial"] = m.initial;
    return j;
}

// --- hierarchy -----------------------------------------------------------

inline HbralHierarchy hierarchy_from_json(const json& j) {
    HbralHierarchy h;
    for (const auto& room_json : j.at("rooms")) {
        RoomSpec room;
        room.room_type = room_json.at("type").get<std::string>();
        if (room_json.contains("width")) room.width_m = room_json["width"].get<double>();
        if (room_json.contains("length")) room.length_m = room_json["length"].get<double>();
        if (room_json.contains("height")) room.height_m = room_json["height"].get<double>();
        if (room_json.contains("objects"))
            room.objects = room_json["objects"].get<std::vector<std::string>>();
        h.rooms.push_back(std::move(room));
    }
    if (j.contains("activities"))
        h.activities =
            j.at("activities").get<std::map<std::string, std::vector<std::string>>>();
    if (j.contains("activity_objects"))
        h.activity_objects =
            j.at("activity_objects").get<std::map<std::string, std::vector<std::string>>>();
    return h;
}

inline json hierarchy_to_json(const HbralHierarchy& h) {
    json rooms = json::array();
    for (const auto& r : h.rooms) {
        json room;
        room["type"] = r.room_type;
        if (r.width_m) room["width"] = *r.width_m;
        if (r.length_m) room["length"] = *r.length_m;
        if (r.height_m) room["height"] = *r.height_m;
        room["objects"] = r.objects;
        rooms.push_back(std::move(room));
    }
    return json{{"rooms", std::move(rooms)},
                {"activities", h.activities},
                {"activity_objects", h.activity_objects}};
}

// --- scenario ------------------------------------------------------------

inline TimedEvent event_from_json(const json& j) {
    TimedEvent e;
    e.timestamp = parse_hhmm(j.at("time").get<std::string>());
    e.room = j.at("room").get<std::string>();
    e.activity = j.at("activity").get<std::string>();
    if (j.contains("objects"))
        for (const auto& obj : j.at("objects")) e.objects.insert(obj.get<std::string>());
    return e;
}

inline json event_to_json(const TimedEvent& e) {
    return json{{"time", format_hhmm(e.timestamp)},
                {"room", e.room},
                {"activity", e.activity},
                {"objects", e.objects}};
}

inline Scenario scenario_from_json(const json& j) {
    Scenario s;
    const json& events = j.is_array() ? j : j.at("events");
    for (const auto& event_json : events) s.events.push_back(event_from_json(event_json));

    if (j.is_object() && j.contains("start"))
        s.start = parse_hhmm(j.at("start").get<std::string>());
    else
        s.start = s.events.empty() ? 0 : s.events.front().timestamp;
    if (j.is_object() && j.contains("end"))
        s.end = parse_hhmm(j.at("end").get<std::string>());
    else
        s.end = s.events.empty() ? s.start : s.events.back().timestamp;
    return s;
}

inline json scenario_to_json(const Scenario& s) {
    json events = json::array();
    for (const auto& e : s.events) events.push_back(event_to_json(e));
    return json{{"start", format_hhmm(s.start)},
                {"end", format_hhmm(s.end)},
                {"events", std::move(events)}};
}

// --- simulation config -----------------------------------------------------

// Mirrors SimulationConfig: hierarchy and model inline, window in
// minutes since midnight, sigma and seed as numbers. Omitted scalar
// fields keep their defaults (07:00-12:00, one-minute steps, sigma 0.5).
inline SimulationConfig config_from_json(const json& j) {
    SimulationConfig config;
    config.hierarchy = hierarchy_from_json(j.at("hierarchy"));
    config.model = model_from_json(j.at("model"));
    if (j.contains("start_minutes")) config.start_minutes = j["start_minutes"].get<int>();
    if (j.contains("end_minutes")) config.end_minutes = j["end_minutes"].get<int>();
    if (j.contains("step_minutes")) config.step_minutes = j["step_minutes"].get<int>();
    if (j.contains("noise_sigma")) config.noise_sigma = j["noise_sigma"].get<double>();
    if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
    return config;
}

inline json config_to_json(const SimulationConfig& config) {
    return json{{"hierarchy", hierarchy_to_json(config.hierarchy)},
                {"model", model_to_json(config.model)},
                {"start_minutes", config.start_minutes},
                {"end_minutes", config.end_minutes},
                {"step_minutes", config.step_minutes},
                {"noise_sigma", config.noise_sigma},
                {"seed", config.seed}};
}

// --- thresholds ----------------------------------------------------------

inline std::map<std::string, int, RoomOrder> usual_minutes_from_json(const json& j) {
    std::map<std::string, int, RoomOrder> usual;
    for (const auto& [room, minutes] : j.items()) {
        if (room.rfind("_", 0) == 0) continue;  // comment keys
        usual[room] = minutes.get<int>();
    }
    return usual;
}

inline json usual_minutes_to_json(const std::map<std::string, int, RoomOrder>& usual) {
    json j = json::object();
    for (const auto& [room, minutes] : usual) j[room] = minutes;
    return j;
}

// --- reports and alerts ----------------------------------------------------

inline json report_to_json(const EvaluationReport& report, std::uint64_t seed) {
    return json{{"steps", report.steps},
                {"error_count", report.error_count},
                {"error_rate", report.error_rate},
                {"min_error", report.min_error},
                {"max_error", report.max_error},
                {"log_likelihood", report.log_likelihood},
                {"seed", seed}};
}

// One alerts.jsonl line: {time, room, observed, pdt, message}.
inline json alert_to_json(const Alert& alert) {
    return json{{"time", format_hhmm(alert.timestamp)},
                {"room", alert.room},
                {"observed", alert.observed_minutes},
                {"pdt", alert.threshold.pdt_minutes},
                {"message", alert.message}};
}

// --- file wrappers ---------------------------------------------------------

inline HmmModel load_model_file(const std::string& path) {
    return io_detail::with_context(path, [&] {
        return model_from_json(io_detail::parse_text(io_detail::read_file(path), path));
    });
}

inline HbralHierarchy load_hierarchy_file(const std::string& path) {
    return io_detail::with_context(path, [&] {
        return hierarchy_from_json(io_detail::parse_text(io_detail::read_file(path), path));
    });
}

inline Scenario load_scenario_file(const std::string& path) {
    return io_detail::with_context(path, [&] {
        return scenario_from_json(io_detail::parse_text(io_detail::read_file(path), path));
    });
}

inline std::map<std::string, int, RoomOrder> load_usual_minutes_file(
    const std::string& path) {
    return io_detail::with_context(path, [&] {
        return usual_minutes_from_json(
            io_detail::parse_text(io_detail::read_file(path), path));
    });
}

inline SimulationConfig load_config_file(const std::string& path) {
    return io_detail::with_context(path, [&] {
        return config_from_json(io_detail::parse_text(io_detail::read_file(path), path));
    });
}

}  // namespace hbral
