#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hbral/validation.hpp"

// The Home-By-Room Activities Language: a four-level hierarchy
// (home -> room -> activity -> objects) plus timed scenarios over it.
// Activities are owned by exactly one room, every activity uses at
// least one object, and an event must name room, activity and objects
// together (no level skipping). Room dimensions are stored but never
// interpreted. Names are case-sensitive exact strings.

namespace hbral {

struct RoomSpec {
    std::string room_type;  // "Kitchen", "Bathroom", ... extensible via config
    std::optional<double> width_m;
    std::optional<double> length_m;
    std::optional<double> height_m;
    std::vector<std::string> objects;
};

struct HbralHierarchy {
    std::vector<RoomSpec> rooms;
    // room_type -> activity names performed in that room
    std::map<std::string, std::vector<std::string>> activities;
    // activity name -> objects it uses (1..n, conjunctive)
    std::map<std::string, std::vector<std::string>> activity_objects;

    const RoomSpec* find_room(const std::string& room_type) const {
        for (const auto& r : rooms)
            if (r.room_type == room_type) return &r;
        return nullptr;
    }
};

// All timestamps are integer minutes since midnight; dwell arithmetic
// stays exact that way.
struct TimedEvent {
    int timestamp = 0;
    std::string room;
    std::string activity;
    std::set<std::string> objects;
};

struct Scenario {
    std::vector<TimedEvent> events;  // non-decreasing timestamps
    int start = 0;
    int end = 0;
};

// A maximal run of consecutive events in the same room. Occupancy
// extends from the first event of the run to the next run's start (or
// the scenario end for the last run).
struct RoomStay {
    std::string room;
    int enter = 0;
    int exit = 0;

    int dwell() const { return exit - enter; }
};

// Rooms in the order the detection algorithm evaluates them; rooms not
// listed here sort after, alphabetically.
inline int canonical_room_rank(const std::string& room) {
    if (room == "Kitchen") return 0;
    if (room == "Bathroom") return 1;
    if (room == "Bedroom") return 2;
    if (room == "LivingRoom") return 3;
    return 4;
}

struct RoomOrder {
    bool operator()(const std::string& a, const std::string& b) const {
        const int ra = canonical_room_rank(a), rb = canonical_room_rank(b);
        return ra != rb ? ra < rb : a < b;
    }
};

// Builds the activity -> owning room map. On a valid hierarchy this is
// a total function over all listed activities.
inline std::map<std::string, std::string> activity_room_map(const HbralHierarchy& h) {
    std::map<std::string, std::string> owner;
    for (const auto& [room, acts] : h.activities)
        for (const auto& a : acts) owner.emplace(a, room);
    return owner;
}

inline ValidationReport validate_hierarchy(const HbralHierarchy& h) {
    ValidationReport report;

    std::set<std::string> room_types;
    for (const auto& r : h.rooms) {
        const std::string where = "room '" + r.room_type + "'";
        if (!room_types.insert(r.room_type).second)
            report.add(where, "declared more than once");
        const std::pair<const char*, std::optional<double>> dims[] = {
            {"width", r.width_m}, {"length", r.length_m}, {"height", r.height_m}};
        for (const auto& dim : dims)
            if (dim.second && *dim.second <= 0.0)
                report.add(where, std::string(dim.first) + " must be positive, got " +
                                      std::to_string(*dim.second));
    }

    // Each activity belongs to exactly one room.
    std::map<std::string, std::vector<std::string>> rooms_of;
    for (const auto& [room, acts] : h.activities) {
        if (!room_types.count(room))
            report.add("activities", "listed for unknown room '" + room + "'");
        for (const auto& a : acts) rooms_of[a].push_back(room);
    }
    for (const auto& [activity, rooms] : rooms_of)
        if (rooms.size() > 1)
            report.add("activity '" + activity + "'",
                       "appears in " + std::to_string(rooms.size()) + " rooms");
    for (const auto& [activity, objects] : h.activity_objects)
        if (!rooms_of.count(activity))
            report.add("activity '" + activity + "'",
                       "has objects but is not listed under any room");

    // Every activity uses 1..n objects, all present in its room.
    for (const auto& [room, acts] : h.activities) {
        const RoomSpec* spec = h.find_room(room);
        for (const auto& a : acts) {
            const std::string where = "activity '" + a + "'";
            auto it = h.activity_objects.find(a);
            if (it == h.activity_objects.end() || it->second.empty()) {
                report.add(where, "uses no objects (each activity needs at least one)");
                continue;
            }
            if (!spec) continue;  // unknown room already reported
            for (const auto& obj : it->second) {
                bool found = false;
                for (const auto& o : spec->objects)
                    if (o == obj) { found = true; break; }
                if (!found)
                    report.add(where, "uses object '" + obj + "' absent from room '" +
                                          room + "'");
            }
        }
    }
    return report;
}

// Flags every event whose (room, activity) or (activity, object)
// pairing violates the hierarchy, events skipping a level (no objects),
// out-of-window timestamps and ordering problems.
inline ValidationReport validate_scenario(const HbralHierarchy& h, const Scenario& s) {
    ValidationReport report;
    const auto owner = activity_room_map(h);

    if (s.end < s.start)
        report.add("scenario", "end " + std::to_string(s.end) + " precedes start " +
                                   std::to_string(s.start));

    int previous = s.start;
    for (std::size_t i = 0; i < s.events.size(); ++i) {
        const TimedEvent& e = s.events[i];
        const std::string where = "event " + std::to_string(i);

        if (e.timestamp < s.start || e.timestamp > s.end)
            report.add(where, "timestamp " + std::to_string(e.timestamp) +
                                  " outside [" + std::to_string(s.start) + ", " +
                                  std::to_string(s.end) + "]");
        if (i > 0 && e.timestamp < previous)
            report.add(where, "timestamp " + std::to_string(e.timestamp) +
                                  " precedes previous event at " +
                                  std::to_string(previous));
        previous = e.timestamp;

        if (!h.find_room(e.room)) {
            report.add(where, "unknown room '" + e.room + "'");
            continue;
        }
        auto it = owner.find(e.activity);
        if (it == owner.end()) {
            report.add(where, "unknown activity '" + e.activity + "'");
            continue;
        }
        if (it->second != e.room)
            report.add(where, "activity '" + e.activity + "' belongs to room '" +
                                  it->second + "', not '" + e.room + "'");
        if (e.objects.empty())
            report.add(where, "level skip: activity without object");
        auto objs = h.activity_objects.find(e.activity);
        for (const auto& obj : e.objects) {
            bool allowed = objs != h.activity_objects.end();
            if (allowed) {
                allowed = false;
                for (const auto& o : objs->second)
                    if (o == obj) { allowed = true; break; }
            }
            if (!allowed)
                report.add(where, "object '" + obj + "' is not used by activity '" +
                                      e.activity + "'");
        }
    }
    return report;
}

// Partitions events by room, preserving order. Rooms with no events do
// not appear. Each part keeps the original start/end window.
inline std::map<std::string, Scenario, RoomOrder> split_by_room(const Scenario& s) {
    std::map<std::string, Scenario, RoomOrder> parts;
    for (const auto& e : s.events) {
        auto it = parts.try_emplace(e.room, Scenario{{}, s.start, s.end}).first;
        it->second.events.push_back(e);
    }
    return parts;
}

inline std::vector<RoomStay> room_stays(const Scenario& s) {
    std::vector<RoomStay> stays;
    for (const auto& e : s.events) {
        if (!stays.empty() && stays.back().room == e.room) continue;
        if (!stays.empty()) stays.back().exit = e.timestamp;
        stays.push_back({e.room, e.timestamp, s.end});
    }
    return stays;
}

// Observed dwell per room: the tic/toc accounting. Each maximal
// same-room run of events occupies the room until the next run starts;
// the last run closes at the scenario end. Totals across rooms sum to
// (end - first event timestamp) exactly.
inline std::map<std::string, int, RoomOrder> accumulate_dwell(const Scenario& s) {
    std::map<std::string, int, RoomOrder> dwell;
    for (const auto& stay : room_stays(s)) dwell[stay.room] += stay.dwell();
    return dwell;
}

}  // namespace hbral
