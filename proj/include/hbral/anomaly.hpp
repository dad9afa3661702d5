#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hbral/grammar.hpp"

// Dwell-time abnormality rule: a room stay is abnormal once it exceeds
// that room's Possible Delay Time, PDT = usual dwell + 30 minutes. The
// comparison is strict: spending exactly the PDT is still normal.
// Every violating room alerts (no first-hit-wins short circuit); rooms
// are reported in the order Kitchen, Bathroom, Bedroom, LivingRoom.

namespace hbral {

inline constexpr int kDefaultPdtMarginMinutes = 30;

struct PdtThreshold {
    std::string room;
    int usual_minutes = 0;
    int pdt_minutes = 0;
};

struct Alert {
    std::string room;
    int observed_minutes = 0;
    PdtThreshold threshold;
    int timestamp = 0;
    std::string message;
};

// "LivingRoom" -> "living room", for the human-readable alert line.
inline std::string display_room_name(const std::string& room) {
    std::string out;
    for (std::size_t i = 0; i < room.size(); ++i) {
        if (i > 0 && std::isupper(static_cast<unsigned char>(room[i]))) out += ' ';
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(room[i])));
    }
    return out;
}

inline std::string alert_message(const std::string& room) {
    return "alert abnormal activity " + display_room_name(room);
}

inline std::map<std::string, PdtThreshold, RoomOrder> compute_pdt(
    const std::map<std::string, int, RoomOrder>& usual,
    int margin_minutes = kDefaultPdtMarginMinutes) {
    if (margin_minutes < 0)
        throw std::invalid_argument("pdt margin must be non-negative, got " +
                                    std::to_string(margin_minutes));
    std::map<std::string, PdtThreshold, RoomOrder> thresholds;
    for (const auto& [room, minutes] : usual) {
        if (minutes < 0)
            throw std::invalid_argument("usual time for room '" + room +
                                        "' must be non-negative, got " +
                                        std::to_string(minutes));
        thresholds.emplace(room, PdtThreshold{room, minutes, minutes + margin_minutes});
    }
    return thresholds;
}

// Per-room margin override; rooms absent from `margins` keep the
// default 30 minutes.
inline std::map<std::string, PdtThreshold, RoomOrder> compute_pdt(
    const std::map<std::string, int, RoomOrder>& usual,
    const std::map<std::string, int, RoomOrder>& margins,
    int default_margin = kDefaultPdtMarginMinutes) {
    std::map<std::string, PdtThreshold, RoomOrder> thresholds;
    for (const auto& [room, minutes] : usual) {
        auto it = margins.find(room);
        const int margin = it != margins.end() ? it->second : default_margin;
        std::map<std::string, int, RoomOrder> one;
        one.emplace(room, minutes);
        thresholds.merge(compute_pdt(one, margin));
    }
    return thresholds;
}

// Usual dwell as the plain mean of per-room dwell over baseline
// scenarios (rounded to whole minutes). Rooms never visited get 0.
inline std::map<std::string, int, RoomOrder> usual_dwell_from_baselines(
    const std::vector<Scenario>& baselines) {
    if (baselines.empty())
        throw std::invalid_argument("need at least one baseline scenario");
    std::map<std::string, int, RoomOrder> totals;
    for (const auto& s : baselines)
        for (const auto& [room, minutes] : accumulate_dwell(s)) totals[room] += minutes;
    std::map<std::string, int, RoomOrder> usual;
    for (const auto& [room, total] : totals)
        usual[room] = (total + static_cast<int>(baselines.size()) / 2) /
                      static_cast<int>(baselines.size());
    return usual;
}

// One alert per room whose observed dwell strictly exceeds its PDT.
// `at_minutes` stamps the alerts (typically the scenario end).
inline std::vector<Alert> detect(
    const std::map<std::string, int, RoomOrder>& dwell,
    const std::map<std::string, PdtThreshold, RoomOrder>& thresholds,
    int at_minutes = 0) {
    std::vector<Alert> alerts;
    for (const auto& [room, observed] : dwell) {
        auto it = thresholds.find(room);
        if (it == thresholds.end())
            throw std::invalid_argument("no threshold for room '" + room + "'");
        if (observed > it->second.pdt_minutes)
            alerts.push_back({room, observed, it->second, at_minutes,
                              alert_message(room)});
    }
    return alerts;
}

// Online variant: feed time-ordered events, get alerts the moment a
// stay is known to have outlived its PDT. The alert is stamped with
// the crossing time (stay entry + PDT), not the time it was noticed.
// At most one alert per continuous stay; a new stay in the same room
// starts a fresh budget.
class StreamDetector {
public:
    explicit StreamDetector(std::map<std::string, PdtThreshold, RoomOrder> thresholds)
        : thresholds_(std::move(thresholds)) {}

    std::vector<Alert> push(const TimedEvent& event) {
        if (last_time_ && event.timestamp < *last_time_)
            throw std::invalid_argument(
                "out-of-order event: timestamp " + std::to_string(event.timestamp) +
                " after " + std::to_string(*last_time_));
        last_time_ = event.timestamp;

        std::vector<Alert> alerts = advance(event.timestamp);
        if (!stay_ || stay_->room != event.room) {
            stay_ = OpenStay{event.room, event.timestamp, false,
                             &threshold_for(event.room)};
        }
        return alerts;
    }

    // Closes the feed at `end_minutes` and reports any crossing the
    // final stay reached by then.
    std::vector<Alert> finish(int end_minutes) {
        if (last_time_ && end_minutes < *last_time_)
            throw std::invalid_argument(
                "out-of-order event: end " + std::to_string(end_minutes) + " after " +
                std::to_string(*last_time_));
        std::vector<Alert> alerts = advance(end_minutes);
        stay_.reset();
        last_time_ = end_minutes;
        return alerts;
    }

private:
    struct OpenStay {
        std::string room;
        int enter = 0;
        bool alerted = false;
        const PdtThreshold* threshold = nullptr;
    };

    const PdtThreshold& threshold_for(const std::string& room) const {
        auto it = thresholds_.find(room);
        if (it == thresholds_.end())
            throw std::invalid_argument("no threshold for room '" + room + "'");
        return it->second;
    }

    std::vector<Alert> advance(int now) {
        std::vector<Alert> alerts;
        if (stay_ && !stay_->alerted && now - stay_->enter > stay_->threshold->pdt_minutes) {
            stay_->alerted = true;
            alerts.push_back({stay_->room, now - stay_->enter, *stay_->threshold,
                              stay_->enter + stay_->threshold->pdt_minutes,
                              alert_message(stay_->room)});
        }
        return alerts;
    }

    std::map<std::string, PdtThreshold, RoomOrder> thresholds_;
    std::optional<OpenStay> stay_;
    std::optional<int> last_time_;
};

// Convenience: run the stream detector over a whole scenario.
inline std::vector<Alert> stream_detect(
    const Scenario& s,
    const std::map<std::string, PdtThreshold, RoomOrder>& thresholds) {
    StreamDetector detector(thresholds);
    std::vector<Alert> alerts;
    for (const auto& e : s.events)
        for (auto& a : detector.push(e)) alerts.push_back(std::move(a));
    for (auto& a : detector.finish(s.end)) alerts.push_back(std::move(a));
    return alerts;
}

}  // namespace hbral
