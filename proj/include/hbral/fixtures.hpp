#pragma once

#include <cstdlib>
#include <string>

#include "hbral/json_io.hpp"

// Built-in copies of the shipped fixture files (fixtures/*.json), so
// `reproduce-paper` runs with zero arguments even from an installed
// binary. Setting HBRAL_FIXTURES to a directory containing
// hierarchy.json, model.json and thresholds.json overrides them.

namespace hbral::fixtures {

inline const char* model_json_text() {
    return R"json({
  "_comment": "Three-scenario room model. Transition and initial rows are the published values; emission rows are the cyclic rotations of the single published row (0.1, 0.7, 0.2) so that each state favors its own symbol at 0.7.",
  "n_states": 3,
  "n_symbols": 3,
  "state_labels": ["Kitchen", "LivingRoom", "Bathroom"],
  "symbol_labels": ["Kitchen", "LivingRoom", "Bathroom"],
  "transition": [
    [0.1, 0.8, 0.1],
    [0.05, 0.9, 0.05],
    [0.05, 0.15, 0.8]
  ],
  "emission": [
    [0.7, 0.2, 0.1],
    [0.1, 0.7, 0.2],
    [0.2, 0.1, 0.7]
  ],
  "initial": [0.7, 0.2, 0.1]
}
)json";
}

inline const char* hierarchy_json_text() {
    return R"json({
  "rooms": [
    {
      "type": "Kitchen",
      "width": 3.0,
      "length": 4.0,
      "height": 2.5,
      "objects": ["Refrigerator", "Coffee filter", "Stove", "Dishwasher"]
    },
    {
      "type": "Bathroom",
      "width": 2.0,
      "length": 2.5,
      "height": 2.5,
      "objects": ["Bath", "Sink", "Toilet"]
    },
    {
      "type": "Bedroom",
      "width": 3.5,
      "length": 4.0,
      "height": 2.5,
      "objects": ["Clothes", "Radiator", "Bed", "Medication"]
    },
    {
      "type": "LivingRoom",
      "width": 5.0,
      "length": 6.0,
      "height": 2.5,
      "objects": ["TV", "Radiator", "Sofa", "Coffee table"]
    }
  ],
  "activities": {
    "Kitchen": ["preparing a meal", "eating", "drinking", "using a stove", "washing"],
    "Bathroom": ["taking a shower", "taking a bath", "toileting"],
    "Bedroom": ["sleeping", "dressing", "reading a book", "waking up", "taking medication"],
    "LivingRoom": ["watching a TV", "staying in a bank", "reading a journal book", "drinking a coffee"]
  },
  "activity_objects": {
    "preparing a meal": ["Stove", "Refrigerator"],
    "eating": ["Refrigerator"],
    "drinking": ["Coffee filter"],
    "using a stove": ["Stove"],
    "washing": ["Dishwasher"],
    "taking a shower": ["Bath"],
    "taking a bath": ["Bath"],
    "toileting": ["Toilet"],
    "sleeping": ["Bed"],
    "dressing": ["Clothes"],
    "reading a book": ["Bed"],
    "waking up": ["Bed"],
    "taking medication": ["Medication"],
    "watching a TV": ["TV"],
    "staying in a bank": ["Sofa"],
    "reading a journal book": ["Sofa"],
    "drinking a coffee": ["Coffee table"]
  }
}
)json";
}

inline const char* day_scenario_json_text() {
    return R"json({
  "start": "07:00",
  "end": "12:00",
  "events": [
    {"time": "07:00", "room": "Bedroom", "activity": "waking up", "objects": ["Bed"]},
    {"time": "07:10", "room": "Bathroom", "activity": "toileting", "objects": ["Toilet"]},
    {"time": "08:00", "room": "Kitchen", "activity": "preparing a meal", "objects": ["Stove", "Refrigerator"]},
    {"time": "08:30", "room": "Kitchen", "activity": "washing", "objects": ["Dishwasher"]},
    {"time": "09:15", "room": "LivingRoom", "activity": "watching a TV", "objects": ["TV"]},
    {"time": "11:00", "room": "Kitchen", "activity": "preparing a meal", "objects": ["Stove", "Refrigerator"]},
    {"time": "11:45", "room": "Bedroom", "activity": "taking medication", "objects": ["Medication"]}
  ]
}
)json";
}

inline const char* thresholds_json_text() {
    return R"json({
  "_comment": "Usual minutes spent per room; the detector derives PDT = usual + 30.",
  "Kitchen": 60,
  "Bathroom": 45,
  "Bedroom": 120,
  "LivingRoom": 60
}
)json";
}

inline std::string override_dir() {
    const char* dir = std::getenv("HBRAL_FIXTURES");
    return dir ? dir : "";
}

inline HmmModel default_model() {
    const auto dir = override_dir();
    if (!dir.empty()) return load_model_file(dir + "/model.json");
    return model_from_json(io_detail::parse_text(model_json_text(), "builtin model"));
}

inline HbralHierarchy default_hierarchy() {
    const auto dir = override_dir();
    if (!dir.empty()) return load_hierarchy_file(dir + "/hierarchy.json");
    return hierarchy_from_json(
        io_detail::parse_text(hierarchy_json_text(), "builtin hierarchy"));
}

inline Scenario day_scenario() {
    return scenario_from_json(
        io_detail::parse_text(day_scenario_json_text(), "builtin day scenario"));
}

inline std::map<std::string, int, RoomOrder> default_usual_minutes() {
    const auto dir = override_dir();
    if (!dir.empty()) return load_usual_minutes_file(dir + "/thresholds.json");
    return usual_minutes_from_json(
        io_detail::parse_text(thresholds_json_text(), "builtin thresholds"));
}

}  // namespace hbral::fixtures
