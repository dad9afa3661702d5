#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hbral/grammar.hpp"
#include "hbral/hmm.hpp"

// Two-layer hierarchical model: a room-level HMM whose every state owns
// a child HMM over that room's activity symbols. Child alphabets are
// disjoint, so each observed activity names its room outright - the
// room layer needs no separate emission matrix.

namespace hbral {

struct HierarchicalModel {
    HmmModel root;                  // states = rooms
    std::map<int, HmmModel> children;  // root state index -> activity model
};

struct SegmentDecode {
    std::size_t begin = 0;  // [begin, end) into the observation sequence
    std::size_t end = 0;
    int room_state = 0;
    StatePath activities;
};

struct HierarchicalDecode {
    StatePath rooms;  // one room state per observation
    std::vector<SegmentDecode> segments;
};

namespace detail {

// activity symbol -> (owning root state, symbol index in that child)
inline std::map<std::string, std::pair<int, int>> symbol_owners(
    const HierarchicalModel& h) {
    std::map<std::string, std::pair<int, int>> owners;
    for (const auto& [state, child] : h.children)
        for (std::size_t k = 0; k < child.symbol_labels.size(); ++k)
            owners.emplace(child.symbol_labels[k], std::pair{state, static_cast<int>(k)});
    return owners;
}

}  // namespace detail

inline ValidationReport validate_hierarchical(const HierarchicalModel& h) {
    ValidationReport report;
    report.merge(validate_model(h.root));

    for (int s = 0; s < h.root.n_states; ++s)
        if (!h.children.count(s))
            report.add("children", "root state " + std::to_string(s) +
                                       " has no child model");
    std::map<std::string, int> seen;
    for (const auto& [state, child] : h.children) {
        const std::string where = "child " + std::to_string(state);
        if (state < 0 || state >= h.root.n_states)
            report.add(where, "does not correspond to a root state");
        auto child_report = validate_model(child);
        for (auto& v : child_report.violations)
            report.add(where + " " + v.where, v.message);
        if (child.symbol_labels.size() != static_cast<std::size_t>(child.n_symbols))
            report.add(where, "every child symbol needs a label");
        for (const auto& label : child.symbol_labels) {
            auto [it, inserted] = seen.emplace(label, state);
            if (!inserted)
                report.add(where, "symbol '" + label + "' already belongs to child " +
                                      std::to_string(it->second));
        }
    }
    return report;
}

// Decodes a sequence of named activity observations. The room path is
// the Viterbi solution of the root model under the deterministic
// room-level emission (each activity observably belongs to one room),
// which pins the room at every step; activities are then decoded per
// maximal same-room segment with that room's child model.
inline HierarchicalDecode hierarchical_decode(const HierarchicalModel& h,
                                              const std::vector<std::string>& observations) {
    detail::check_shape(h.root);
    if (observations.empty()) throw std::invalid_argument("empty observation sequence");

    const auto owners = detail::symbol_owners(h);
    HierarchicalDecode result;
    result.rooms.states.reserve(observations.size());
    for (const auto& obs : observations) {
        auto it = owners.find(obs);
        if (it == owners.end())
            throw std::invalid_argument("unknown activity symbol '" + obs + "'");
        result.rooms.states.push_back(it->second.first);
    }

    const auto& rooms = result.rooms.states;
    double lp = detail::safe_log(h.root.initial[rooms[0]]);
    for (std::size_t t = 1; t < rooms.size(); ++t)
        lp += detail::safe_log(h.root.transition[rooms[t - 1]][rooms[t]]);
    result.rooms.log_probability = lp;

    for (std::size_t begin = 0; begin < rooms.size();) {
        std::size_t end = begin + 1;
        while (end < rooms.size() && rooms[end] == rooms[begin]) ++end;

        const HmmModel& child = h.children.at(rooms[begin]);
        std::vector<int> local;
        local.reserve(end - begin);
        for (std::size_t t = begin; t < end; ++t)
            local.push_back(owners.at(observations[t]).second);

        result.segments.push_back(
            {begin, end, rooms[begin], viterbi_decode(child, local)});
        begin = end;
    }
    return result;
}

// Default hierarchical model over a grammar hierarchy: uniform room
// dynamics, and per room a child whose states mirror its activities
// with identity emission. Useful as a starting point when no learned
// parameters exist.
inline HierarchicalModel make_hierarchical_model(const HbralHierarchy& h) {
    HierarchicalModel model;
    const int n_rooms = static_cast<int>(h.rooms.size());
    if (n_rooms == 0) throw std::invalid_argument("hierarchy has no rooms");

    model.root.n_states = n_rooms;
    model.root.n_symbols = n_rooms;
    model.root.transition.assign(n_rooms, Vector(n_rooms, 1.0 / n_rooms));
    model.root.initial.assign(n_rooms, 1.0 / n_rooms);
    model.root.emission.assign(n_rooms, Vector(n_rooms, 0.0));
    for (int i = 0; i < n_rooms; ++i) {
        model.root.emission[i][i] = 1.0;
        model.root.state_labels.push_back(h.rooms[i].room_type);
        model.root.symbol_labels.push_back(h.rooms[i].room_type);
    }

    for (int r = 0; r < n_rooms; ++r) {
        auto it = h.activities.find(h.rooms[r].room_type);
        if (it == h.activities.end() || it->second.empty())
            throw std::invalid_argument("room '" + h.rooms[r].room_type +
                                        "' has no activities");
        const auto& acts = it->second;
        const int n = static_cast<int>(acts.size());
        HmmModel child;
        child.n_states = n;
        child.n_symbols = n;
        child.transition.assign(n, Vector(n, 1.0 / n));
        child.initial.assign(n, 1.0 / n);
        child.emission.assign(n, Vector(n, 0.0));
        for (int i = 0; i < n; ++i) child.emission[i][i] = 1.0;
        child.state_labels = acts;
        child.symbol_labels = acts;
        model.children.emplace(r, std::move(child));
    }
    return model;
}

}  // namespace hbral
