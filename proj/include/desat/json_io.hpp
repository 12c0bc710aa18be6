#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "desat/attack_structure.hpp"
#include "desat/harm.hpp"
#include "desat/observer.hpp"
#include "desat/plant.hpp"
#include "desat/supremal.hpp"

namespace desat {

namespace detail {

/// "line L, column C" for a byte offset into `text`.
inline std::string line_anchor(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

/// Best-effort anchor for a semantic error: the first line containing the
/// offending token, if any.
inline std::string token_anchor(const std::string& text, const std::string& token) {
    const std::string quoted = "\"" + token + "\"";
    std::size_t pos = text.find(quoted);
    if (pos == std::string::npos) return "";
    return " (" + line_anchor(text, pos) + ")";
}

inline void reject_unknown_keys(const nlohmann::json& obj, std::initializer_list<const char*> known,
                                const std::string& text, const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok)
            throw MalformedInputError("unknown key \"" + key + "\" in " + where +
                                      token_anchor(text, key));
    }
}

inline std::vector<std::string> string_list(const nlohmann::json& arr, const std::string& text,
                                            const std::string& where) {
    if (!arr.is_array())
        throw MalformedInputError(where + " must be a list of strings");
    std::vector<std::string> out;
    for (const auto& item : arr) {
        if (!item.is_string())
            throw MalformedInputError(where + " must contain only strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

} // namespace detail

/// Parses a plant description. Every structural rule is enforced here:
/// unknown keys, duplicate or undeclared names, nondeterministic or duplicate
/// transitions all fail with an anchored message.
inline PlantModel parse_plant_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedInputError("plant file is not valid JSON at " +
                                  detail::line_anchor(text, e.byte ? e.byte - 1 : 0) + ": " +
                                  e.what());
    }
    if (!doc.is_object()) throw MalformedInputError("plant file must be a JSON object");
    detail::reject_unknown_keys(doc, {"states", "initial", "events", "transitions"}, text,
                                "plant file");
    for (const char* key : {"states", "initial", "events", "transitions"})
        if (!doc.contains(key))
            throw MalformedInputError(std::string("plant file is missing key \"") + key + "\"");

    PlantModel plant;
    plant.states = detail::string_list(doc["states"], text, "\"states\"");
    if (!doc["initial"].is_string())
        throw MalformedInputError("\"initial\" must be a state name");
    plant.initial = doc["initial"].get<std::string>();

    const auto& events = doc["events"];
    if (!events.is_object()) throw MalformedInputError("\"events\" must be an object");
    detail::reject_unknown_keys(events, {"observable", "unobservable", "insertable", "erasable"},
                                text, "\"events\"");
    for (const char* key : {"observable", "unobservable", "insertable", "erasable"})
        if (!events.contains(key))
            throw MalformedInputError(std::string("\"events\" is missing key \"") + key + "\"");
    auto to_events = [&](const char* key) {
        std::vector<EventId> out;
        for (auto& name : detail::string_list(events[key], text, std::string("\"") + key + "\""))
            out.push_back(EventId(std::move(name)));
        return out;
    };
    plant.observable = to_events("observable");
    plant.unobservable = to_events("unobservable");
    plant.insertable = to_events("insertable");
    plant.erasable = to_events("erasable");

    if (!doc["transitions"].is_array())
        throw MalformedInputError("\"transitions\" must be a list of [src, event, dst] triples");
    for (const auto& t : doc["transitions"]) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_string() || !t[1].is_string() ||
            !t[2].is_string())
            throw MalformedInputError("each transition must be a [src, event, dst] string triple");
        const StateId src = t[0].get<std::string>();
        const EventId e(t[1].get<std::string>());
        const StateId dst = t[2].get<std::string>();
        auto [it, fresh] = plant.transitions.emplace(std::make_pair(src, e), dst);
        if (!fresh)
            throw MalformedInputError(
                "duplicate transition from \"" + src + "\" on \"" + e.name + "\"" +
                (it->second == dst ? "" : " with a different target (nondeterministic)") +
                detail::token_anchor(text, src));
    }

    try {
        plant.validate();
    } catch (const MalformedInputError& e) {
        throw MalformedInputError(std::string(e.what()) +
                                  detail::token_anchor(text, "states"));
    }
    return plant;
}

/// Parses a misleading-relation description against `plant`:
/// {"kind": "critical", "states": [...]} or
/// {"kind": "explicit", "pairs": [[[...states], [...states]], ...]}.
inline MisleadingRelation parse_relation_json(const std::string& text, const PlantModel& plant) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedInputError("relation file is not valid JSON at " +
                                  detail::line_anchor(text, e.byte ? e.byte - 1 : 0) + ": " +
                                  e.what());
    }
    if (!doc.is_object()) throw MalformedInputError("relation file must be a JSON object");
    if (!doc.contains("kind") || !doc["kind"].is_string())
        throw MalformedInputError("relation file needs a \"kind\" of \"critical\" or \"explicit\"");
    const std::string kind = doc["kind"].get<std::string>();

    auto check_state = [&](const StateId& x) {
        if (!plant.has_state(x))
            throw MalformedInputError("relation mentions unknown plant state \"" + x + "\"" +
                                      detail::token_anchor(text, x));
    };

    if (kind == "critical") {
        detail::reject_unknown_keys(doc, {"kind", "states"}, text, "relation file");
        if (!doc.contains("states"))
            throw MalformedInputError("critical relation needs a \"states\" list");
        std::set<StateId> crit;
        for (auto& x : detail::string_list(doc["states"], text, "\"states\"")) {
            check_state(x);
            crit.insert(std::move(x));
        }
        return MisleadingRelation::critical(std::move(crit));
    }
    if (kind == "explicit") {
        detail::reject_unknown_keys(doc, {"kind", "pairs"}, text, "relation file");
        if (!doc.contains("pairs") || !doc["pairs"].is_array())
            throw MalformedInputError("explicit relation needs a \"pairs\" list");
        std::set<std::pair<Estimate, Estimate>> pairs;
        for (const auto& p : doc["pairs"]) {
            if (!p.is_array() || p.size() != 2)
                throw MalformedInputError("each pair must be [[...states], [...states]]");
            std::vector<StateId> actual = detail::string_list(p[0], text, "pair");
            std::vector<StateId> shown = detail::string_list(p[1], text, "pair");
            if (actual.empty() || shown.empty())
                throw MalformedInputError("estimates in a pair must be non-empty");
            for (const auto& x : actual) check_state(x);
            for (const auto& x : shown) check_state(x);
            pairs.emplace(Estimate::of(std::move(actual)), Estimate::of(std::move(shown)));
        }
        return MisleadingRelation::explicit_pairs(std::move(pairs));
    }
    throw MalformedInputError("unknown relation kind \"" + kind + "\"");
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedInputError("cannot open file \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline PlantModel load_plant_file(const std::string& path) {
    try {
        return parse_plant_json(read_file(path));
    } catch (const MalformedInputError& e) {
        throw MalformedInputError(path + ": " + e.what());
    }
}

inline MisleadingRelation load_relation_file(const std::string& path, const PlantModel& plant) {
    try {
        return parse_relation_json(read_file(path), plant);
    } catch (const MalformedInputError& e) {
        throw MalformedInputError(path + ": " + e.what());
    }
}

// --- canonical dumps -------------------------------------------------------
// Object keys are sorted by the JSON library and every list below is emitted
// in canonical order, so serializing the same value twice is byte-identical.

inline nlohmann::json observer_json(const ObserverAutomaton& obs) {
    nlohmann::json doc;
    doc["type"] = "observer";
    doc["initial"] = obs.initial().to_string();
    auto& alphabet = doc["alphabet"] = nlohmann::json::array();
    for (const EventId& e : obs.alphabet()) alphabet.push_back(e.name);
    auto& states = doc["states"] = nlohmann::json::array();
    for (const Estimate& b : obs.states()) states.push_back(b.to_string());
    auto& trans = doc["transitions"] = nlohmann::json::array();
    obs.for_each_transition([&](const Estimate& src, const EventId& e, const Estimate& dst) {
        trans.push_back({src.to_string(), e.name, dst.to_string()});
    });
    return doc;
}

inline nlohmann::json bound_json(const std::optional<int>& bound) {
    if (bound) return *bound;
    return "unbounded";
}

inline nlohmann::json attack_structure_json(const AttackStructure& a) {
    nlohmann::json doc;
    doc["type"] = "attack-structure";
    doc["bound"] = bound_json(a.bound);
    doc["initial"] = a.automaton.initial().to_string();
    auto& alphabet = doc["alphabet"] = nlohmann::json::array();
    for (const AttackEvent& e : a.automaton.alphabet()) alphabet.push_back(e.label());
    auto& states = doc["states"] = nlohmann::json::array();
    for (const StatePair& r : a.automaton.states()) states.push_back(r.to_string());
    auto& stealthy = doc["stealthy"] = nlohmann::json::array();
    for (const StatePair& r : a.stealthy_states) stealthy.push_back(r.to_string());
    auto& exposing = doc["exposing"] = nlohmann::json::array();
    for (const StatePair& r : a.exposing_states) exposing.push_back(r.to_string());
    auto& trans = doc["transitions"] = nlohmann::json::array();
    a.automaton.for_each_transition(
        [&](const StatePair& src, const AttackEvent& e, const StatePair& dst) {
            trans.push_back({src.to_string(), e.label(), dst.to_string()});
        });
    return doc;
}

inline nlohmann::json supremal_json(const SupremalSubstructure& sub) {
    nlohmann::json doc;
    doc["type"] = "supremal-substructure";
    doc["bound"] = bound_json(sub.host.bound);
    doc["initial"] = sub.automaton.initial().to_string();
    auto& alphabet = doc["alphabet"] = nlohmann::json::array();
    for (const AttackEvent& e : sub.automaton.alphabet()) alphabet.push_back(e.label());
    auto& states = doc["states"] = nlohmann::json::array();
    for (const StatePair& r : sub.automaton.states()) states.push_back(r.to_string());
    auto& pre = doc["preempting"] = nlohmann::json::array();
    for (const StatePair& r : sub.preempting) pre.push_back(r.to_string());
    auto& non = doc["non_preempting"] = nlohmann::json::array();
    for (const StatePair& r : sub.non_preempting) non.push_back(r.to_string());
    auto& trans = doc["transitions"] = nlohmann::json::array();
    sub.automaton.for_each_transition(
        [&](const StatePair& src, const AttackEvent& e, const StatePair& dst) {
            trans.push_back({src.to_string(), e.label(), dst.to_string()});
        });
    return doc;
}

inline nlohmann::json word_json(const AttackWord& w) {
    nlohmann::json arr = nlohmann::json::array();
    for (const AttackEvent& a : w) arr.push_back(a.label());
    return arr;
}

inline nlohmann::json observation_json(const std::vector<EventId>& w) {
    nlohmann::json arr = nlohmann::json::array();
    for (const EventId& e : w) arr.push_back(e.name);
    return arr;
}

inline nlohmann::json verdict_json(const HarmVerdict& verdict, const std::optional<int>& bound) {
    nlohmann::json doc;
    doc["type"] = "harm-verdict";
    doc["bound"] = bound_json(bound);
    doc["harmful"] = verdict.harmful;
    auto& ws = doc["witnesses"] = nlohmann::json::array();
    for (const HarmWitness& w : verdict.witnesses) {
        nlohmann::json entry;
        entry["state"] = w.state.to_string();
        entry["word"] = word_json(w.word);
        entry["observation"] = observation_json(w.observation);
        entry["corrupted"] = observation_json(w.corrupted);
        ws.push_back(std::move(entry));
    }
    auto& un = doc["unwitnessed"] = nlohmann::json::array();
    for (const StatePair& r : verdict.unwitnessed) un.push_back(r.to_string());
    return doc;
}

/// Serializes with a trailing newline; the canonical on-disk form.
inline std::string dump_json(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

} // namespace desat
