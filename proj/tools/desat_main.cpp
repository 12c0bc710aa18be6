#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "desat/desat.hpp"

namespace {

using namespace desat;

// --- small utilities --------------------------------------------------------

/// Deterministic generator for the seeded walk; never draws from the host's
/// random machinery so identical seeds replay identical sessions everywhere.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e9b5ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::size_t below(std::size_t n) { return n ? static_cast<std::size_t>(next() % n) : 0; }
};

void write_text_output(const std::string& path, const std::string& content,
                       const std::string& what) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MalformedInputError("cannot write " + what + " file \"" + path + "\"");
    out << content;
}

void warn_unreachable_states(const PlantModel& plant) {
    const std::set<StateId> reachable = plant.reachable_states();
    for (const StateId& x : plant.states)
        if (!reachable.count(x))
            std::cerr << "warning: plant state \"" << x << "\" is unreachable\n";
}

std::string bound_label(const std::optional<int>& bound) {
    if (bound) return "bound " + std::to_string(*bound);
    return "unbounded";
}

std::string escapes_label(const std::vector<AttackWord>& escapes) {
    std::string out;
    for (std::size_t i = 0; i < escapes.size(); ++i) {
        if (i) out += ", ";
        out += word_label(escapes[i]);
    }
    return out;
}

/// Shared per-command output knobs. stdout carries the text report unless the
/// JSON or DOT stream was explicitly routed there.
struct OutputFlags {
    std::string json_path;
    std::string dot_path;

    bool stdout_taken() const { return json_path == "-" || dot_path == "-"; }

    void require_single_stdout() const {
        if (json_path == "-" && dot_path == "-")
            throw MalformedInputError("--json - and --dot - both claim standard output");
    }

    void add_to(CLI::App* cmd) {
        cmd->add_option("--json", json_path,
                        "write the result as canonical JSON to this path (\"-\" for stdout)");
        cmd->add_option("--dot", dot_path,
                        "write a Graphviz rendering to this path (\"-\" for stdout)");
    }

    void emit(const std::string& text, const nlohmann::json* doc,
              const std::string& dot) const {
        require_single_stdout();
        if (!stdout_taken()) std::cout << text;
        if (!json_path.empty()) {
            if (!doc) throw MalformedInputError("this command has no JSON form");
            write_text_output(json_path, dump_json(*doc), "JSON");
        }
        if (!dot_path.empty()) {
            if (dot.empty()) throw MalformedInputError("this command has no DOT form");
            write_text_output(dot_path, dot, "DOT");
        }
    }
};

AttackStructure build_structure(const PlantModel& plant, const std::optional<int>& bound) {
    AttackStructure a = build_unbounded_attack_structure(plant);
    if (bound) a = build_bounded_attack_structure(a, *bound);
    return a;
}

// --- observer ---------------------------------------------------------------

int run_observer(const std::string& plant_path, const OutputFlags& out) {
    const PlantModel plant = load_plant_file(plant_path);
    warn_unreachable_states(plant);
    const ObserverAutomaton obs = build_observer(plant);

    std::ostringstream text;
    text << "observer\n";
    text << "  states: " << obs.num_states() << "\n";
    text << "  transitions: " << obs.num_transitions() << "\n";
    text << "  initial: " << obs.initial().to_string() << "\n";
    text << "  alphabet:";
    for (const EventId& e : obs.alphabet()) text << " " << e.name;
    text << "\n";
    text << "transitions:\n";
    obs.for_each_transition([&](const Estimate& src, const EventId& e, const Estimate& dst) {
        text << "  " << src.to_string() << " -" << e.name << "-> " << dst.to_string() << "\n";
    });

    const nlohmann::json doc = observer_json(obs);
    out.emit(text.str(), &doc, observer_dot(obs));
    return 0;
}

// --- attack-structure -------------------------------------------------------

int run_attack_structure(const std::string& plant_path, const std::optional<int>& bound,
                         const OutputFlags& out) {
    const PlantModel plant = load_plant_file(plant_path);
    warn_unreachable_states(plant);
    const AttackStructure a = build_structure(plant, bound);

    std::ostringstream text;
    text << "attack structure (" << bound_label(a.bound) << ")\n";
    text << "  states: " << a.automaton.num_states() << " (" << a.stealthy_states.size()
         << " stealthy, " << a.exposing_states.size() << " exposing)\n";
    text << "  transitions: " << a.automaton.num_transitions() << "\n";
    text << "  initial: " << a.automaton.initial().to_string() << "\n";
    text << "  alphabet:";
    for (const AttackEvent& e : a.automaton.alphabet()) text << " " << e.label();
    text << "\n";
    text << "transitions:\n";
    a.automaton.for_each_transition(
        [&](const StatePair& src, const AttackEvent& e, const StatePair& dst) {
            text << "  " << src.to_string() << " -" << e.label() << "-> " << dst.to_string()
                 << "\n";
        });

    const nlohmann::json doc = attack_structure_json(a);
    out.emit(text.str(), &doc, attack_structure_dot(a));
    return 0;
}

// --- supremal ----------------------------------------------------------------

int run_supremal(const std::string& plant_path, const std::optional<int>& bound,
                 const OutputFlags& out) {
    const PlantModel plant = load_plant_file(plant_path);
    warn_unreachable_states(plant);
    const SupremalSubstructure sub = trim_supremal(build_structure(plant, bound));

    std::ostringstream text;
    text << "supremal stealthy substructure (" << bound_label(sub.host.bound) << ")\n";
    text << "  states: " << sub.automaton.num_states() << " (" << sub.preempting.size()
         << " preempting, " << sub.non_preempting.size() << " non-preempting)\n";
    text << "  transitions: " << sub.automaton.num_transitions() << "\n";
    text << "  initial: " << sub.automaton.initial().to_string() << "\n";
    if (!sub.preempting.empty()) {
        text << "  preempting:";
        for (const StatePair& r : sub.preempting) text << " " << r.to_string();
        text << "\n";
    }
    text << "  initial escapes: "
         << escapes_label(insertion_escapes(sub, sub.automaton.initial())) << "\n";
    text << "transitions:\n";
    sub.automaton.for_each_transition(
        [&](const StatePair& src, const AttackEvent& e, const StatePair& dst) {
            text << "  " << src.to_string() << " -" << e.label() << "-> " << dst.to_string()
                 << "\n";
        });

    const nlohmann::json doc = supremal_json(sub);
    out.emit(text.str(), &doc, supremal_dot(sub));
    return 0;
}

// --- check-harmful ------------------------------------------------------------

std::string verdict_text(const HarmVerdict& verdict, const std::optional<int>& bound) {
    std::ostringstream text;
    text << "verdict (" << bound_label(bound) << "): " << (verdict.harmful ? "HARMFUL" : "SAFE")
         << "\n";
    for (const HarmWitness& w : verdict.witnesses) {
        text << "witness " << w.state.to_string() << "\n";
        text << "  word: " << word_label(w.word) << "\n";
        text << "  observed: " << observation_label(w.observation) << "\n";
        text << "  shown: " << observation_label(w.corrupted) << "\n";
    }
    for (const StatePair& r : verdict.unwitnessed)
        text << "unwitnessed " << r.to_string() << "\n";
    return text.str();
}

std::set<StatePair> misled_states(const SupremalSubstructure& sub, const MisleadingRelation& rel) {
    std::set<StatePair> out;
    for (const StatePair& r : sub.non_preempting)
        if (rel.holds(r.attacker, r.operator_view)) out.insert(r);
    return out;
}

int run_check_harmful(const std::string& plant_path, const std::string& relation_path,
                      const std::optional<int>& bound, const std::string& sweep,
                      const OutputFlags& out) {
    const PlantModel plant = load_plant_file(plant_path);
    warn_unreachable_states(plant);
    const MisleadingRelation rel = load_relation_file(relation_path, plant);

    if (sweep.empty()) {
        const SupremalSubstructure sub = trim_supremal(build_structure(plant, bound));
        const HarmVerdict verdict = check_harmful(sub, rel);
        const nlohmann::json doc = verdict_json(verdict, sub.host.bound);
        const std::set<StatePair> misled = misled_states(sub, rel);
        out.emit(verdict_text(verdict, sub.host.bound), &doc, supremal_dot(sub, &misled));
        return verdict.harmful ? 1 : 0;
    }

    if (!out.dot_path.empty())
        throw MalformedInputError("--dot cannot be combined with --sweep-bound");
    const auto dots = sweep.find("..");
    int from = 0, to = 0;
    try {
        if (dots == std::string::npos) throw std::invalid_argument("no ..");
        from = std::stoi(sweep.substr(0, dots));
        to = std::stoi(sweep.substr(dots + 2));
    } catch (const std::exception&) {
        throw MalformedInputError("--sweep-bound expects FROM..TO, got \"" + sweep + "\"");
    }
    if (from < 0 || to < from)
        throw MalformedInputError("--sweep-bound expects 0 <= FROM <= TO, got \"" + sweep + "\"");

    const AttackStructure a_inf = build_unbounded_attack_structure(plant);
    std::ostringstream text;
    nlohmann::json doc;
    doc["type"] = "bound-sweep";
    doc["from"] = from;
    doc["to"] = to;
    auto& verdicts = doc["verdicts"] = nlohmann::json::array();
    std::optional<int> least;
    bool any_harmful = false;
    for (int n = from; n <= to; ++n) {
        const SupremalSubstructure sub = trim_supremal(build_bounded_attack_structure(a_inf, n));
        const HarmVerdict verdict = check_harmful(sub, rel);
        text << "bound " << n << ": " << (verdict.harmful ? "HARMFUL" : "SAFE") << "\n";
        verdicts.push_back(verdict_json(verdict, n));
        if (verdict.harmful && !least) least = n;
        any_harmful = any_harmful || verdict.harmful;
    }
    if (least) {
        text << "least harmful bound: " << *least << "\n";
        doc["least_harmful_bound"] = *least;
    } else {
        text << "no harmful bound in range\n";
        doc["least_harmful_bound"] = nullptr;
    }
    out.emit(text.str(), &doc, "");
    return any_harmful ? 1 : 0;
}

// --- play ---------------------------------------------------------------------

void print_round(std::ostream& os, std::size_t round, const EventId& e, const AttackEvent& move,
                 const AttackWord& escape, const AttackSession& sess) {
    os << "[" << round << "] plant " << e.name << " | attacker " << move.label() << " | insert "
       << word_label(escape) << " | at " << sess.current().to_string() << "\n";
}

void print_session_summary(std::ostream& os, const AttackSession& sess) {
    os << "observation: " << observation_label(sess.observation()) << "\n";
    os << "transcript: " << word_label(sess.transcript()) << "\n";
    os << "attack function:\n";
    for (const auto& [obs_prefix, emitted] : sess.attack_function_trace())
        os << "  " << observation_label(obs_prefix) << " -> " << word_label(emitted) << "\n";
}

nlohmann::json session_json(const AttackSession& sess, const std::optional<int>& bound) {
    nlohmann::json doc;
    doc["type"] = "play";
    doc["bound"] = bound_json(bound);
    doc["observation"] = observation_json(sess.observation());
    doc["transcript"] = word_json(sess.transcript());
    auto& trace = doc["attack_function"] = nlohmann::json::array();
    for (const auto& [obs_prefix, emitted] : sess.attack_function_trace())
        trace.push_back({observation_json(obs_prefix), word_json(emitted)});
    doc["final_state"] = sess.current().to_string();
    return doc;
}

std::vector<EventId> producible_events(const PlantModel& plant, const SupremalSubstructure& sub,
                                       const AttackSession& sess) {
    std::vector<EventId> out;
    for (const EventId& e : plant.observable)
        if (sub.host.automaton.defined(sess.current(), AttackEvent::plain(e))) out.push_back(e);
    std::sort(out.begin(), out.end());
    return out;
}

int finish_session(const AttackSession& sess, const SupremalSubstructure& sub,
                   const OutputFlags& out, std::ostringstream& text) {
    print_session_summary(text, sess);
    if (!sub.automaton.in_language(sess.transcript())) {
        std::cerr << "internal error: transcript left the supremal substructure\n";
        return 2;
    }
    text << "verified: transcript lies within the supremal substructure\n";
    const nlohmann::json doc = session_json(sess, sub.host.bound);
    out.emit(text.str(), &doc, "");
    return 0;
}

int run_play_walk(const PlantModel& plant, const SupremalSubstructure& sub, std::uint64_t seed,
                  int steps, const OutputFlags& out) {
    SplitMix64 rng(seed);
    std::ostringstream text;

    const auto initial_escapes = insertion_escapes(sub, sub.automaton.initial());
    AttackSession sess = session_start(sub, initial_escapes[rng.below(initial_escapes.size())]);
    text << "[0] start | insert " << word_label(sess.transcript()) << " | at "
         << sess.current().to_string() << "\n";

    for (int round = 1; round <= steps; ++round) {
        const auto producible = producible_events(plant, sub, sess);
        if (producible.empty()) {
            text << "plant is quiescent; session ends\n";
            break;
        }
        const EventId e = producible[rng.below(producible.size())];
        const auto options = session_options(sess, e);
        const SessionOption& opt = options[rng.below(options.size())];
        const AttackWord& escape = opt.escapes[rng.below(opt.escapes.size())];
        sess = session_step(sess, e, opt.first_move, escape);
        print_round(text, static_cast<std::size_t>(round), e, opt.first_move, escape, sess);
    }
    return finish_session(sess, sub, out, text);
}

int run_play_script(const PlantModel& plant, const SupremalSubstructure& sub,
                    const std::string& script_path, const OutputFlags& out) {
    const std::string raw = read_file(script_path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedInputError(script_path + ": not valid JSON: " + e.what());
    }
    if (!doc.is_object() || !doc.contains("initial_insert") || !doc.contains("steps"))
        throw MalformedInputError(script_path +
                                  ": script needs \"initial_insert\" and \"steps\"");
    for (const auto& [key, value] : doc.items())
        if (key != "initial_insert" && key != "steps")
            throw MalformedInputError(script_path + ": unknown script key \"" + key + "\"");

    auto parse_insert_word = [&](const nlohmann::json& arr, const std::string& where) {
        if (!arr.is_array())
            throw MalformedInputError(script_path + ": " + where + " must be a list of labels");
        AttackWord word;
        for (const auto& item : arr) {
            if (!item.is_string())
                throw MalformedInputError(script_path + ": " + where + " must contain strings");
            const AttackEvent sym = parse_attack_label(item.get<std::string>());
            if (!sym.is_insert())
                throw MalformedInputError(script_path + ": " + where +
                                          " may only contain insertions, got \"" + sym.label() +
                                          "\"");
            word.push_back(sym);
        }
        return word;
    };

    std::ostringstream text;
    AttackSession sess = session_start(sub, parse_insert_word(doc["initial_insert"],
                                                              "\"initial_insert\""));
    text << "[0] start | insert " << word_label(sess.transcript()) << " | at "
         << sess.current().to_string() << "\n";

    std::size_t round = 0;
    for (const auto& step : doc["steps"]) {
        ++round;
        const std::string where = "step " + std::to_string(round);
        if (!step.is_object() || !step.contains("event") || !step.contains("move") ||
            !step.contains("insert"))
            throw MalformedInputError(script_path + ": " + where +
                                      " needs \"event\", \"move\" and \"insert\"");
        for (const auto& [key, value] : step.items())
            if (key != "event" && key != "move" && key != "insert")
                throw MalformedInputError(script_path + ": " + where + " has unknown key \"" +
                                          key + "\"");
        if (!step["event"].is_string() || !step["move"].is_string())
            throw MalformedInputError(script_path + ": " + where +
                                      ": \"event\" and \"move\" must be strings");
        const EventId e(step["event"].get<std::string>());
        const AttackEvent move = parse_attack_label(step["move"].get<std::string>());
        if (move.is_insert())
            throw MalformedInputError(script_path + ": " + where +
                                      ": \"move\" must pass or erase the event, not insert");
        if (move.event != e)
            throw MalformedInputError(script_path + ": " + where + ": move \"" + move.label() +
                                      "\" does not answer event \"" + e.name + "\"");
        const AttackWord escape = parse_insert_word(step["insert"], "\"insert\"");
        sess = session_step(sess, e, move, escape);
        print_round(text, round, e, move, escape, sess);
    }
    (void)plant;
    return finish_session(sess, sub, out, text);
}

int run_play_interactive(const PlantModel& plant, const SupremalSubstructure& sub,
                         const OutputFlags& out) {
    std::ostringstream text;
    AttackSession sess = session_start(sub, {});
    std::cout << "interactive attack session; enter an observable event, or \"quit\" to stop\n";
    std::size_t round = 0;
    for (;;) {
        const auto producible = producible_events(plant, sub, sess);
        if (producible.empty()) {
            std::cout << "plant is quiescent; session ends\n";
            break;
        }
        std::cout << "state " << sess.current().to_string() << "\nproducible:";
        for (const EventId& e : producible) std::cout << " " << e.name;
        std::cout << "\nevent> " << std::flush;
        std::string line;
        if (!std::getline(std::cin, line) || line == "quit") break;
        if (line.empty()) continue;

        std::vector<std::pair<AttackEvent, AttackWord>> choices;
        try {
            const EventId e{line};
            for (const SessionOption& opt : session_options(sess, e))
                for (const AttackWord& escape : opt.escapes)
                    choices.emplace_back(opt.first_move, escape);
            for (std::size_t i = 0; i < choices.size(); ++i)
                std::cout << "  [" << i << "] " << (choices[i].first.is_erase() ? "erase " : "pass ")
                          << choices[i].first.label() << ", then insert "
                          << word_label(choices[i].second) << "\n";
            std::cout << "choice> " << std::flush;
            std::string pick;
            if (!std::getline(std::cin, pick)) break;
            const std::size_t k = static_cast<std::size_t>(std::stoul(pick));
            if (k >= choices.size()) throw InvalidChoiceError("choice index out of range");
            sess = session_step(sess, e, choices[k].first, choices[k].second);
            ++round;
            print_round(std::cout, round, e, choices[k].first, choices[k].second, sess);
        } catch (const Error& err) {
            std::cout << "error: " << err.what() << "\n";
        } catch (const std::exception&) {
            std::cout << "error: enter the index of a listed choice\n";
        }
    }
    return finish_session(sess, sub, out, text);
}

int run_play(const std::string& plant_path, const std::optional<int>& bound, std::uint64_t seed,
             int steps, const std::string& script_path, bool interactive,
             const OutputFlags& out) {
    const PlantModel plant = load_plant_file(plant_path);
    warn_unreachable_states(plant);
    const SupremalSubstructure sub = trim_supremal(build_structure(plant, bound));
    if (interactive) return run_play_interactive(plant, sub, out);
    if (!script_path.empty()) return run_play_script(plant, sub, script_path, out);
    return run_play_walk(plant, sub, seed, steps, out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"observer construction and sensor-deception analysis for partially observed "
                 "discrete-event plants"};
    app.require_subcommand(1);

    std::string plant_path, relation_path, script_path, sweep;
    std::optional<int> bound;
    bool unbounded = false;
    std::uint64_t seed = 0;
    int steps = 8;
    bool interactive = false;
    OutputFlags out;

    auto add_bound = [&](CLI::App* cmd) {
        auto* b = cmd->add_option("--bound", bound,
                                  "largest number of consecutive insertions (default: unbounded)");
        cmd->add_flag("--unbounded", unbounded, "no insertion bound (the default)")->excludes(b);
    };

    auto* obs_cmd = app.add_subcommand("observer", "build the observer of a plant");
    obs_cmd->add_option("plant", plant_path, "plant JSON file")->required();
    out.add_to(obs_cmd);

    auto* att_cmd = app.add_subcommand(
        "attack-structure", "compose the attacker and operator views of a plant");
    att_cmd->add_option("plant", plant_path, "plant JSON file")->required();
    add_bound(att_cmd);
    out.add_to(att_cmd);

    auto* sup_cmd = app.add_subcommand(
        "supremal", "carve out the largest substructure the attacker can hold stealthily");
    sup_cmd->add_option("plant", plant_path, "plant JSON file")->required();
    add_bound(sup_cmd);
    out.add_to(sup_cmd);

    auto* harm_cmd = app.add_subcommand(
        "check-harmful", "decide whether a stealthy attack can mislead the operator");
    harm_cmd->add_option("plant", plant_path, "plant JSON file")->required();
    harm_cmd->add_option("relation", relation_path, "misleading relation JSON file")->required();
    add_bound(harm_cmd);
    harm_cmd->add_option("--sweep-bound", sweep, "check a range of bounds, e.g. 0..3")
        ->excludes("--bound")
        ->excludes("--unbounded");
    out.add_to(harm_cmd);

    auto* play_cmd = app.add_subcommand("play", "drive a stealthy attack session");
    play_cmd->add_option("plant", plant_path, "plant JSON file")->required();
    add_bound(play_cmd);
    auto* seed_opt = play_cmd->add_option("--seed", seed, "seeded random walk (the default mode)");
    play_cmd->add_option("--steps", steps, "walk length for the seeded mode")
        ->check(CLI::PositiveNumber);
    auto* script_opt =
        play_cmd->add_option("--script", script_path, "replay a scripted session from this file");
    auto* inter_opt =
        play_cmd->add_flag("--interactive", interactive, "drive the session from standard input");
    script_opt->excludes(seed_opt)->excludes(inter_opt);
    inter_opt->excludes(seed_opt);
    out.add_to(play_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (obs_cmd->parsed()) return run_observer(plant_path, out);
        if (att_cmd->parsed()) return run_attack_structure(plant_path, bound, out);
        if (sup_cmd->parsed()) return run_supremal(plant_path, bound, out);
        if (harm_cmd->parsed())
            return run_check_harmful(plant_path, relation_path, bound, sweep, out);
        if (play_cmd->parsed())
            return run_play(plant_path, bound, seed, steps, script_path, interactive, out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
