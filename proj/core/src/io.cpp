#include "wdetect/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace wdetect::io {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

ParseError::ParseError(std::string where, const std::string& what)
    : std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}

namespace {

const json& field(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object()) throw ParseError(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where, "missing field '" + key + "'");
    return *it;
}

std::string string_at(const json& v, const std::string& where) {
    if (!v.is_string()) throw ParseError(where, "expected a string");
    return v.get<std::string>();
}

const json& array_at(const json& v, const std::string& where) {
    if (!v.is_array()) throw ParseError(where, "expected an array");
    return v;
}

std::vector<std::string> weight_at(const json& v, const std::string& where) {
    std::vector<std::string> out;
    const auto& arr = array_at(v, where);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto here = where + "[" + std::to_string(i) + "]";
        if (!arr[i].is_string()) throw ParseError(here, "weight entries are rational strings such as \"-3/4\"");
        out.push_back(arr[i].get<std::string>());
        try {
            (void)Rational::parse(out.back());
        } catch (const std::exception& e) {
            throw ParseError(here, e.what());
        }
    }
    return out;
}

}  // namespace

RawAutomaton parse_raw(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann reports "... at line L, column C: ..."
        std::string msg = e.what();
        auto pos = msg.find("at line");
        std::string where = "byte " + std::to_string(e.byte);
        if (pos != std::string::npos) {
            auto end = msg.find(':', pos);
            where = msg.substr(pos + 3, end == std::string::npos ? std::string::npos : end - pos - 3);
        }
        throw ParseError(where, "malformed JSON");
    }
    if (!doc.is_object()) throw ParseError("", "document must be a JSON object");
    RawAutomaton raw;
    if (auto it = doc.find("format_version"); it != doc.end()) {
        if (!it->is_number_integer() || it->get<int>() != kFormatVersion)
            throw ParseError("format_version", "unsupported format version (expected " +
                                                   std::to_string(kFormatVersion) + ")");
    }
    const auto& k = field(doc, "k", "");
    if (!k.is_number_integer() || k.get<long long>() < 1) throw ParseError("k", "expected a positive integer");
    raw.k = k.get<long long>();
    const auto& states = array_at(field(doc, "states", ""), "states");
    for (std::size_t i = 0; i < states.size(); ++i)
        raw.states.push_back(string_at(states[i], "states[" + std::to_string(i) + "]"));
    const auto& init = array_at(field(doc, "initial", ""), "initial");
    for (std::size_t i = 0; i < init.size(); ++i) {
        const auto where = "initial[" + std::to_string(i) + "]";
        RawAutomaton::Initial in;
        in.state = string_at(field(init[i], "state", where), where + ".state");
        if (auto it = init[i].find("weight"); it != init[i].end())
            in.weight = weight_at(*it, where + ".weight");
        else
            in.weight.assign(static_cast<std::size_t>(raw.k), "0");
        raw.initial.push_back(std::move(in));
    }
    const auto& events = array_at(field(doc, "events", ""), "events");
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto where = "events[" + std::to_string(i) + "]";
        RawAutomaton::Event ev;
        ev.name = string_at(field(events[i], "name", where), where + ".name");
        const auto& label = field(events[i], "label", where);
        if (!label.is_null()) ev.label = string_at(label, where + ".label");
        raw.events.push_back(std::move(ev));
    }
    const auto& trans = array_at(field(doc, "transitions", ""), "transitions");
    for (std::size_t i = 0; i < trans.size(); ++i) {
        const auto where = "transitions[" + std::to_string(i) + "]";
        RawAutomaton::Transition t;
        t.from = string_at(field(trans[i], "from", where), where + ".from");
        t.event = string_at(field(trans[i], "event", where), where + ".event");
        t.to = string_at(field(trans[i], "to", where), where + ".to");
        t.weight = weight_at(field(trans[i], "weight", where), where + ".weight");
        raw.transitions.push_back(std::move(t));
    }
    return raw;
}

WeightedAutomaton parse_automaton(const std::string& text) { return validate(parse_raw(text)); }

namespace {

ojson weight_json(const WeightVector& w) {
    ojson arr = ojson::array();
    for (const auto& x : w.entries()) arr.push_back(x.str());
    return arr;
}

std::string pair_name(const WeightedAutomaton& a, const SelfComposition::Pair& p) {
    return "(" + a.state_name(p.first) + "," + a.state_name(p.second) + ")";
}

ojson tail_json(const EPSet::Tail& t) {
    return ojson{{"period", t.period}, {"residues", t.residues}};
}

ojson transitions_json(const WeightedAutomaton& a, const std::vector<TransitionId>& ts) {
    ojson arr = ojson::array();
    for (auto t : ts) arr.push_back(describe_transition(a, t));
    return arr;
}

ojson cc_edge_json(const SelfComposition& cc, const WeightedAutomaton& a, std::size_t id, std::int64_t factor) {
    const auto& e = cc.edges[id];
    return ojson{{"from", pair_name(a, cc.states[e.from])},
                 {"events", {a.event(e.left_event).name, a.event(e.right_event).name}},
                 {"label", e.label},
                 {"weight", e.uncertain ? ojson(nullptr) : ojson(weight_text(e.weight, factor))},
                 {"to", pair_name(a, cc.states[e.to])}};
}

ojson est_edge_json(const EstimatorAutomaton& ea, const WeightedAutomaton& a, std::size_t id, std::int64_t factor) {
    const auto& e = ea.edges[id];
    return ojson{{"from", a.describe(ea.states[e.from])},
                 {"label", e.label},
                 {"weight", weight_text(e.witness, factor)},
                 {"to", a.describe(ea.states[e.to])}};
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

ojson to_json(const WeightedAutomaton& a) {
    ojson doc;
    doc["format_version"] = kFormatVersion;
    doc["k"] = a.dimension();
    doc["states"] = a.state_names();
    ojson init = ojson::array();
    for (const auto& [q, w] : a.initial()) init.push_back({{"state", a.state_name(q)}, {"weight", weight_json(w)}});
    doc["initial"] = init;
    ojson events = ojson::array();
    for (const auto& e : a.events())
        events.push_back({{"name", e.name}, {"label", e.label ? ojson(*e.label) : ojson(nullptr)}});
    doc["events"] = events;
    ojson trans = ojson::array();
    for (const auto& t : a.transitions())
        trans.push_back({{"from", a.state_name(t.from)},
                         {"event", a.event(t.event).name},
                         {"to", a.state_name(t.to)},
                         {"weight", weight_json(t.weight)}});
    doc["transitions"] = trans;
    return doc;
}

std::string serialize(const WeightedAutomaton& a) { return to_json(a).dump(2) + "\n"; }

std::string weight_text(const IntVec& v, std::int64_t factor) {
    auto entry = [&](std::int64_t x) { return Rational(x, factor).str(); };
    if (v.size() == 1) return entry(v[0]);
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + entry(v[i]);
    return out + ")";
}

ojson to_json(const EPSet& s) {
    return ojson{{"text", s.str()},
                 {"down_end", s.down_end()},
                 {"down", tail_json(s.down())},
                 {"middle", s.middle()},
                 {"up_start", s.up_start()},
                 {"up", tail_json(s.up())}};
}

ojson to_json(const LabelCell& c, std::int64_t factor) {
    ojson out;
    if (!c.vector_valued) {
        out = to_json(c.scalar);
    } else {
        ojson pts = ojson::array();
        for (const auto& p : c.points) pts.push_back(weight_text(p, factor));
        out["points"] = pts;
    }
    out["exact"] = c.exact;
    if (factor != 1) out["scale"] = factor;
    return out;
}

ojson to_json(const SelfComposition& cc, const WeightedAutomaton& a, std::int64_t factor) {
    ojson states = ojson::array();
    for (const auto& p : cc.states) states.push_back(pair_name(a, p));
    ojson init = ojson::array();
    for (auto i : cc.initial) init.push_back(pair_name(a, cc.states[i]));
    ojson edges = ojson::array();
    for (std::size_t i = 0; i < cc.edges.size(); ++i) {
        auto e = cc_edge_json(cc, a, i, factor);
        e["uncertain"] = cc.edges[i].uncertain;
        edges.push_back(std::move(e));
    }
    return ojson{{"states", states}, {"initial", init}, {"transitions", edges}, {"complete", cc.complete}};
}

ojson to_json(const EstimatorAutomaton& ea, const WeightedAutomaton& a, std::int64_t factor) {
    ojson states = ojson::array();
    for (const auto& x : ea.states) states.push_back(a.describe(x));
    ojson edges = ojson::array();
    for (std::size_t i = 0; i < ea.edges.size(); ++i) {
        auto e = est_edge_json(ea, a, i, factor);
        e["cell"] = to_json(ea.edges[i].cell, factor);
        edges.push_back(std::move(e));
    }
    return ojson{{"kind", ea.kind == EstimatorAutomaton::Kind::observer ? "observer" : "detector"},
                 {"initial", a.describe(ea.states.front())},
                 {"states", states},
                 {"transitions", edges},
                 {"exact", ea.exact}};
}

ojson to_json(const Lasso& l, const WeightedAutomaton& a) {
    return ojson{{"stem", transitions_json(a, l.stem)}, {"cycle", transitions_json(a, l.cycle)}};
}

ojson to_json(const Counterexample& c, const WeightedAutomaton& a) {
    ojson est = ojson::array();
    for (const auto& x : c.estimates) est.push_back(a.describe(x));
    ojson out{{"property", to_string(c.property)}, {"kind", c.kind}};
    if (c.kind == "lasso") {
        out["start"] = a.state_name(c.start);
        out["stem"] = transitions_json(a, c.stem);
        out["cycle"] = transitions_json(a, c.cycle);
        out["observation"] = to_string(c.observation);
        out["estimates"] = est;
    }
    return out;
}

ojson to_json(const Verdict& v, const Report& r) {
    const auto& a = r.prepared.automaton;
    const auto factor = r.prepared.factor;
    ojson out{{"property", to_string(v.property)}, {"status", to_string(v.status)}, {"condition", v.condition}};
    ojson witness = nullptr;
    if (v.pair && r.cc) {
        const auto& w = *v.pair;
        auto edges = [&](const std::vector<std::size_t>& ids) {
            ojson arr = ojson::array();
            for (auto id : ids) arr.push_back(cc_edge_json(*r.cc, a, id, factor));
            return arr;
        };
        witness = ojson{{"kind", "self-composition"},
                        {"start", pair_name(a, r.cc->states[w.start_pair])},
                        {"stem", edges(w.stem)},
                        {"cycle_pair", pair_name(a, r.cc->states[w.cycle_pair])},
                        {"cycle", edges(w.cycle)},
                        {"tail", edges(w.tail)},
                        {"split_pair", pair_name(a, r.cc->states[w.split_pair])},
                        {"continuation", to_json(w.continuation, a)}};
    } else if (v.estimator) {
        const auto* ea = v.property == Property::spd ? (r.detector ? &*r.detector : nullptr)
                                                     : (r.observer ? &*r.observer : nullptr);
        if (ea) {
            const auto& w = *v.estimator;
            auto edges = [&](const std::vector<std::size_t>& ids) {
                ojson arr = ojson::array();
                for (auto id : ids) arr.push_back(est_edge_json(*ea, a, id, factor));
                return arr;
            };
            witness = ojson{{"kind", ea->kind == EstimatorAutomaton::Kind::observer ? "observer" : "detector"},
                            {"state", a.describe(ea->states[w.state])},
                            {"stem", edges(w.stem)},
                            {"cycle", edges(w.cycle)}};
            if (w.member) {
                witness["member"] = a.state_name(*w.member);
                witness["unobservable"] = to_json(w.unobservable, a);
            }
        }
    } else if (v.lasso) {
        witness = ojson{{"kind", "lasso"}};
        witness.update(to_json(*v.lasso, a));
    }
    out["witness"] = witness;
    if (!v.notes.empty()) out["notes"] = v.notes;
    out["elapsed_ms"] = v.elapsed_ms;
    return out;
}

ojson to_json(const Report& r) {
    ojson verdicts = ojson::array();
    for (const auto& v : r.verdicts) verdicts.push_back(to_json(v, r));
    return ojson{{"format_version", kFormatVersion}, {"scale", r.prepared.factor}, {"verdicts", verdicts}};
}

std::string describe_transition(const WeightedAutomaton& a, TransitionId t) {
    const auto& tr = a.transition(t);
    std::string w = tr.weight.dimension() == 1 ? tr.weight[0].str() : tr.weight.str();
    return a.state_name(tr.from) + " -" + a.event(tr.event).name + "/" + w + "-> " + a.state_name(tr.to);
}

std::string to_dot(const WeightedAutomaton& a) {
    std::ostringstream os;
    os << "digraph automaton {\n  rankdir=LR;\n";
    for (std::size_t q = 0; q < a.num_states(); ++q) os << "  s" << q << " [label=\"" << dot_escape(a.state_name(q)) << "\"];\n";
    for (const auto& [q, w] : a.initial()) {
        os << "  init" << q << " [shape=point];\n";
        os << "  init" << q << " -> s" << q << " [label=\"" << dot_escape(w.dimension() == 1 ? w[0].str() : w.str())
           << "\"];\n";
    }
    for (const auto& t : a.transitions()) {
        const auto& ev = a.event(t.event);
        os << "  s" << t.from << " -> s" << t.to << " [label=\"" << dot_escape(ev.name) << "/"
           << dot_escape(t.weight.dimension() == 1 ? t.weight[0].str() : t.weight.str()) << "\""
           << (ev.observable() ? "" : ", style=dashed") << "];\n";
    }
    os << "}\n";
    return os.str();
}

std::string to_dot(const SelfComposition& cc, const WeightedAutomaton& a) {
    std::ostringstream os;
    os << "digraph self_composition {\n  rankdir=LR;\n";
    for (std::size_t i = 0; i < cc.states.size(); ++i)
        os << "  p" << i << " [label=\"" << dot_escape(pair_name(a, cc.states[i])) << "\"];\n";
    for (auto i : cc.initial) os << "  init" << i << " [shape=point];\n  init" << i << " -> p" << i << ";\n";
    for (const auto& e : cc.edges) {
        os << "  p" << e.from << " -> p" << e.to << " [label=\"(" << dot_escape(a.event(e.left_event).name) << ","
           << dot_escape(a.event(e.right_event).name) << ")\"" << (e.uncertain ? ", style=dotted" : "") << "];\n";
    }
    os << "}\n";
    return os.str();
}

std::string to_dot(const EstimatorAutomaton& ea, const WeightedAutomaton& a, std::int64_t factor) {
    std::ostringstream os;
    os << "digraph " << (ea.kind == EstimatorAutomaton::Kind::observer ? "observer" : "detector")
       << " {\n  rankdir=LR;\n  init [shape=point];\n  init -> x0;\n";
    for (std::size_t i = 0; i < ea.states.size(); ++i)
        os << "  x" << i << " [label=\"" << dot_escape(a.describe(ea.states[i])) << "\"];\n";
    for (const auto& e : ea.edges) {
        std::string cell = e.cell.vector_valued ? e.cell.str() : e.cell.scalar.str();
        if (factor != 1) cell += " /" + std::to_string(factor);
        os << "  x" << e.from << " -> x" << e.to << " [label=\"" << dot_escape(e.label) << "/"
           << dot_escape(weight_text(e.witness, factor)) << " " << dot_escape(cell) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

std::string read_text(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace wdetect::io
