#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wdetect/io.hpp"
#include "wdetect/oracle.hpp"
#include "wdetect/rational.hpp"
#include "wdetect/verify.hpp"

namespace testsupport {

using wdetect::EPSet;
using wdetect::floor_mod;

bool AtomDescription::contains(std::int64_t n) const {
    bool in = false;
    for (auto p : points) in = in || p == n;
    for (auto [c, p] : up) in = in || (n >= c && (n - c) % p == 0);
    for (auto [c, p] : down) in = in || (n <= c && (c - n) % p == 0);
    for (auto [r, p] : classes) in = in || floor_mod(n - r, p) == 0;
    return complemented ? !in : in;
}

EPSet AtomDescription::build() const {
    EPSet s = EPSet::finite(points);
    for (auto [c, p] : up) s = s | EPSet::up_ray(c, p);
    for (auto [c, p] : down) s = s | EPSet::down_ray(c, p);
    for (auto [r, p] : classes) s = s | EPSet::residue_class(r, p);
    return complemented ? s.complement() : s;
}

AtomDescription random_description(std::mt19937_64& rng) {
    auto pick = [&](std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    AtomDescription d;
    for (int i = pick(0, 5); i > 0; --i) d.points.push_back(pick(-30, 30));
    for (int i = pick(0, 2); i > 0; --i) d.up.emplace_back(pick(-30, 30), pick(1, 6));
    for (int i = pick(0, 2); i > 0; --i) d.down.emplace_back(pick(-30, 30), pick(1, 6));
    if (pick(0, 4) == 0) d.classes.emplace_back(pick(-10, 10), pick(1, 6));
    d.complemented = pick(0, 3) == 0;
    return d;
}

bool naive_span_contains(const std::vector<std::int64_t>& gens, std::int64_t n) {
    // Breadth-first coin sums inside a generous window.
    const std::int64_t bound = 400;
    std::set<std::int64_t> seen{0};
    std::vector<std::int64_t> work{0};
    while (!work.empty()) {
        auto x = work.back();
        work.pop_back();
        for (auto g : gens) {
            auto y = x + g;
            if (y < -bound || y > bound) continue;
            if (seen.insert(y).second) work.push_back(y);
        }
    }
    return seen.count(n) > 0;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

wdetect::WeightedAutomaton load_fixture_file(const std::string& name) {
    return wdetect::io::parse_automaton(read_file(std::string(WDETECT_FIXTURE_DIR) + "/" + name + ".json"));
}

wdetect::WeightedAutomaton prepared_fixture(const std::string& name) {
    return wdetect::prepare(load_fixture_file(name)).automaton;
}

std::set<wdetect::IntVec> walk_weights(const wdetect::WeightedDigraph& g, std::size_t u, std::size_t v,
                                       std::size_t max_len) {
    std::set<wdetect::IntVec> out;
    // one layer of (vertex, weight) pairs per walk length
    std::vector<std::pair<std::size_t, wdetect::IntVec>> layer{{u, wdetect::IntVec(g.dimension(), 0)}};
    for (std::size_t len = 0; len <= max_len; ++len) {
        std::set<std::pair<std::size_t, wdetect::IntVec>> next;
        for (const auto& [x, w] : layer) {
            if (x == v) out.insert(w);
            if (len == max_len) continue;
            for (auto id : g.out(x)) next.emplace(g.arc(id).head, wdetect::add(w, g.arc(id).weight));
        }
        layer.assign(next.begin(), next.end());
    }
    return out;
}

wdetect::WeightedDigraph random_digraph(std::mt19937_64& rng, std::size_t n, std::size_t k, std::int64_t lo,
                                        std::int64_t hi, double density) {
    wdetect::WeightedDigraph g(k, n);
    std::uniform_real_distribution<double> coin(0, 1);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (coin(rng) < density) {
                wdetect::IntVec w(k);
                for (auto& x : w) x = lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
                g.add_arc(a, b, w);
            }
    return g;
}

namespace {

std::vector<wdetect::IntVec> probe_points(const wdetect::LabelCell& cell, std::size_t extra) {
    std::vector<wdetect::IntVec> out{*cell.witness()};
    if (cell.vector_valued) {
        for (const auto& p : cell.points)
            if (out.size() <= extra && p != out.front()) out.push_back(p);
        return out;
    }
    for (auto n : cell.scalar.members_in(-6, 6))
        if (out.size() <= extra && n != out.front()[0]) out.push_back({n});
    return out;
}

bool subset_of(const wdetect::StateSet& x, const wdetect::StateSet& y) {
    return std::includes(y.begin(), y.end(), x.begin(), x.end());
}

}  // namespace

std::vector<std::string> observer_oracle_mismatches(const wdetect::WeightedAutomaton& a,
                                                    const wdetect::EstimatorAutomaton& observer, std::size_t depth,
                                                    std::size_t extra) {
    using namespace wdetect;
    std::vector<std::string> out;
    Observation obs;
    const auto labels = a.labels();
    auto accumulated = [&](const IntVec& t) {
        WeightVector w = obs.empty() ? WeightVector(a.dimension()) : obs.back().weight;
        return w + WeightVector::from_ints(t);
    };
    std::function<void(std::size_t)> walk = [&](std::size_t x) {
        auto got = oracle_estimate(a, obs);
        if (got != observer.states[x])
            out.push_back("after " + to_string(obs) + ": observer " + a.describe(observer.states[x]) + ", oracle " +
                          a.describe(got));
        if (obs.size() == depth) return;
        // weights outside every cell lead nowhere
        if (a.dimension() == 1)
            for (const auto& sigma : labels)
                for (std::int64_t t = -6; t <= 6; ++t) {
                    bool covered = false;
                    for (auto e : observer.out[x])
                        covered = covered || (observer.edges[e].label == sigma && observer.edges[e].cell.contains({t}));
                    if (covered) continue;
                    obs.push_back({sigma, accumulated({t})});
                    if (!oracle_estimate(a, obs).empty())
                        out.push_back("after " + to_string(obs) + ": oracle estimate nonempty outside all cells");
                    obs.pop_back();
                }
        for (auto e : observer.out[x]) {
            const auto& edge = observer.edges[e];
            for (const auto& t : probe_points(edge.cell, extra)) {
                obs.push_back({edge.label, accumulated(t)});
                walk(edge.to);
                obs.pop_back();
            }
        }
    };
    walk(0);
    return out;
}

std::vector<std::string> detector_coverage_mismatches(const wdetect::WeightedAutomaton& a,
                                                      const wdetect::EstimatorAutomaton& observer,
                                                      const wdetect::EstimatorAutomaton& detector, std::size_t extra) {
    using namespace wdetect;
    std::vector<std::string> out;
    for (const auto& oe : observer.edges) {
        const auto& x = observer.states[oe.from];
        const auto& y = observer.states[oe.to];
        std::vector<StateSet> wanted;
        if (y.size() == 1) wanted.push_back(y);
        for (std::size_t i = 0; i < y.size(); ++i)
            for (std::size_t j = i + 1; j < y.size(); ++j) wanted.push_back({y[i], y[j]});
        for (const auto& t : probe_points(oe.cell, extra))
            for (const auto& target : wanted) {
                bool found = false;
                for (const auto& de : detector.edges)
                    found = found || (de.label == oe.label && detector.states[de.to] == target &&
                                      de.cell.contains(t) && subset_of(detector.states[de.from], x));
                if (!found)
                    out.push_back("observer edge " + a.describe(x) + " -(" + oe.label + "," + to_string(t) + ")-> " +
                                  a.describe(y) + " lacks detector edge into " + a.describe(target));
            }
    }
    return out;
}

}  // namespace testsupport
