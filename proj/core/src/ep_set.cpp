#include "wdetect/ep_set.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "wdetect/rational.hpp"

namespace wdetect {

namespace {

constexpr std::int64_t kMaxWindow = std::int64_t{1} << 26;

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
    std::int64_t l = lcm64(a, b);
    if (l > kMaxWindow) throw std::length_error("eventually periodic set: period too large");
    return l;
}

/// Explicit working form: bitmap on [lo, hi), periodic patterns outside.
struct Frame {
    std::int64_t lo = 0, hi = 0, period = 1;
    std::vector<char> bits, up, down;

    bool member(std::int64_t n) const {
        if (n < lo) return down[floor_mod(n, period)];
        if (n >= hi) return up[floor_mod(n, period)];
        return bits[n - lo];
    }
};

Frame make_frame(std::int64_t lo, std::int64_t hi, std::int64_t period,
                 const std::function<bool(std::int64_t)>& pred) {
    if (hi < lo) hi = lo;
    if (checked_sub(hi, lo) > kMaxWindow) throw std::length_error("eventually periodic set: window too large");
    Frame f;
    f.lo = lo;
    f.hi = hi;
    f.period = period;
    f.bits.resize(hi - lo);
    for (std::int64_t n = lo; n < hi; ++n) f.bits[n - lo] = pred(n);
    f.up.resize(period);
    f.down.resize(period);
    for (std::int64_t r = 0; r < period; ++r) {
        f.up[r] = pred(hi + floor_mod(r - hi, period));
        f.down[r] = pred(lo - 1 - floor_mod(lo - 1 - r, period));
    }
    return f;
}

EPSet::Tail minimal_tail(const std::vector<char>& pattern) {
    const auto p = static_cast<std::int64_t>(pattern.size());
    for (std::int64_t d = 1; d <= p; ++d) {
        if (p % d) continue;
        bool ok = true;
        for (std::int64_t i = d; i < p && ok; ++i) ok = pattern[i] == pattern[i % d];
        if (!ok) continue;
        EPSet::Tail t;
        t.period = d;
        for (std::int64_t r = 0; r < d; ++r)
            if (pattern[r]) t.residues.push_back(r);
        return t;
    }
    return {};
}

}  // namespace

bool EPSet::Tail::contains(std::int64_t n) const {
    return std::binary_search(residues.begin(), residues.end(), floor_mod(n, period));
}

// Canonical form from a frame; see the class comment for the definition.
struct EPSetAccess {
    static EPSet canonical(const Frame& f) {
        EPSet s;
        EPSet::Tail up = minimal_tail(f.up), down = minimal_tail(f.down);
        std::int64_t start = 0;
        bool found = false;
        for (std::int64_t n = f.hi - 1; n >= f.lo; --n)
            if (f.member(n) != up.contains(n)) {
                start = n + 1;
                found = true;
                break;
            }
        if (!found) {
            std::int64_t l = checked_lcm(up.period, down.period);
            for (std::int64_t n = f.lo - 1; n >= f.lo - l; --n)
                if (down.contains(n) != up.contains(n)) {
                    start = n + 1;
                    found = true;
                    break;
                }
        }
        if (!found) {
            s.down_end_ = -1;
            s.up_start_ = 0;
            s.up_ = up;
            s.down_ = up;
            return s;
        }
        std::int64_t end = start - 1;
        if (start > f.lo)
            for (std::int64_t n = f.lo; n < start; ++n)
                if (f.member(n) != down.contains(n)) {
                    end = n - 1;
                    break;
                }
        s.up_start_ = start;
        s.down_end_ = end;
        s.up_ = std::move(up);
        s.down_ = std::move(down);
        for (std::int64_t n = end + 1; n < start; ++n)
            if (f.member(n)) s.middle_.push_back(n);
        return s;
    }

    static Frame frame_of(const std::vector<const EPSet*>& sets, const std::function<bool(std::int64_t)>& pred) {
        std::int64_t lo = 0, hi = 0, p = 1;
        bool first = true;
        for (const auto* s : sets) {
            std::int64_t l = s->down_end_ + 1, h = s->up_start_;
            if (first) {
                lo = l;
                hi = h;
                first = false;
            } else {
                lo = std::min(lo, l);
                hi = std::max(hi, h);
            }
            p = checked_lcm(p, s->up_.period);
            p = checked_lcm(p, s->down_.period);
        }
        lo = std::min(lo, hi);
        return make_frame(lo, hi, p, pred);
    }
};

EPSet::EPSet() = default;

EPSet EPSet::all() { return residue_class(0, 1); }

EPSet EPSet::singleton(std::int64_t n) { return finite({n}); }

EPSet EPSet::finite(std::vector<std::int64_t> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    EPSet s;
    if (members.empty()) return s;
    s.middle_ = std::move(members);
    s.down_end_ = s.middle_.front() - 1;
    s.up_start_ = s.middle_.back() + 1;
    return s;
}

EPSet EPSet::up_ray(std::int64_t start, std::int64_t period) {
    if (period < 1) throw std::invalid_argument("period must be positive");
    Tail t{period, {floor_mod(start, period)}};
    return from_parts(start - 1, Tail{}, {}, start, t);
}

EPSet EPSet::down_ray(std::int64_t start, std::int64_t period) {
    if (period < 1) throw std::invalid_argument("period must be positive");
    Tail t{period, {floor_mod(start, period)}};
    return from_parts(start, t, {}, start + 1, Tail{});
}

EPSet EPSet::residue_class(std::int64_t residue, std::int64_t period) {
    if (period < 1) throw std::invalid_argument("period must be positive");
    EPSet s;
    s.up_ = Tail{period, {floor_mod(residue, period)}};
    s.down_ = s.up_;
    return s;
}

EPSet EPSet::interval(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) return EPSet();
    if (checked_sub(hi, lo) > kMaxWindow) throw std::length_error("interval too large");
    std::vector<std::int64_t> v;
    for (std::int64_t n = lo; n <= hi; ++n) v.push_back(n);
    return finite(std::move(v));
}

EPSet EPSet::from_parts(std::int64_t down_end, Tail down, std::vector<std::int64_t> middle,
                        std::int64_t up_start, Tail up) {
    std::sort(middle.begin(), middle.end());
    auto pred = [&](std::int64_t n) {
        if (n <= down_end) return down.contains(n);
        if (n >= up_start) return up.contains(n);
        return std::binary_search(middle.begin(), middle.end(), n);
    };
    std::int64_t lo = down_end + 1, hi = std::max(up_start, lo);
    std::int64_t p = checked_lcm(std::max<std::int64_t>(down.period, 1), std::max<std::int64_t>(up.period, 1));
    return EPSetAccess::canonical(make_frame(lo, hi, p, pred));
}

bool EPSet::contains(std::int64_t n) const {
    if (n <= down_end_) return down_.contains(n);
    if (n >= up_start_) return up_.contains(n);
    return std::binary_search(middle_.begin(), middle_.end(), n);
}

bool EPSet::is_empty() const { return middle_.empty() && up_.empty() && down_.empty(); }

std::optional<std::int64_t> EPSet::min_abs_witness() const {
    std::optional<std::int64_t> best;
    auto consider = [&](std::int64_t n) {
        if (!best) {
            best = n;
            return;
        }
        auto an = n < 0 ? -n : n, ab = *best < 0 ? -*best : *best;
        if (an < ab || (an == ab && n > *best)) best = n;
    };
    for (auto n : middle_) consider(n);
    // Upward tail: nearest members around max(up_start, 0) within one period either side of 0.
    if (!up_.empty()) {
        for (auto r : up_.residues) {
            std::int64_t from = std::max<std::int64_t>(up_start_, 0);
            consider(from + floor_mod(r - from, up_.period));
            if (up_start_ < 0) {
                std::int64_t below = -1 - floor_mod(-1 - r, up_.period);
                if (below >= up_start_) consider(below);
            }
        }
    }
    if (!down_.empty()) {
        for (auto r : down_.residues) {
            std::int64_t from = std::min<std::int64_t>(down_end_, 0);
            consider(from - floor_mod(from - r, down_.period));
            if (down_end_ > 0) {
                std::int64_t above = floor_mod(r, down_.period);
                if (above <= down_end_) consider(above);
            }
        }
    }
    return best;
}

std::optional<std::int64_t> EPSet::min() const {
    if (!down_.empty()) return std::nullopt;
    if (!middle_.empty()) return middle_.front();
    if (up_.empty()) return std::nullopt;
    std::int64_t best = 0;
    bool first = true;
    for (auto r : up_.residues) {
        auto v = up_start_ + floor_mod(r - up_start_, up_.period);
        if (first || v < best) best = v;
        first = false;
    }
    return best;
}

std::optional<std::int64_t> EPSet::max() const {
    if (!up_.empty()) return std::nullopt;
    if (!middle_.empty()) return middle_.back();
    if (down_.empty()) return std::nullopt;
    std::int64_t best = 0;
    bool first = true;
    for (auto r : down_.residues) {
        auto v = down_end_ - floor_mod(down_end_ - r, down_.period);
        if (first || v > best) best = v;
        first = false;
    }
    return best;
}

std::vector<std::int64_t> EPSet::members_in(std::int64_t lo, std::int64_t hi) const {
    std::vector<std::int64_t> out;
    for (std::int64_t n = lo; n <= hi; ++n)
        if (contains(n)) out.push_back(n);
    return out;
}

EPSet EPSet::operator|(const EPSet& o) const {
    return EPSetAccess::canonical(EPSetAccess::frame_of({this, &o}, [&](std::int64_t n) { return contains(n) || o.contains(n); }));
}

EPSet EPSet::operator&(const EPSet& o) const {
    return EPSetAccess::canonical(EPSetAccess::frame_of({this, &o}, [&](std::int64_t n) { return contains(n) && o.contains(n); }));
}

EPSet EPSet::operator-(const EPSet& o) const {
    return EPSetAccess::canonical(EPSetAccess::frame_of({this, &o}, [&](std::int64_t n) { return contains(n) && !o.contains(n); }));
}

EPSet EPSet::complement() const {
    return EPSetAccess::canonical(EPSetAccess::frame_of({this}, [&](std::int64_t n) { return !contains(n); }));
}

namespace {

EPSet::Tail rotate(const EPSet::Tail& t, std::int64_t c) {
    EPSet::Tail r{t.period, {}};
    for (auto x : t.residues) r.residues.push_back(floor_mod(x + c, t.period));
    std::sort(r.residues.begin(), r.residues.end());
    return r;
}

}  // namespace

EPSet EPSet::shift(std::int64_t c) const {
    if (c == 0) return *this;
    std::vector<std::int64_t> mid;
    for (auto n : middle_) mid.push_back(checked_add(n, c));
    return from_parts(checked_add(down_end_, c), rotate(down_, c), std::move(mid), checked_add(up_start_, c),
                      rotate(up_, c));
}

EPSet EPSet::negate() const {
    EPSet::Tail up = rotate(down_, 0), down = rotate(up_, 0);
    for (auto& r : up.residues) r = floor_mod(-r, up.period);
    for (auto& r : down.residues) r = floor_mod(-r, down.period);
    std::sort(up.residues.begin(), up.residues.end());
    std::sort(down.residues.begin(), down.residues.end());
    std::vector<std::int64_t> mid;
    for (auto n : middle_) mid.push_back(-n);
    return from_parts(-up_start_, down, mid, -down_end_, up);
}

std::int64_t EPSet::gcd() const {
    std::int64_t g = 0;
    for (auto n : middle_) g = std::gcd(g, n);
    for (auto r : up_.residues) g = std::gcd(std::gcd(g, up_.period), up_start_ + floor_mod(r - up_start_, up_.period));
    for (auto r : down_.residues)
        g = std::gcd(std::gcd(g, down_.period), down_end_ - floor_mod(down_end_ - r, down_.period));
    return g;
}

std::string EPSet::str() const {
    if (is_empty()) return "{}";
    std::string s;
    auto tail = [](const Tail& t) {
        std::string r = "n mod " + std::to_string(t.period) + " in {";
        for (std::size_t i = 0; i < t.residues.size(); ++i) r += (i ? "," : "") + std::to_string(t.residues[i]);
        return r + "}";
    };
    std::vector<std::string> parts;
    if (!down_.empty() && !up_.empty() && down_end_ == -1 && up_start_ == 0 && down_ == up_ && middle_.empty())
        return "{n : " + tail(up_) + "}";
    if (!down_.empty()) parts.push_back("{n <= " + std::to_string(down_end_) + " : " + tail(down_) + "}");
    if (!middle_.empty()) {
        std::string m = "{";
        for (std::size_t i = 0; i < middle_.size(); ++i) m += (i ? "," : "") + std::to_string(middle_[i]);
        parts.push_back(m + "}");
    }
    if (!up_.empty()) parts.push_back("{n >= " + std::to_string(up_start_) + " : " + tail(up_) + "}");
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " u " : "") + parts[i];
    return s;
}

// ---- Minkowski sum, span, star --------------------------------------------

namespace {

/// Union of points and rays; rays with equal period and residue keep only the
/// extreme start.
class AtomUnion {
public:
    void point(std::int64_t c) { points_.push_back(c); }
    void up(std::int64_t c, std::int64_t p) {
        auto key = std::make_pair(p, floor_mod(c, p));
        auto it = up_.find(key);
        if (it == up_.end() || c < it->second) up_[key] = c;
    }
    void down(std::int64_t c, std::int64_t p) {
        auto key = std::make_pair(p, floor_mod(c, p));
        auto it = down_.find(key);
        if (it == down_.end() || c > it->second) down_[key] = c;
    }
    void set(const EPSet& s, std::int64_t shift = 0) {
        for (auto n : s.middle()) point(checked_add(n, shift));
        for (auto r : s.up().residues)
            up(checked_add(s.up_start() + floor_mod(r - s.up_start(), s.up().period), shift), s.up().period);
        for (auto r : s.down().residues)
            down(checked_add(s.down_end() - floor_mod(s.down_end() - r, s.down().period), shift), s.down().period);
    }

    EPSet build() {
        std::sort(points_.begin(), points_.end());
        points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
        if (points_.empty() && up_.empty() && down_.empty()) return EPSet();
        std::int64_t period = 1;
        bool first = true;
        std::int64_t lo = 0, hi = 0;
        auto widen = [&](std::int64_t l, std::int64_t h) {
            if (first) {
                lo = l;
                hi = h;
                first = false;
            } else {
                lo = std::min(lo, l);
                hi = std::max(hi, h);
            }
        };
        if (!points_.empty()) widen(points_.front(), points_.back() + 1);
        for (auto& [k, c] : up_) {
            period = checked_lcm(period, k.first);
            widen(c, c + 1);
        }
        for (auto& [k, c] : down_) {
            period = checked_lcm(period, k.first);
            widen(c, c + 1);
        }
        if (checked_sub(hi, lo) > kMaxWindow) throw std::length_error("eventually periodic set: window too large");
        Frame f;
        f.lo = lo;
        f.hi = hi;
        f.period = period;
        f.bits.assign(hi - lo, 0);
        f.up.assign(period, 0);
        f.down.assign(period, 0);
        for (auto c : points_) f.bits[c - lo] = 1;
        for (auto& [k, c] : up_) {
            for (std::int64_t n = c; n < hi; n += k.first) f.bits[n - lo] = 1;
            for (std::int64_t r = floor_mod(c, k.first); r < period; r += k.first) f.up[r] = 1;
        }
        for (auto& [k, c] : down_) {
            for (std::int64_t n = c; n >= lo; n -= k.first) f.bits[n - lo] = 1;
            for (std::int64_t r = floor_mod(c, k.first); r < period; r += k.first) f.down[r] = 1;
        }
        return EPSetAccess::canonical(f);
    }

private:
    std::vector<std::int64_t> points_;
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> up_, down_;
};

struct Atoms {
    std::vector<std::int64_t> points;
    std::vector<std::pair<std::int64_t, std::int64_t>> up, down;  // (start, period)
};

Atoms atoms_of(const EPSet& s) {
    Atoms a;
    a.points = s.middle();
    for (auto r : s.up().residues)
        a.up.emplace_back(s.up_start() + floor_mod(r - s.up_start(), s.up().period), s.up().period);
    for (auto r : s.down().residues)
        a.down.emplace_back(s.down_end() - floor_mod(s.down_end() - r, s.down().period), s.down().period);
    return a;
}

EPSet positive_span(std::vector<std::int64_t> gens) {
    // gens all > 0
    std::int64_t g = 0, hmax = 0;
    for (auto x : gens) g = std::gcd(g, x);
    for (auto& x : gens) {
        x /= g;
        hmax = std::max(hmax, x);
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    // Every multiple of g from g*hmax^2 on is representable (Frobenius bound).
    std::int64_t bound = checked_mul(hmax, hmax);
    if (bound > kMaxWindow) throw std::length_error("span: generators too large");
    std::vector<char> ok(bound + 1, 0);
    ok[0] = 1;
    for (std::int64_t n = 1; n <= bound; ++n)
        for (auto h : gens) {
            if (h > n) break;
            if (ok[n - h]) {
                ok[n] = 1;
                break;
            }
        }
    std::vector<std::int64_t> pts;
    for (std::int64_t n = 0; n < bound; ++n)
        if (ok[n]) pts.push_back(checked_mul(n, g));
    AtomUnion u;
    for (auto p : pts) u.point(p);
    u.up(checked_mul(bound, g), g);
    return u.build();
}

}  // namespace

EPSet span(const std::vector<std::int64_t>& generators) {
    std::vector<std::int64_t> pos, neg;
    std::int64_t g = 0;
    for (auto x : generators) {
        if (x > 0) pos.push_back(x);
        if (x < 0) neg.push_back(-x);
        g = std::gcd(g, x);
    }
    if (pos.empty() && neg.empty()) return EPSet::singleton(0);
    if (!pos.empty() && !neg.empty()) return EPSet::residue_class(0, g);
    if (neg.empty()) return positive_span(pos);
    return positive_span(neg).negate();
}

EPSet EPSet::plus(const EPSet& o) const {
    if (is_empty() || o.is_empty()) return EPSet();
    Atoms a = atoms_of(*this), b = atoms_of(o);
    AtomUnion u;
    // point + point
    if (!a.points.empty() && !b.points.empty()) {
        std::int64_t lo = checked_add(a.points.front(), b.points.front());
        std::int64_t hi = checked_add(a.points.back(), b.points.back());
        if (checked_sub(hi, lo) > kMaxWindow) throw std::length_error("Minkowski sum: window too large");
        std::vector<char> mark(hi - lo + 1, 0);
        for (auto x : a.points)
            for (auto y : b.points) mark[x + y - lo] = 1;
        for (std::int64_t i = 0; i <= hi - lo; ++i)
            if (mark[i]) u.point(lo + i);
    }
    auto point_ray = [&](const Atoms& p, const Atoms& r) {
        for (auto x : p.points) {
            for (auto [c, per] : r.up) u.up(checked_add(x, c), per);
            for (auto [c, per] : r.down) u.down(checked_add(x, c), per);
        }
    };
    point_ray(a, b);
    point_ray(b, a);
    std::map<std::pair<std::int64_t, std::int64_t>, EPSet> span_cache;
    auto span2 = [&](std::int64_t p1, std::int64_t p2) -> const EPSet& {
        auto key = std::minmax(p1, p2);
        auto it = span_cache.find(key);
        if (it == span_cache.end()) it = span_cache.emplace(key, span({p1, p2})).first;
        return it->second;
    };
    for (auto [c1, p1] : a.up)
        for (auto [c2, p2] : b.up) u.set(span2(p1, p2), checked_add(c1, c2));
    for (auto [c1, p1] : a.down)
        for (auto [c2, p2] : b.down) u.set(span2(p1, p2).negate(), checked_add(c1, c2));
    auto mixed = [&](const Atoms& x, const Atoms& y) {
        for (auto [c1, p1] : x.up)
            for (auto [c2, p2] : y.down) {
                std::int64_t g = std::gcd(p1, p2), c = checked_add(c1, c2);
                u.up(c, g);
                u.down(c - g, g);
            }
    };
    mixed(a, b);
    mixed(b, a);
    return u.build();
}

EPSet EPSet::star() const {
    if (is_empty()) return singleton(0);
    bool has_pos = !up_.empty() || (!middle_.empty() && middle_.back() > 0) ||
                   (!down_.empty() && max().value_or(1) > 0);
    bool has_neg = !down_.empty() || (!middle_.empty() && middle_.front() < 0) ||
                   (!up_.empty() && min().value_or(-1) < 0);
    if (has_pos && has_neg) return residue_class(0, gcd());
    if (!has_pos && !has_neg) return singleton(0);
    if (has_neg) return negate().star().negate();
    // Nonnegative: span of the points times, per upward ray (c, p), {0} u (c + span{c, p}).
    Atoms a = atoms_of(*this);
    EPSet result = span(a.points);
    for (auto [c, p] : a.up) {
        EPSet ray_monoid = singleton(0) | span({c, p}).shift(c);
        result = result.plus(ray_monoid);
    }
    return result;
}

EPSet eps_union(const EPSet& a, const EPSet& b) { return a | b; }
EPSet eps_intersect(const EPSet& a, const EPSet& b) { return a & b; }
EPSet eps_complement(const EPSet& a) { return a.complement(); }
EPSet eps_shift(const EPSet& a, std::int64_t c) { return a.shift(c); }
EPSet eps_difference(const EPSet& a, const EPSet& b) { return a - b; }
bool eps_is_empty(const EPSet& a) { return a.is_empty(); }
std::optional<std::int64_t> eps_witness(const EPSet& a) { return a.witness(); }
std::optional<std::int64_t> eps_min_abs_witness(const EPSet& a) { return a.min_abs_witness(); }

}  // namespace wdetect
