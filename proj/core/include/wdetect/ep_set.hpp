#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wdetect {

/// Eventually periodic subset of Z, kept in a unique canonical form:
///
///   n <= down_end            member iff n mod down.period in down.residues
///   down_end < n < up_start  member iff n in middle
///   n >= up_start            member iff n mod up.period in up.residues
///
/// Periods are minimal, up_start is the least threshold from which the set follows
/// its upward pattern, and down_end is the largest value below up_start from which
/// the set follows its downward pattern. A set that is periodic on all of Z is
/// stored with up_start = 0, down_end = -1 and identical tails.
class EPSet {
public:
    struct Tail {
        std::int64_t period = 1;
        std::vector<std::int64_t> residues;  // sorted, in [0, period)
        bool empty() const { return residues.empty(); }
        bool contains(std::int64_t n) const;
        friend bool operator==(const Tail&, const Tail&) = default;
    };

    EPSet();  // empty set

    static EPSet empty_set() { return EPSet(); }
    static EPSet all();
    static EPSet singleton(std::int64_t n);
    static EPSet finite(std::vector<std::int64_t> members);
    /// {start, start + period, start + 2 period, ...}
    static EPSet up_ray(std::int64_t start, std::int64_t period);
    /// {start, start - period, start - 2 period, ...}
    static EPSet down_ray(std::int64_t start, std::int64_t period);
    /// residue + period Z
    static EPSet residue_class(std::int64_t residue, std::int64_t period);
    /// [lo, hi] (closed)
    static EPSet interval(std::int64_t lo, std::int64_t hi);
    /// {n >= lo}
    static EPSet at_least(std::int64_t lo) { return up_ray(lo, 1); }
    /// {n <= hi}
    static EPSet at_most(std::int64_t hi) { return down_ray(hi, 1); }
    /// Builds the canonical form from an arbitrary (not necessarily minimal) description.
    static EPSet from_parts(std::int64_t down_end, Tail down, std::vector<std::int64_t> middle,
                            std::int64_t up_start, Tail up);

    bool contains(std::int64_t n) const;
    bool is_empty() const;
    bool is_finite() const { return up_.empty() && down_.empty(); }
    bool bounded_below() const { return down_.empty(); }
    bool bounded_above() const { return up_.empty(); }
    /// Any member (the one of least absolute value).
    std::optional<std::int64_t> witness() const { return min_abs_witness(); }
    /// Member of least absolute value; ties go to the nonnegative one.
    std::optional<std::int64_t> min_abs_witness() const;
    std::optional<std::int64_t> min() const;
    std::optional<std::int64_t> max() const;
    /// Members within [lo, hi].
    std::vector<std::int64_t> members_in(std::int64_t lo, std::int64_t hi) const;

    std::int64_t down_end() const { return down_end_; }
    std::int64_t up_start() const { return up_start_; }
    const Tail& down() const { return down_; }
    const Tail& up() const { return up_; }
    const std::vector<std::int64_t>& middle() const { return middle_; }

    EPSet operator|(const EPSet& o) const;
    EPSet operator&(const EPSet& o) const;
    EPSet operator-(const EPSet& o) const;  // difference
    EPSet complement() const;
    EPSet shift(std::int64_t c) const;
    EPSet negate() const;  // {-n : n in S}
    /// Minkowski sum {a + b}.
    EPSet plus(const EPSet& o) const;
    /// Submonoid of (Z,+) generated by the set (always contains 0).
    EPSet star() const;
    /// gcd of all members (0 for the empty set and {0}).
    std::int64_t gcd() const;

    std::string str() const;

    friend bool operator==(const EPSet&, const EPSet&) = default;

private:
    friend struct EPSetAccess;
    std::int64_t down_end_ = -1;
    Tail down_;
    std::vector<std::int64_t> middle_;
    std::int64_t up_start_ = 0;
    Tail up_;
};

EPSet eps_union(const EPSet& a, const EPSet& b);
EPSet eps_intersect(const EPSet& a, const EPSet& b);
EPSet eps_complement(const EPSet& a);
EPSet eps_shift(const EPSet& a, std::int64_t c);
EPSet eps_difference(const EPSet& a, const EPSet& b);
bool eps_is_empty(const EPSet& a);
std::optional<std::int64_t> eps_witness(const EPSet& a);
std::optional<std::int64_t> eps_min_abs_witness(const EPSet& a);

/// Nonnegative integer combinations of the generators (the N-span).
EPSet span(const std::vector<std::int64_t>& generators);

}  // namespace wdetect
