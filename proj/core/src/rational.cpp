#include "wdetect/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace wdetect {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
    return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in subtraction");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
    return r;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    std::int64_t g = std::gcd(a, b);
    return checked_mul(a / g < 0 ? -(a / g) : a / g, b < 0 ? -b : b);
}

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("zero denominator");
    if (d < 0) {
        n = checked_sub(0, n);
        d = checked_sub(0, d);
    }
    std::int64_t g = std::gcd(n, d);
    num_ = n / g;
    den_ = d / g;
}

Rational Rational::parse(std::string_view text) {
    auto bad = [&] { return std::invalid_argument("not a rational: \"" + std::string(text) + "\""); };
    auto parse_int = [&](std::string_view s, bool allow_sign) -> std::int64_t {
        if (s.empty()) throw bad();
        bool neg = false;
        if (allow_sign && s.front() == '-') {
            neg = true;
            s.remove_prefix(1);
        }
        if (s.empty()) throw bad();
        for (char c : s)
            if (c < '0' || c > '9') throw bad();
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size()) throw bad();
        return neg ? -v : v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text, true));
    std::int64_t n = parse_int(text.substr(0, slash), true);
    std::int64_t d = parse_int(text.substr(slash + 1), false);
    if (d == 0) throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
    return Rational(n, d);
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const { return Rational(checked_sub(0, num_), den_); }

Rational operator+(const Rational& a, const Rational& b) {
    std::int64_t g = std::gcd(a.den_, b.den_);
    std::int64_t n = checked_add(checked_mul(a.num_, b.den_ / g), checked_mul(b.num_, a.den_ / g));
    return Rational(n, checked_mul(a.den_ / g, b.den_));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    std::int64_t g1 = std::gcd(a.num_, b.den_), g2 = std::gcd(b.num_, a.den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return Rational(checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1));
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("division by zero");
    return a * Rational(b.den_, b.num_);
}

__extension__ using wide = __int128;

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    wide l = static_cast<wide>(a.num_) * b.den_;
    wide r = static_cast<wide>(b.num_) * a.den_;
    return l <=> r;
}

WeightVector WeightVector::from_ints(const std::vector<std::int64_t>& v) {
    WeightVector w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w.entries_[i] = Rational(v[i]);
    return w;
}

bool WeightVector::is_zero() const {
    for (const auto& r : entries_)
        if (!r.is_zero()) return false;
    return true;
}

bool WeightVector::is_integral() const {
    for (const auto& r : entries_)
        if (!r.is_integer()) return false;
    return true;
}

std::vector<std::int64_t> WeightVector::to_ints() const {
    std::vector<std::int64_t> out;
    out.reserve(entries_.size());
    for (const auto& r : entries_) {
        if (!r.is_integer()) throw std::logic_error("weight is not integral: " + r.str());
        out.push_back(r.num());
    }
    return out;
}

std::string WeightVector::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) s += ", ";
        s += entries_[i].str();
    }
    return s + ")";
}

WeightVector operator+(const WeightVector& a, const WeightVector& b) {
    if (a.dimension() != b.dimension()) throw std::invalid_argument("dimension mismatch");
    WeightVector r(a.dimension());
    for (std::size_t i = 0; i < a.dimension(); ++i) r.entries_[i] = a.entries_[i] + b.entries_[i];
    return r;
}

WeightVector operator-(const WeightVector& a, const WeightVector& b) {
    if (a.dimension() != b.dimension()) throw std::invalid_argument("dimension mismatch");
    WeightVector r(a.dimension());
    for (std::size_t i = 0; i < a.dimension(); ++i) r.entries_[i] = a.entries_[i] - b.entries_[i];
    return r;
}

WeightVector operator*(const WeightVector& a, const Rational& s) {
    WeightVector r(a.dimension());
    for (std::size_t i = 0; i < a.dimension(); ++i) r.entries_[i] = a.entries_[i] * s;
    return r;
}

IntVec add(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
    return r;
}

IntVec sub(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_sub(a[i], b[i]);
    return r;
}

bool is_zero(const IntVec& v) {
    for (auto x : v)
        if (x != 0) return false;
    return true;
}

std::string to_string(const IntVec& v) {
    if (v.size() == 1) return std::to_string(v[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

}  // namespace wdetect
