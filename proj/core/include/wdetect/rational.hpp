#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace wdetect {

// Overflow-checked 64-bit helpers. Throw std::overflow_error.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);
/// Mathematical modulo: result in [0, m) for m > 0.
inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// Exact rational in lowest terms, positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n) {}  // NOLINT(implicit)
    Rational(std::int64_t n, std::int64_t d);

    /// Accepts "n", "-n", "n/d", "-n/d" (decimal digits only).
    static Rational parse(std::string_view text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }

    std::string str() const;

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Weight vector in Q^k.
class WeightVector {
public:
    WeightVector() = default;
    explicit WeightVector(std::size_t k) : entries_(k) {}
    explicit WeightVector(std::vector<Rational> entries) : entries_(std::move(entries)) {}
    static WeightVector from_ints(const std::vector<std::int64_t>& v);

    std::size_t dimension() const { return entries_.size(); }
    const Rational& operator[](std::size_t i) const { return entries_[i]; }
    Rational& operator[](std::size_t i) { return entries_[i]; }
    const std::vector<Rational>& entries() const { return entries_; }

    bool is_zero() const;
    bool is_integral() const;
    /// Only valid when is_integral().
    std::vector<std::int64_t> to_ints() const;
    std::string str() const;  // "(a, b)"

    friend WeightVector operator+(const WeightVector& a, const WeightVector& b);
    friend WeightVector operator-(const WeightVector& a, const WeightVector& b);
    friend WeightVector operator*(const WeightVector& a, const Rational& s);
    friend bool operator==(const WeightVector&, const WeightVector&) = default;
    friend auto operator<=>(const WeightVector&, const WeightVector&) = default;

private:
    std::vector<Rational> entries_;
};

using IntVec = std::vector<std::int64_t>;

IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
bool is_zero(const IntVec& v);
std::string to_string(const IntVec& v);

}  // namespace wdetect
