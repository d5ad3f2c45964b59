#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace dimers {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Complex = std::complex<double>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct IVec2 {
    int x = 0;
    int y = 0;
    friend IVec2 operator+(IVec2 a, IVec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend IVec2 operator-(IVec2 a, IVec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend IVec2 operator-(IVec2 a) { return {-a.x, -a.y}; }
    friend IVec2 operator*(int k, IVec2 a) { return {k * a.x, k * a.y}; }
    IVec2& operator+=(IVec2 b) { x += b.x; y += b.y; return *this; }
    IVec2& operator-=(IVec2 b) { x -= b.x; y -= b.y; return *this; }
    friend bool operator==(IVec2, IVec2) = default;
    friend auto operator<=>(IVec2, IVec2) = default;
    bool zero() const { return x == 0 && y == 0; }
};

struct Vec2 {
    double x = 0;
    double y = 0;
    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
    friend Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
    Vec2& operator+=(Vec2 b) { x += b.x; y += b.y; return *this; }
    static Vec2 of(IVec2 v) { return {double(v.x), double(v.y)}; }
};

inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Counterclockwise angle from a to b, in [0, 2pi).
inline double ccw_angle(Vec2 a, Vec2 b) {
    double t = std::atan2(cross(a, b), dot(a, b));
    if (t < 0) t += 2 * M_PI;
    return t;
}

inline int floor_div(int a, int n) { return a >= 0 ? a / n : -((-a + n - 1) / n); }
inline int mod(int a, int n) { return a - n * floor_div(a, n); }

// Parses "p/q", "p" or a decimal string exactly.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);
inline double to_double(const Rational& q) { return q.convert_to<double>(); }

template <class T> T from_rational(const Rational& q);
template <> inline Rational from_rational<Rational>(const Rational& q) { return q; }
template <> inline double from_rational<double>(const Rational& q) { return to_double(q); }
template <> inline Complex from_rational<Complex>(const Rational& q) { return {to_double(q), 0.0}; }

template <class S, class T> inline S scalar_cast(const T& x) {
    if constexpr (std::is_same_v<T, Rational>) return from_rational<S>(x);
    else return S(x);
}

template <class T> inline T ipow(const T& x, int k) {
    T r(1);
    T b = k >= 0 ? x : T(1) / x;
    for (int e = k >= 0 ? k : -k; e > 0; e >>= 1) {
        if (e & 1) r = r * b;
        b = b * b;
    }
    return r;
}

inline double magnitude(const Rational& q) { return std::abs(to_double(q)); }
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Complex& x) { return std::abs(x); }

// Counter-based generator: stream i of seed s is SplitMix64 over (s, i, counter).
class RandomStream {
public:
    using result_type = std::uint64_t;
    RandomStream(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type(0); }
    result_type operator()() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }
    // Uniform in [0, 1).
    double uniform() { return double((*this)() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace dimers
