// Exact scalars and small numeric utilities shared by every module.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace tw {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int factorial(long n) {
    Int r = 1;
    for (long k = 2; k <= n; ++k) r *= k;
    return r;
}

// (n)!! with the usual conventions (-1)!! = 0!! = 1.
inline Int double_factorial(long n) {
    Int r = 1;
    for (long k = n; k >= 2; k -= 2) r *= k;
    return r;
}

inline Int binomial_int(long n, long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    Rat b = base;
    bool inv = e < 0;
    unsigned long n = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    if (inv) {
        if (b == 0) throw std::domain_error("rat_pow: 0 to a negative power");
        b = Rat(denominator(b), numerator(b));
    }
    Rat r = 1, p = b;
    while (n) {
        if (n & 1) r *= p;
        p *= p;
        n >>= 1;
    }
    return r;
}

inline Rat two_pow(long e) { return rat_pow(Rat(2), e); }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// Rising factorial (a)_k = a(a+1)...(a+k-1), exact in the rational argument.
inline Rat pochhammer(const Rat& a, long k) {
    Rat r = 1;
    for (long i = 0; i < k; ++i) r *= (a + i);
    return r;
}

// Serialized form used across the CLI: integers bare, otherwise "p/q".
inline std::string rat_string(const Rat& r) {
    Int p = numerator(r), q = denominator(r);
    std::string s = p.str();
    if (q != 1) s += "/" + q.str();
    return s;
}

// Accepts "p/q", plain integers, and decimal literals ("0.25" -> 1/4).
inline Rat parse_rat(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto digits = [&text](const std::string& s) -> Int {
        try {
            return Int(s);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad rational literal: " + text);
        }
    };
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Int p = digits(text.substr(0, slash));
        Int q = digits(text.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("zero denominator: " + text);
        return Rat(p, q);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rat(digits(text));
    std::string head = text.substr(0, dot), tail = text.substr(dot + 1);
    bool neg = !head.empty() && head[0] == '-';
    if (neg) head = head.substr(1);
    if (head.empty()) head = "0";
    Int scale = 1;
    for (size_t i = 0; i < tail.size(); ++i) scale *= 10;
    Int p = digits(head) * scale + (tail.empty() ? Int(0) : digits(tail));
    Rat r(p, scale);
    return neg ? -r : r;
}

// Finite formal sums sum_k c_k * e^{q_k} with rational c, q: an exact commutative
// ring, enough to verify exponential-rate identities without floating point.
struct ExpSum {
    std::map<Rat, Rat> terms;  // exponent -> coefficient

    ExpSum() = default;
    explicit ExpSum(const Rat& c) {
        if (c != 0) terms[Rat(0)] = c;
    }
    static ExpSum exp_of(const Rat& q, const Rat& c = Rat(1)) {
        ExpSum s;
        if (c != 0) s.terms[q] = c;
        return s;
    }

    bool is_zero() const { return terms.empty(); }

    ExpSum& operator+=(const ExpSum& o) {
        for (const auto& [q, c] : o.terms) {
            auto it = terms.find(q);
            if (it == terms.end()) {
                terms.emplace(q, c);
            } else {
                it->second += c;
                if (it->second == 0) terms.erase(it);
            }
        }
        return *this;
    }
    ExpSum operator+(const ExpSum& o) const {
        ExpSum r = *this;
        r += o;
        return r;
    }
    ExpSum operator-() const {
        ExpSum r = *this;
        for (auto& [q, c] : r.terms) c = -c;
        return r;
    }
    ExpSum operator-(const ExpSum& o) const { return *this + (-o); }
    ExpSum& operator-=(const ExpSum& o) { return *this += (-o); }
    ExpSum operator*(const ExpSum& o) const {
        ExpSum r;
        for (const auto& [q1, c1] : terms)
            for (const auto& [q2, c2] : o.terms) {
                Rat q = q1 + q2, c = c1 * c2;
                auto it = r.terms.find(q);
                if (it == r.terms.end()) {
                    if (c != 0) r.terms.emplace(q, c);
                } else {
                    it->second += c;
                    if (it->second == 0) r.terms.erase(it);
                }
            }
        return r;
    }
    ExpSum& operator*=(const ExpSum& o) {
        *this = *this * o;
        return *this;
    }
    bool operator==(const ExpSum& o) const { return terms == o.terms; }

    double to_double() const {
        double v = 0;
        for (const auto& [q, c] : terms) v += tw::to_double(c) * std::exp(tw::to_double(q));
        return v;
    }
};

inline double scalar_to_double(double x) { return x; }
inline double scalar_to_double(const Rat& x) { return to_double(x); }
inline double scalar_to_double(const ExpSum& x) { return x.to_double(); }

struct KahanSum {
    double s = 0, c = 0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based per-worker stream derivation: reordering workers never changes
// the stream any one of them sees.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t worker) {
    std::uint64_t s = seed ^ (0x517cc1b727220a95ULL * (worker + 1));
    return splitmix64(s);
}

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() { return splitmix64(state); }
    double uniform() { return (next() >> 11) * 0x1.0p-53; }
    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

inline unsigned thread_count() {
    if (const char* env = std::getenv("TAU_WALK_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

}  // namespace tw
