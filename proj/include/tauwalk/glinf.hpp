// Signed hop actions on Maya diagrams and weighted graph operators built from
// them.  Matrix elements of T-fold operator products are signed path sums; a
// brute-force enumerator doubles as the oracle for the propagated values.
#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "tauwalk/numeric.hpp"
#include "tauwalk/partition.hpp"
#include "tauwalk/potential.hpp"

namespace tw {

// Basis label: a partition together with the charge (level) of its vacuum.
struct StateKey {
    Partition p;
    int level = 0;

    bool operator==(const StateKey& o) const { return level == o.level && p == o.p; }
    std::strong_ordering operator<=>(const StateKey& o) const {
        if (level != o.level) return level <=> o.level;
        return p <=> o.p;
    }
};

// Occupation of an integer site in the particle picture of (p, level).
bool site_occupied(const Partition& p, int level, long site);

inline int charge(const MayaDiagram& m) { return m.level; }
inline int charge(const StateKey& s) { return s.level; }

struct HopResult {
    StateKey state;
    int sign;  // (-1)^{# occupied sites strictly between source and target}
};

// Move the particle at site k to site i.  Null when k is empty or i occupied.
std::optional<HopResult> apply_Eik(long i, long k, const StateKey& s);
std::optional<std::pair<MayaDiagram, int>> apply_Eik(long i, long k, const MayaDiagram& m);

struct TruncationPolicy {
    long max_weight = -1;  // -1: unbounded
    int max_length = -1;
    double coeff_floor = 0.0;  // float coefficients with |c| <= floor are dropped
};

struct TruncationOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BruteForceBoundExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class S>
inline bool scalar_is_zero(const S& v) {
    if constexpr (std::is_same_v<S, double>)
        return v == 0.0;
    else if constexpr (std::is_same_v<S, ExpSum>)
        return v.is_zero();
    else
        return v == 0;
}

// Sum of single-particle moves:  arc (to, from) carries weight a and acts as
// a * E_{to,from} on every basis diagram.
template <class S>
struct GraphOperator {
    using Arc = std::pair<long, long>;  // (to, from)
    std::map<Arc, S> arcs;
    long lo = 0, hi = 0;  // site window the arcs live in

    void add_arc(long to, long from, const S& w) {
        if (to == from) throw std::invalid_argument("diagonal arc");
        auto [it, fresh] = arcs.emplace(Arc{to, from}, w);
        if (!fresh) it->second += w;
        lo = std::min({lo, to, from});
        hi = std::max({hi, to, from});
    }
};

template <class S>
struct WeightedStateVector {
    std::map<StateKey, S> entries;

    void add(const StateKey& k, const S& c) {
        auto it = entries.find(k);
        if (it == entries.end()) {
            if (!scalar_is_zero(c)) entries.emplace(k, c);
        } else {
            it->second += c;
            if (scalar_is_zero(it->second)) entries.erase(it);
        }
    }
};

namespace detail {

template <class S>
void check_policy(const StateKey& k, const TruncationPolicy& pol) {
    if (pol.max_weight >= 0 && k.p.weight() > pol.max_weight)
        throw TruncationOverflow("state weight " + std::to_string(k.p.weight()) +
                                 " exceeds the configured bound");
    if (pol.max_length >= 0 && k.p.length() > pol.max_length)
        throw TruncationOverflow("state length " + std::to_string(k.p.length()) +
                                 " exceeds the configured bound");
}

}  // namespace detail

// One application of the operator.  Contributions are generated in the
// canonical (entry, arc) order and summed in that order per target key, so the
// result is bit-identical however many workers expand the fan-out.
template <class S>
WeightedStateVector<S> apply_operator(const GraphOperator<S>& A, const WeightedStateVector<S>& v,
                                      const TruncationPolicy& pol = {}) {
    std::vector<const std::pair<const StateKey, S>*> src;
    src.reserve(v.entries.size());
    for (const auto& e : v.entries) src.push_back(&e);

    using Contrib = std::pair<StateKey, S>;
    auto expand_range = [&](size_t b, size_t e, std::vector<Contrib>& out) {
        for (size_t idx = b; idx < e; ++idx) {
            const auto& [key, coeff] = *src[idx];
            for (const auto& [arc, w] : A.arcs) {
                if (scalar_is_zero(w)) continue;
                auto hop = apply_Eik(arc.first, arc.second, key);
                if (!hop) continue;
                detail::check_policy<S>(hop->state, pol);
                S val = coeff * w;
                if (hop->sign < 0) val = -val;
                out.emplace_back(std::move(hop->state), std::move(val));
            }
        }
    };

    unsigned workers = thread_count();
    std::vector<Contrib> flat;
    if (workers <= 1 || src.size() < 64) {
        expand_range(0, src.size(), flat);
    } else {
        workers = std::min<size_t>(workers, src.size());
        std::vector<std::vector<Contrib>> parts(workers);
        std::vector<std::exception_ptr> errs(workers);
        std::vector<std::thread> pool;
        size_t chunk = (src.size() + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            size_t b = w * chunk, e = std::min(src.size(), b + chunk);
            pool.emplace_back([&, w, b, e] {
                try {
                    expand_range(b, e, parts[w]);
                } catch (...) {
                    errs[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& err : errs)
            if (err) std::rethrow_exception(err);
        for (auto& p : parts)
            for (auto& c : p) flat.emplace_back(std::move(c));
    }

    WeightedStateVector<S> out;
    for (auto& [key, val] : flat) out.add(key, val);
    if constexpr (std::is_same_v<S, double>) {
        if (pol.coeff_floor > 0) {
            for (auto it = out.entries.begin(); it != out.entries.end();) {
                if (std::abs(it->second) <= pol.coeff_floor)
                    it = out.entries.erase(it);
                else
                    ++it;
            }
        }
    }
    return out;
}

// <lam| A^T |nu> at the given charge: repeated application with exact
// reachability pruning (one arc changes the weight by exactly to - from).
template <class S>
S matrix_element(const GraphOperator<S>& A, int T, const Partition& nu, const Partition& lam,
                 int level = 0, const TruncationPolicy& pol = {}) {
    if (T < 0) throw std::invalid_argument("negative duration");
    long dmax = 0;
    for (const auto& [arc, w] : A.arcs)
        dmax = std::max(dmax, std::abs(arc.first - arc.second));
    WeightedStateVector<S> v;
    v.entries.emplace(StateKey{nu, level}, S(1));
    for (int t = 0; t < T; ++t) {
        v = apply_operator(A, v, pol);
        long rem = static_cast<long>(T - t - 1) * dmax;
        for (auto it = v.entries.begin(); it != v.entries.end();) {
            if (std::abs(it->first.p.weight() - lam.weight()) > rem)
                it = v.entries.erase(it);
            else
                ++it;
        }
    }
    auto it = v.entries.find(StateKey{lam, level});
    return it == v.entries.end() ? S(0) : it->second;
}

template <class S>
struct PathRecord {
    using Arc = std::pair<long, long>;
    std::vector<std::pair<Arc, StateKey>> steps;  // arc taken, configuration after it
    S weight;                                     // product of arc weights, sign excluded
    int sign = 1;
};

template <class S>
struct PathEnumeration {
    std::vector<PathRecord<S>> records;
    S w_plus{0}, w_minus{0};  // signed split; matrix element = w_plus - w_minus

    S signed_sum() const { return w_plus - w_minus; }
};

// Brute-force enumeration of every duration-T path nu -> lam.
template <class S>
PathEnumeration<S> enumerate_paths(const GraphOperator<S>& A, int T, const Partition& nu,
                                   const Partition& lam, int level = 0, int brute_bound = 8) {
    if (T < 0) throw std::invalid_argument("negative duration");
    if (T > brute_bound)
        throw BruteForceBoundExceeded("duration " + std::to_string(T) +
                                      " above the brute-force bound " +
                                      std::to_string(brute_bound));
    PathEnumeration<S> out;
    PathRecord<S> cur;
    cur.weight = S(1);
    std::function<void(const StateKey&, int)> rec = [&](const StateKey& s, int t) {
        if (t == T) {
            if (s.level == level && s.p == lam) {
                out.records.push_back(cur);
                if (cur.sign > 0)
                    out.w_plus += cur.weight;
                else
                    out.w_minus += cur.weight;
            }
            return;
        }
        for (const auto& [arc, w] : A.arcs) {
            if (scalar_is_zero(w)) continue;
            auto hop = apply_Eik(arc.first, arc.second, s);
            if (!hop) continue;
            S saved = cur.weight;
            cur.weight = cur.weight * w;
            cur.sign *= hop->sign;
            cur.steps.emplace_back(arc, hop->state);
            rec(hop->state, t + 1);
            cur.steps.pop_back();
            cur.sign *= hop->sign;
            cur.weight = std::move(saved);
        }
    };
    rec(StateKey{nu, level}, 0);
    return out;
}

namespace detail {

template <class S>
S up_weight(const Potential& U, long to) {
    if constexpr (std::is_same_v<S, double>) {
        return U.rate_up(to);
    } else if constexpr (std::is_same_v<S, Rat>) {
        return U.rate_up_rat(to);
    } else {
        if (U.blocked(to - 1, to)) return ExpSum();
        if (U.kind == Potential::Kind::gauss) return ExpSum::exp_of(U.neg_exponent_up(to));
        if (U.kind == Potential::Kind::constant_rate) return ExpSum(U.rate_up_rat(to));
        throw std::domain_error("no exact exponential weight for a table potential");
    }
}

template <class S>
S down_weight(const Potential& U, long to) {
    if constexpr (std::is_same_v<S, double>) {
        return U.rate_down(to);
    } else if constexpr (std::is_same_v<S, Rat>) {
        return U.rate_down_rat(to);
    } else {
        if (U.blocked(to + 1, to)) return ExpSum();
        if (U.kind == Potential::Kind::gauss) return ExpSum::exp_of(U.neg_exponent_down(to));
        if (U.kind == Potential::Kind::constant_rate) return ExpSum(U.rate_down_rat(to));
        throw std::domain_error("no exact exponential weight for a table potential");
    }
}

}  // namespace detail

// Raising part: every site can pull the particle one step up, weight
// e^{U_{i-1} - U_i} on the arc (i-1) -> i.
template <class S>
GraphOperator<S> hop_up_operator(const Potential& U, long lo, long hi) {
    GraphOperator<S> A;
    A.lo = lo;
    A.hi = hi;
    for (long i = lo + 1; i <= hi; ++i) {
        S w = detail::up_weight<S>(U, i);
        if (!scalar_is_zero(w)) A.add_arc(i, i - 1, w);
    }
    return A;
}

// Lowering part: arc i -> (i-1) with weight e^{U_i - U_{i-1}}.
template <class S>
GraphOperator<S> hop_down_operator(const Potential& U, long lo, long hi) {
    GraphOperator<S> A;
    A.lo = lo;
    A.hi = hi;
    for (long i = lo + 1; i <= hi; ++i) {
        S w = detail::down_weight<S>(U, i - 1);
        if (!scalar_is_zero(w)) A.add_arc(i - 1, i, w);
    }
    return A;
}

// Max |coefficient residual| of (A_- A_+ - A_+ A_-  - 1) over basis states
// whose occupied/empty transition sits strictly inside [lo, hi]; exact rate
// cancellation makes this zero for rational-rate and gauss potentials.
double commutator_check(const Potential& U, long lo, long hi, int weight_cap = 6);

}  // namespace tw
