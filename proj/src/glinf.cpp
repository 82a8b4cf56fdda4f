#include "tauwalk/glinf.hpp"

#include <algorithm>

namespace tw {

bool site_occupied(const Partition& p, int level, long site) {
    int l = p.length();
    if (site < static_cast<long>(level) - l) return true;  // packed tail
    for (int i = 1; i <= l; ++i)
        if (static_cast<long>(p.part(i)) - i + level == site) return true;
    return false;
}

std::optional<HopResult> apply_Eik(long i, long k, const StateKey& s) {
    if (i == k) throw std::invalid_argument("source and target coincide");
    if (!site_occupied(s.p, s.level, k) || site_occupied(s.p, s.level, i))
        return std::nullopt;
    // explicit rows down to whichever site the move can reach
    long l = s.p.length();
    long floor_site = std::min({i, k, static_cast<long>(s.level) - l - 1});
    long rows = static_cast<long>(s.level) - floor_site;
    std::vector<long> sites(rows);
    for (long j = 1; j <= rows; ++j)
        sites[j - 1] = static_cast<long>(s.p.part(static_cast<int>(j))) - j + s.level;

    long a = std::min(i, k) + 1, b = std::max(i, k) - 1;
    long between = 0;
    for (long x : sites)
        if (x >= a && x <= b) ++between;

    for (auto& x : sites)
        if (x == k) {
            x = i;
            break;
        }
    std::sort(sites.begin(), sites.end(), std::greater<>());
    std::vector<int> parts;
    for (long j = 1; j <= rows; ++j) {
        long v = sites[j - 1] - s.level + j;
        if (v > 0) parts.push_back(static_cast<int>(v));
    }
    return HopResult{StateKey{Partition(std::move(parts)), s.level},
                     between % 2 ? -1 : +1};
}

std::optional<std::pair<MayaDiagram, int>> apply_Eik(long i, long k, const MayaDiagram& m) {
    StateKey s{partition_from_maya(m), m.level};
    auto hop = apply_Eik(i, k, s);
    if (!hop) return std::nullopt;
    int window = std::max(m.window, hop->state.p.length());
    return std::make_pair(maya_from_partition(hop->state.p, m.level, window), hop->sign);
}

namespace {

template <class S>
double commutator_residual(const Potential& U, long lo, long hi, int weight_cap) {
    auto up = hop_up_operator<S>(U, lo, hi);
    auto down = hop_down_operator<S>(U, lo, hi);
    double worst = 0;
    for (const auto& lam : partitions_up_to(weight_cap)) {
        // the telescoping needs the window to straddle the whole transition
        if (!site_occupied(lam, 0, lo) || site_occupied(lam, 0, hi)) continue;
        WeightedStateVector<S> v;
        v.entries.emplace(StateKey{lam, 0}, S(1));
        auto x = apply_operator(down, apply_operator(up, v));
        auto y = apply_operator(up, apply_operator(down, v));
        for (const auto& [key, c] : y.entries) x.add(key, -c);
        x.add(StateKey{lam, 0}, S(-1));
        for (const auto& [key, c] : x.entries)
            worst = std::max(worst, std::abs(scalar_to_double(c)));
    }
    return worst;
}

}  // namespace

double commutator_check(const Potential& U, long lo, long hi, int weight_cap) {
    switch (U.kind) {
        case Potential::Kind::constant_rate:
            return commutator_residual<Rat>(U, lo, hi, weight_cap);
        case Potential::Kind::gauss:
            return commutator_residual<ExpSum>(U, lo, hi, weight_cap);
        case Potential::Kind::table:
            return commutator_residual<double>(U, lo, hi, weight_cap);
    }
    return 0;
}

}  // namespace tw
