#include "tauwalk/vicious.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <utility>

#include "tauwalk/layering.hpp"
#include "tauwalk/schur.hpp"

namespace tw {

namespace {

// det(1/(s'_j - s_i)!) with the exponential row/column factors pulled out.
Rat wick_core_det(const std::vector<long>& s_from, const std::vector<long>& s_to) {
    int m = static_cast<int>(s_from.size());
    Matrix<Rat> M(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            long k = s_to[j] - s_from[i];
            M.at(i, j) = k < 0 ? Rat(0) : Rat(Int(1), factorial(k));
        }
    return bareiss_det(std::move(M));
}

std::vector<long> zero_window_sites(const Partition& lam, int m) {
    std::vector<long> s(m);
    for (int i = 1; i <= m; ++i) s[i - 1] = lam.part(i) - i;
    return s;
}

}  // namespace

double wick_transition(const Partition& to, const Partition& from, const Potential& U) {
    int m = std::max(from.length(), to.length());
    if (m == 0) return 1.0;
    auto s = zero_window_sites(from, m);
    auto sp = zero_window_sites(to, m);
    double log_pref = 0;
    for (int i = 0; i < m; ++i) log_pref += U.U(s[i]) - U.U(sp[i]);
    return std::exp(log_pref) * to_double(wick_core_det(s, sp));
}

Rat wick_transition_exact(const Partition& to, const Partition& from, const Potential& U) {
    if (!U.rational_rates())
        throw std::domain_error("exact transition weight needs rational rates");
    int m = std::max(from.length(), to.length());
    if (m == 0) return Rat(1);
    auto s = zero_window_sites(from, m);
    auto sp = zero_window_sites(to, m);
    // e^{U_s - U_{s'}} = r^{s' - s} per index pair for U_i = -i log r.
    long shift = 0;
    for (int i = 0; i < m; ++i) shift += sp[i] - s[i];
    return rat_pow(U.r, shift) * wick_core_det(s, sp);
}

Int binomial_determinant(const std::vector<long>& a, const std::vector<long>& b) {
    if (a.size() != b.size())
        throw LengthMismatch("binomial determinant needs equally many row and column indices");
    int n = static_cast<int>(a.size());
    Matrix<Int> M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            M.at(i, j) = (b[j] < 0 || b[j] > a[i]) ? Int(0) : binomial_int(a[i], b[j]);
    return bareiss_det(std::move(M));
}

namespace {

struct PathFamilyEnum {
    const std::vector<long>& a;
    std::vector<long> b;  // permuted targets
    std::set<std::pair<long, long>> used;
    Int families = 0;

    void run(std::size_t w) {
        if (w == a.size()) {
            ++families;
            return;
        }
        if (b[w] < 0 || b[w] > a[w]) return;
        step(w, 0, a[w]);
    }

    void step(std::size_t w, long x, long y) {
        if (x > b[w] || y < b[w]) return;
        if (used.count({x, y})) return;
        used.insert({x, y});
        if (x == b[w] && y == b[w]) {
            run(w + 1);
        } else {
            step(w, x + 1, y);
            step(w, x, y - 1);
        }
        used.erase({x, y});
    }
};

}  // namespace

Int nonintersecting_path_count(const std::vector<long>& a, const std::vector<long>& b) {
    if (a.size() != b.size())
        throw LengthMismatch("path family needs equally many starts and targets");
    int k = static_cast<int>(a.size());
    long amax = 0;
    for (long v : a) amax = std::max(amax, v);
    if (k > 4 || amax > 12)
        throw BruteForceBoundExceeded("path enumeration bounded at 4 walkers, height 12");
    if (k == 0) return Int(1);

    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    Int total(0);
    std::sort(idx.begin(), idx.end());
    do {
        int inv = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (idx[i] > idx[j]) ++inv;
        PathFamilyEnum e{a, {}, {}, Int(0)};
        e.b.resize(k);
        for (int i = 0; i < k; ++i) e.b[i] = b[idx[i]];
        e.run(0);
        total += (inv % 2 ? -e.families : e.families);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return total;
}

namespace {

// Neighbor targets of a site, honoring the geometry.
template <typename F>
void for_each_hop(long from, long top, Geometry geom, bool allow_stay, F&& f) {
    if (from + 1 <= top) f(from + 1);
    if (from - 1 >= 0) f(from - 1);
    if (geom == Geometry::ring && top >= 1) {
        if (from == top) f(0L);
        if (from == 0) f(top);
    }
    if (allow_stay) f(from);
}

template <typename S, typename W>
StepKernel<S> build_kernel(long top, Geometry geom, bool allow_stay, W&& weight) {
    if (top < 0) throw std::invalid_argument("kernel window must contain site 0");
    StepKernel<S> K;
    K.top = top;
    K.m = Matrix<S>(static_cast<int>(top + 1), static_cast<int>(top + 1));
    for (long f = 0; f <= top; ++f)
        for_each_hop(f, top, geom, allow_stay,
                     [&](long t) { K.m.at(static_cast<int>(t), static_cast<int>(f)) = weight(t, f); });
    return K;
}

}  // namespace

KernelMatrix vicious_step_kernel(const Potential& from_u, const Potential& to_u, Geometry geom,
                                 long top, bool allow_stay) {
    return build_kernel<double>(top, geom, allow_stay, [&](long t, long f) {
        return std::exp(-to_u.U(t) + from_u.U(f));
    });
}

StepKernel<Rat> vicious_step_kernel_exact(const Potential& from_u, const Potential& to_u,
                                          Geometry geom, long top, bool allow_stay) {
    if (!from_u.rational_rates() || !to_u.rational_rates())
        throw std::domain_error("exact kernel needs rational rates");
    return build_kernel<Rat>(top, geom, allow_stay, [&](long t, long f) {
        return rat_pow(to_u.r, t) * rat_pow(from_u.r, -f);
    });
}

const Potential& ChainSpec::level_potential(int j) const {
    if (levels.empty()) throw std::invalid_argument("chain has no potentials");
    if (levels.size() == 1) return levels.front();
    if (j < 0 || j >= static_cast<int>(levels.size()))
        throw std::invalid_argument("chain potential index out of range");
    return levels[static_cast<std::size_t>(j)];
}

long ChainSpec::top_site(long max_coord) const {
    if (geometry == Geometry::ring) {
        if (ring_n < 1) throw std::invalid_argument("ring needs at least two sites");
        if (max_coord > ring_n) throw WindowTooSmall("walker coordinate beyond the ring");
        return ring_n;
    }
    long needed = max_coord + T;
    if (window < 0) return needed;
    if (window < needed)
        throw WindowTooSmall("window " + std::to_string(window) + " cannot hold excursions to " +
                             std::to_string(needed));
    return window;
}

namespace {

void validate_coords(const std::vector<long>& h, int n, long top, const char* which) {
    if (static_cast<int>(h.size()) != n)
        throw LengthMismatch(std::string(which) + " configuration size differs from walker count");
    std::set<long> seen;
    for (long v : h) {
        if (v < 0 || v > top) throw WindowTooSmall(std::string(which) + " coordinate outside sites");
        if (!seen.insert(v).second)
            throw std::invalid_argument(std::string(which) + " coordinates must be distinct");
    }
}

long max_coord_of(const std::vector<long>& a, const std::vector<long>& b) {
    long m = 0;
    for (long v : a) m = std::max(m, v);
    for (long v : b) m = std::max(m, v);
    return m;
}

template <typename S>
S det_weight(const std::vector<long>& end_h, const std::vector<long>& start_h,
             const ChainSpec& spec) {
    long top = spec.top_site(max_coord_of(end_h, start_h));
    int n = spec.walkers;
    validate_coords(start_h, n, top, "start");
    validate_coords(end_h, n, top, "end");

    std::vector<long> from = start_h, to = end_h;
    std::sort(from.rbegin(), from.rend());
    std::sort(to.rbegin(), to.rend());

    int sites = static_cast<int>(top + 1);
    // Columns of the composed kernel, one per start coordinate.
    std::vector<std::vector<S>> col(n, std::vector<S>(sites, S(0)));
    for (int j = 0; j < n; ++j) col[j][static_cast<std::size_t>(from[j])] = S(1);
    for (int step = 1; step <= spec.T; ++step) {
        StepKernel<S> K;
        if constexpr (std::is_same_v<S, Rat>)
            K = vicious_step_kernel_exact(spec.level_potential(step - 1), spec.level_potential(step),
                                          spec.geometry, top, spec.allow_stay);
        else
            K = vicious_step_kernel(spec.level_potential(step - 1), spec.level_potential(step),
                                    spec.geometry, top, spec.allow_stay);
        for (int j = 0; j < n; ++j) {
            std::vector<S> next(sites, S(0));
            for (int f = 0; f < sites; ++f) {
                const S& amp = col[j][static_cast<std::size_t>(f)];
                if (scalar_is_zero(amp)) continue;
                for_each_hop(f, top, spec.geometry, spec.allow_stay, [&](long t) {
                    next[static_cast<std::size_t>(t)] += K.m.at(static_cast<int>(t), f) * amp;
                });
            }
            col[j] = std::move(next);
        }
    }
    Matrix<S> M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M.at(i, j) = col[j][static_cast<std::size_t>(to[i])];
    if constexpr (std::is_same_v<S, Rat>)
        return bareiss_det(std::move(M));
    else
        return lu_det(std::move(M));
}

}  // namespace

double chain_weight(const std::vector<long>& end_h, const std::vector<long>& start_h,
                    const ChainSpec& spec) {
    return det_weight<double>(end_h, start_h, spec);
}

Rat chain_weight_exact(const std::vector<long>& end_h, const std::vector<long>& start_h,
                       const ChainSpec& spec) {
    for (int j = 0; j <= spec.T; ++j)
        if (!spec.level_potential(j).rational_rates())
            throw std::domain_error("exact chain weight needs rational rates");
    return det_weight<Rat>(end_h, start_h, spec);
}

double chain_weight(const Partition& end, const Partition& start, const ChainSpec& spec) {
    int n = spec.walkers;
    if (end.length() > n || start.length() > n)
        throw LengthMismatch("partition endpoints need length at most the walker count");
    std::vector<long> to(n), from(n);
    for (int i = 1; i <= n; ++i) {
        to[i - 1] = end.part(i) - i + n;
        from[i - 1] = start.part(i) - i + n;
    }
    return chain_weight(to, from, spec);
}

namespace {

int sorted_desc_sign(std::vector<long>& v) {
    // Bubble sort to descending order, counting swaps; v has distinct entries.
    int n = static_cast<int>(v.size());
    int sign = 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j + 1 < n - i; ++j)
            if (v[j] < v[j + 1]) {
                std::swap(v[j], v[j + 1]);
                sign = -sign;
            }
    return sign;
}

Int subsets_count(long sites, int n) {
    if (n > sites) return Int(0);
    return binomial_int(sites, n);
}

using SignedMass = std::pair<double, double>;  // (plus, minus)

struct SubsetPropagation {
    long top;
    const ChainSpec& spec;
    std::map<std::vector<long>, SignedMass> amp;

    void step(int step_index) {
        KernelMatrix K = vicious_step_kernel(spec.level_potential(step_index - 1),
                                             spec.level_potential(step_index), spec.geometry, top,
                                             spec.allow_stay);
        std::map<std::vector<long>, SignedMass> next;
        int n = spec.walkers;
        for (const auto& [sites, mass] : amp) {
            // Fan out over per-walker hops; reject co-occupied targets.
            std::vector<long> target(static_cast<std::size_t>(n));
            std::vector<std::vector<long>> options(static_cast<std::size_t>(n));
            for (int w = 0; w < n; ++w)
                for_each_hop(sites[static_cast<std::size_t>(w)], top, spec.geometry,
                             spec.allow_stay,
                             [&](long t) { options[static_cast<std::size_t>(w)].push_back(t); });
            std::function<void(int, double)> rec = [&](int w, double weight) {
                if (w == n) {
                    std::vector<long> key = target;
                    int sign = sorted_desc_sign(key);
                    auto& cell = next[key];
                    double p = mass.first * weight, m = mass.second * weight;
                    if (sign > 0) {
                        cell.first += p;
                        cell.second += m;
                    } else {
                        cell.first += m;
                        cell.second += p;
                    }
                    return;
                }
                long f = sites[static_cast<std::size_t>(w)];
                for (long t : options[static_cast<std::size_t>(w)]) {
                    bool clash = false;
                    for (int u = 0; u < w && !clash; ++u)
                        clash = target[static_cast<std::size_t>(u)] == t;
                    if (clash) continue;
                    target[static_cast<std::size_t>(w)] = t;
                    rec(w + 1, weight * K.at(t, f));
                }
            };
            rec(0, 1.0);
        }
        amp = std::move(next);
    }

    void filter(const TimeConstraint& c) {
        for (auto it = amp.begin(); it != amp.end();) {
            bool keep = true;
            for (long s : c.sites) {
                bool has = std::find(it->first.begin(), it->first.end(), s) != it->first.end();
                if (c.contain ? !has : has) {
                    keep = false;
                    break;
                }
            }
            it = keep ? std::next(it) : amp.erase(it);
        }
    }
};

SignedChainWeight propagate_signed(const std::vector<long>& end_h, const std::vector<long>& start_h,
                                   const ChainSpec& spec,
                                   const std::vector<TimeConstraint>& constraints,
                                   std::uint64_t max_states) {
    long top = spec.top_site(max_coord_of(end_h, start_h));
    int n = spec.walkers;
    validate_coords(start_h, n, top, "start");
    validate_coords(end_h, n, top, "end");
    if (subsets_count(top + 1, n) > Int(max_states))
        throw BruteForceBoundExceeded("subset propagation needs more than " +
                                      std::to_string(max_states) + " states");

    SubsetPropagation prop{top, spec, {}};
    std::vector<long> from = start_h, to = end_h;
    std::sort(from.rbegin(), from.rend());
    std::sort(to.rbegin(), to.rend());
    prop.amp[from] = {1.0, 0.0};
    for (const auto& c : constraints)
        if (c.time == 0) prop.filter(c);
    for (int j = 1; j <= spec.T; ++j) {
        prop.step(j);
        for (const auto& c : constraints)
            if (c.time == j) prop.filter(c);
    }
    SignedChainWeight out;
    auto it = prop.amp.find(to);
    if (it != prop.amp.end()) {
        out.w_plus = it->second.first;
        out.w_minus = it->second.second;
        out.value = out.w_plus - out.w_minus;
    }
    return out;
}

}  // namespace

SignedChainWeight chain_weight_signed(const std::vector<long>& end_h,
                                      const std::vector<long>& start_h, const ChainSpec& spec,
                                      std::uint64_t max_states) {
    return propagate_signed(end_h, start_h, spec, {}, max_states);
}

double constrained_chain_weight(const std::vector<long>& end_h, const std::vector<long>& start_h,
                                const ChainSpec& spec,
                                const std::vector<TimeConstraint>& constraints,
                                std::uint64_t max_states) {
    return propagate_signed(end_h, start_h, spec, constraints, max_states).value;
}

namespace {

std::vector<long> window_coords(const Partition& lam, int k) {
    std::vector<long> h(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) h[static_cast<std::size_t>(i - 1)] = lam.part(i) - i + k;
    return h;
}

GraphOperator<Rat> raising_ladder(long hi) {
    GraphOperator<Rat> A;
    A.lo = 0;
    A.hi = hi;
    for (long i = 1; i <= hi; ++i) A.add_arc(i, i - 1, Rat(i));
    return A;
}

}  // namespace

Rat gv_pair_det(const Partition& outer, const Partition& inner, int k) {
    if (outer.length() > k || inner.length() > k)
        throw std::invalid_argument("window smaller than the partition length");
    return Rat(binomial_determinant(window_coords(outer, k), window_coords(inner, k)));
}

Rat gv_pair_operator(const Partition& outer, const Partition& inner, int k) {
    if (outer.length() > k || inner.length() > k)
        throw std::invalid_argument("window smaller than the partition length");
    long p = outer.weight() - inner.weight();
    if (p < 0) return Rat(0);
    if (p == 0) return outer == inner ? Rat(1) : Rat(0);
    auto A = raising_ladder(k + outer.weight());
    Rat me = matrix_element(A, static_cast<int>(p), inner, outer, k);
    return me / Rat(factorial(p));
}

Rat gv_single_particle(long i, long j) {
    if (i < 0 || j < 0) throw std::invalid_argument("sites must be non-negative");
    if (i < j) return Rat(0);
    Partition top(std::vector<int>{static_cast<int>(i)});
    Partition bottom(j > 0 ? std::vector<int>{static_cast<int>(j)} : std::vector<int>{});
    long p = i - j;
    if (p == 0) return Rat(1);
    auto A = raising_ladder(i + 1);
    Rat me = matrix_element(A, static_cast<int>(p), bottom, top, 1);
    return me / Rat(factorial(p));
}

GeneratingCheck gv_generating_check(int k, const std::vector<Rat>& xs, const std::vector<Rat>& ys,
                                    long cap) {
    if (k < 1) throw std::invalid_argument("window must be positive");
    TimeVector tx = powersums(xs, static_cast<int>(cap));
    TimeVector ty = powersums(ys, static_cast<int>(cap));
    std::vector<Partition> states;
    for (const auto& p : partitions_up_to(cap))
        if (p.length() <= k) states.push_back(p);

    GeneratingCheck out{Rat(0), Rat(0), false};
    for (const auto& lam : states) {
        Rat sy = schur(lam, ty);
        if (sy == 0) continue;
        for (const auto& lamp : states) {
            Rat sx = schur(lamp, tx);
            if (sx == 0) continue;
            out.direct += sx * sy * gv_pair_det(lamp, lam, k);
            out.engine += sx * sy * gv_pair_operator(lamp, lam, k);
        }
    }
    out.equal = out.direct == out.engine;
    return out;
}

Rat content_pochhammer(const Partition& lam, long n) {
    Rat prod(1);
    for (int i = 1; i <= lam.length(); ++i)
        for (long j = 1; j <= lam.part(i); ++j) prod *= Rat(n + j - i);
    return prod;
}

BinomialSkewCheck binomial_skew_check(const Partition& outer, const Partition& inner, int window,
                                      long n) {
    BinomialSkewCheck out;
    out.det_route = gv_pair_det(outer, inner, window);
    Rat denom = content_pochhammer(inner, n);
    if (denom == 0) throw std::domain_error("content product of the inner shape vanishes");
    Rat skew = skew_schur(outer, inner, t_infinity_vector(std::max(1, int(outer.weight()))));
    out.pochhammer_route = content_pochhammer(outer, n) / denom * skew;
    out.equal = out.det_route == out.pochhammer_route;
    return out;
}

GaussKernelCheck gauss_kernel_check(const std::vector<long>& hp, const Partition& lam, const Rat& c) {
    int T = static_cast<int>(hp.size());
    if (T == 0) throw std::invalid_argument("need at least one coordinate");
    for (int i = 0; i + 1 < T; ++i)
        if (hp[static_cast<std::size_t>(i)] <= hp[static_cast<std::size_t>(i + 1)])
            throw std::invalid_argument("coordinates must be strictly decreasing");
    if (lam.length() > T) throw std::invalid_argument("partition longer than the coordinate set");

    double cd = to_double(c);
    std::vector<double> xs(static_cast<std::size_t>(T));
    for (int j = 0; j < T; ++j)
        xs[static_cast<std::size_t>(j)] = std::exp(cd * static_cast<double>(hp[static_cast<std::size_t>(j)]));

    GaussKernelCheck out;
    out.layering_route = growth_weight(lam, xs, Potential::gauss(c));

    // Prefactored determinant route at window-T coordinates h_i = lam_i - i + T.
    double expo = 0;
    for (long v : hp) expo += static_cast<double>(v) * static_cast<double>(v);
    for (long q = 0; q < T; ++q) expo += static_cast<double>(q) * static_cast<double>(q);
    Matrix<double> M(T, T);
    for (int i = 1; i <= T; ++i) {
        long h = lam.part(i) - i + T;
        for (int j = 0; j < T; ++j) {
            double d = static_cast<double>(h - hp[static_cast<std::size_t>(j)]);
            M.at(i - 1, j) = std::exp(-cd / 2 * d * d);
        }
    }
    double denom = 1;
    for (int i = 0; i < T; ++i)
        for (int j = i + 1; j < T; ++j)
            denom *= xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(j)];
    out.det_route = std::exp(cd / 2 * expo) * lu_det(std::move(M)) / denom;

    double scale = std::max({1e-300, std::fabs(out.layering_route), std::fabs(out.det_route)});
    out.rel_diff = std::fabs(out.layering_route - out.det_route) / scale;
    return out;
}

}  // namespace tw
