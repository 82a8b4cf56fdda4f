#include "tauwalk/walk.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <thread>

#include "tauwalk/pvquad.hpp"
#include "tauwalk/schur.hpp"

namespace tw {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

long integral_charge(double qsq) {
    long q = std::llround(qsq);
    return (q >= 0 && std::abs(qsq - static_cast<double>(q)) < 1e-12) ? q : -1;
}

// ((w - T)/2) log 2 - log((T-w)/2)!  -- the combinatorial part shared by the
// weight and the mode-search objective.
double comb_log(long w, long T) {
    if (w > T || (T - w) % 2) return kNegInf;
    long m = (T - w) / 2;
    return 0.5 * static_cast<double>(w - T) * std::numbers::ln2 - std::lgamma(m + 1.0);
}

}  // namespace

Int path_count(const Partition& lam, int T) {
    long w = lam.weight();
    if (T < w || (T - w) % 2) return 0;
    long m = (T - w) / 2;
    Rat val = Rat(factorial(T)) / (two_pow(m) * Rat(factorial(m)));
    val *= schur_tinfty(lam);
    return numerator(val) / denominator(val);
}

bool weight_is_exact(const ProcessSpec& spec) {
    return spec.potential.kind == Potential::Kind::constant_rate &&
           integral_charge(spec.qsq) >= 0;
}

Rat decay_weight_exact(const Partition& lam, const ProcessSpec& spec) {
    if (!weight_is_exact(spec))
        throw std::domain_error("exact weights need a constant rate and integer charge");
    Int n = path_count(lam, spec.T);
    if (n == 0) return 0;
    Rat w = Rat(n) * boltzmann_exact(lam, spec.level, spec.potential);
    long q = integral_charge(spec.qsq);
    if (q > 0) w *= rat_pow(schur_tinfty(lam), q);
    return w;
}

double log_decay_weight(const Partition& lam, const ProcessSpec& spec) {
    long w = lam.weight();
    double comb = comb_log(w, spec.T);
    if (comb == kNegInf) return kNegInf;
    return std::lgamma(spec.T + 1.0) + comb + (1.0 + spec.qsq) * log_schur_tinfty(lam) -
           potential_energy(lam, spec.level, spec.potential);
}

double decay_weight(const Partition& lam, const ProcessSpec& spec) {
    if (weight_is_exact(spec)) return to_double(decay_weight_exact(lam, spec));
    double lw = log_decay_weight(lam, spec);
    return lw == kNegInf ? 0.0 : std::exp(lw);
}

namespace {

template <class Fn>
void for_each_weight_class(int T, Fn&& fn) {
    // admissible endpoint weights share the parity of T
    for (long w = T; w >= 0; w -= 2) fn(w);
}

}  // namespace

Rat normalization_Z0_exact(const ProcessSpec& spec, int bound) {
    if (!weight_is_exact(spec))
        throw std::domain_error("exact normalization needs a constant rate and integer charge");
    if (spec.T > bound)
        throw BoundExceeded("exact sum supported for T <= " + std::to_string(bound) +
                            "; use sampling or mode search beyond it");
    long q = integral_charge(spec.qsq);
    std::vector<long> classes;
    for_each_weight_class(spec.T, [&](long w) { classes.push_back(w); });
    std::vector<Rat> cls_sum(classes.size(), Rat(0));

    auto run_class = [&](size_t idx) {
        long w = classes[idx];
        Int dsum = 0;
        for (const auto& lam : partitions_of(static_cast<int>(w))) {
            Int d = standard_tableaux_count(lam);
            Int dq = d;
            for (long j = 0; j < q; ++j) dq *= d;
            dsum += dq;
        }
        long m = (spec.T - w) / 2;
        Rat cls = Rat(factorial(spec.T)) / (two_pow(m) * Rat(factorial(m)));
        cls /= rat_pow(Rat(factorial(w)), 1 + q);
        cls *= rat_pow(spec.potential.r, w);
        cls_sum[idx] = cls * Rat(dsum);
    };

    unsigned workers = std::min<size_t>(thread_count(), classes.size());
    if (workers <= 1 || spec.T < 16) {
        for (size_t i = 0; i < classes.size(); ++i) run_class(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < classes.size(); i = next.fetch_add(1))
                    run_class(i);
            });
        for (auto& th : pool) th.join();
    }
    Rat total = 0;
    for (const auto& c : cls_sum) total += c;
    return total;
}

double normalization_Z0(const ProcessSpec& spec, int bound) {
    if (weight_is_exact(spec)) return to_double(normalization_Z0_exact(spec, bound));
    if (spec.T > bound)
        throw BoundExceeded("exact sum supported for T <= " + std::to_string(bound) +
                            "; use sampling or mode search beyond it");
    std::vector<long> classes;
    for_each_weight_class(spec.T, [&](long w) { classes.push_back(w); });
    std::vector<double> cls_sum(classes.size(), 0.0);
    auto run_class = [&](size_t idx) {
        KahanSum s;
        for (const auto& lam : partitions_of(static_cast<int>(classes[idx]))) {
            double lw = log_decay_weight(lam, spec);
            if (lw != kNegInf) s.add(std::exp(lw));
        }
        cls_sum[idx] = s.value();
    };
    unsigned workers = std::min<size_t>(thread_count(), classes.size());
    if (workers <= 1 || spec.T < 16) {
        for (size_t i = 0; i < classes.size(); ++i) run_class(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < classes.size(); i = next.fetch_add(1))
                    run_class(i);
            });
        for (auto& th : pool) th.join();
    }
    KahanSum total;
    for (double c : cls_sum) total.add(c);
    return total.value();
}

double transition_probability(const Partition& lam, const ProcessSpec& spec, int bound) {
    if (weight_is_exact(spec)) {
        Rat z = normalization_Z0_exact(spec, bound);
        return to_double(decay_weight_exact(lam, spec) / z);
    }
    return decay_weight(lam, spec) / normalization_Z0(spec, bound);
}

EndpointTable endpoint_distribution(const ProcessSpec& spec, int bound) {
    if (spec.T > bound)
        throw BoundExceeded("exact sum supported for T <= " + std::to_string(bound) +
                            "; use sampling or mode search beyond it");
    EndpointTable table;
    table.exact = weight_is_exact(spec);
    std::vector<Partition> support;
    for_each_weight_class(spec.T, [&](long w) {
        for (auto& lam : partitions_of(static_cast<int>(w))) support.push_back(std::move(lam));
    });
    std::sort(support.begin(), support.end());
    if (table.exact) {
        table.Z_exact = normalization_Z0_exact(spec, bound);
        table.Z = to_double(table.Z_exact);
        for (const auto& lam : support) {
            Rat w = decay_weight_exact(lam, spec);
            table.entries.push_back({lam, w, log_decay_weight(lam, spec),
                                     to_double(w / table.Z_exact)});
        }
    } else {
        table.Z = normalization_Z0(spec, bound);
        for (const auto& lam : support) {
            double lw = log_decay_weight(lam, spec);
            double w = lw == kNegInf ? 0.0 : std::exp(lw);
            table.entries.push_back({lam, Rat(0), lw, w / table.Z});
        }
    }
    return table;
}

double equilibrium_partition_sum(const Potential& U, double qsq, double z, int cap,
                                 double* tail_estimate) {
    KahanSum total;
    double last_class = 0;
    for (int n = 0; n <= cap; ++n) {
        KahanSum cls;
        for (const auto& lam : partitions_of(n)) {
            double lw = qsq * log_schur_tinfty(lam) - potential_energy(lam, 0, U);
            cls.add(std::exp(lw));
        }
        double term = cls.value() * std::pow(z, n);
        total.add(term);
        last_class = term;
    }
    if (tail_estimate) {
        double t = std::abs(total.value());
        *tail_estimate = t > 0 ? std::abs(last_class) / t : std::abs(last_class);
    }
    return total.value();
}

CoulombGasRoutes coulomb_gas_q1(int n, const Potential& U, int cap) {
    if (n < 1) throw std::invalid_argument("the gas needs at least one charge");
    CoulombGasRoutes out;

    KahanSum part;
    for (int w = 0; w <= cap; ++w)
        for (const auto& lam : partitions_of(w)) {
            if (lam.length() > n) continue;
            part.add(std::exp(log_schur_tinfty(lam) - potential_energy(lam, n, U)));
        }
    out.partition_route = part.value();

    // independent route: strictly decreasing h-tuples, h_i = lambda_i - i + n,
    // truncation matched through |lambda| = sum h - n(n-1)/2 <= cap
    long hsum_cap = cap + static_cast<long>(n) * (n - 1) / 2;
    std::vector<long> h(n);
    KahanSum hsum;
    std::function<void(int, long, long)> rec = [&](int i, long hi_bound, long remaining) {
        if (i == n) {
            double lw = 0;
            for (int a = 0; a < n; ++a) {
                lw += -U.U(h[a]) + U.U(n - 1 - a);
                lw -= std::lgamma(static_cast<double>(h[a]) + 1.0);
            }
            double vdm = 1;
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) vdm *= static_cast<double>(h[a] - h[b]);
            hsum.add(vdm * std::exp(lw));
            return;
        }
        long slots_left = n - i - 1;
        long min_here = slots_left;  // strictly decreasing, non-negative tail
        long tail_min = slots_left * (slots_left - 1) / 2;
        for (long v = std::min(hi_bound, remaining - tail_min); v >= min_here; --v) {
            h[i] = v;
            rec(i + 1, v - 1, remaining - v);
        }
    };
    rec(0, hsum_cap, hsum_cap);
    out.h_route = hsum.value();
    return out;
}

EnsembleCheck orthogonal_ensemble_check(int T, const Potential& U) {
    if (T > 8) throw BoundExceeded("ensemble rewrite enumerates h-tuples; T <= 8 only");
    EnsembleCheck out;
    out.exact = U.kind == Potential::Kind::constant_rate;

    ProcessSpec spec;
    spec.potential = U;
    spec.T = T;

    // staircase sum (T^2+T)/2 bounds the tuple weight; parity gives integer m
    long full = (static_cast<long>(T) * T + T) / 2;
    std::vector<long> h(T);
    Rat rhs_exact = 0;
    KahanSum rhs_f;
    std::function<void(int, long, long)> rec = [&](int i, long hi_bound, long remaining) {
        if (i == T) {
            long hsum = full - remaining;
            long m2 = full - hsum;
            if (m2 < 0 || m2 % 2) return;
            long m = m2 / 2;
            if (out.exact) {
                Rat term = Rat(factorial(T)) / (two_pow(m) * Rat(factorial(m)));
                for (int a = 0; a < T; ++a) term /= Rat(factorial(h[a]));
                for (int a = 0; a < T; ++a)
                    for (int b = a + 1; b < T; ++b) term *= Rat(h[a] - h[b]);
                // e^{-U_lambda} at level 0: sites h_i - T vs vacuum -i
                term *= rat_pow(U.r, hsum - static_cast<long>(T) * (T - 1) / 2);
                rhs_exact += term;
            } else {
                double lw = std::lgamma(T + 1.0) - m * std::numbers::ln2 -
                            std::lgamma(m + 1.0);
                for (int a = 0; a < T; ++a) {
                    lw -= std::lgamma(static_cast<double>(h[a]) + 1.0);
                    lw += -U.U(h[a] - T) + U.U(-(a + 1));
                }
                double vdm = 1;
                for (int a = 0; a < T; ++a)
                    for (int b = a + 1; b < T; ++b) vdm *= static_cast<double>(h[a] - h[b]);
                rhs_f.add(vdm * std::exp(lw));
            }
            return;
        }
        long slots_left = T - i - 1;
        long tail_min = slots_left * (slots_left - 1) / 2;
        long cap_here = std::min<long>(hi_bound, 2L * T - 1);
        for (long v = std::min(cap_here, remaining - tail_min); v >= slots_left; --v) {
            h[i] = v;
            rec(i + 1, v - 1, remaining - v);
        }
    };
    rec(0, full, full);

    if (out.exact) {
        out.lhs_exact = normalization_Z0_exact(spec);
        out.rhs_exact = rhs_exact;
        out.lhs = to_double(out.lhs_exact);
        out.rhs = to_double(out.rhs_exact);
        out.diff = to_double(out.lhs_exact - out.rhs_exact);
        out.diff = std::abs(out.diff);
    } else {
        out.lhs = normalization_Z0(spec);
        out.rhs = rhs_f.value();
        out.diff = std::abs(out.lhs - out.rhs);
    }
    return out;
}

double LimitShapePrediction::sigma(double h) const {
    if (h <= 0) return 1;
    if (h >= 2 * R) return 0;
    return 0.5 - std::asin(h / R - 1) / std::numbers::pi;
}

LimitShapePrediction predict_limit_shape(double r, long T, double qsq) {
    if (!(r > 0) || T < 1) throw std::invalid_argument("need r > 0 and T >= 1");
    double base = 2.0 * std::sqrt(static_cast<double>(T) / (1.0 + 1.0 / (r * r)));
    LimitShapePrediction p;
    p.R = qsq > 0 ? std::pow(base, 1.0 / (1.0 + qsq)) : base;
    p.length = p.R;
    p.area = p.R * p.R / 4 + p.R / 2;
    p.diag_k = p.R / std::numbers::pi;
    p.backward_m = (static_cast<double>(T) - p.area) / 2;
    return p;
}

double verify_equilibrium_density(double r, long T, int grid) {
    (void)predict_limit_shape(r, T);  // validates the arguments / scale exists
    double worst = 0;
    for (int j = 1; j <= grid; ++j) {
        double u = 2.0 * j / (grid + 1);  // u = h / R on (0, 2)
        double residual = std::abs(pv_arcsine_integral(u) - std::log(2 * u));
        worst = std::max(worst, residual);
    }
    return worst;
}

// ---------------------------------------------------------------------------
// mode search

namespace {

struct Climber {
    const ProcessSpec& spec;
    IncrementalLogSchur ils;
    long w;          // |lambda|
    double energy;   // U_lambda
    int window;

    Climber(const ProcessSpec& s, const Partition& start, int win)
        : spec(s), ils(start, win), w(start.weight()),
          energy(potential_energy(start, s.level, s.potential)), window(win) {}

    long site(int row) const { return ils.coord(row) - window + spec.level; }

    bool legal(int row, int dir) const {
        if (row < 1 || row > window) return false;
        long h = ils.coord(row);
        if (dir > 0) {
            if (w + 1 > spec.T) return false;  // weight cap; parity restored by the pair
            return row == 1 || ils.coord(row - 1) > h + 1;
        }
        if (h <= window - row) return false;  // row already empty
        return row == window || ils.coord(row + 1) < h - 1;
    }

    // objective = comb_log(|lambda|) + (1+qsq) log s - U_lambda  (additive
    // constant lgamma(T+1) omitted during the climb)
    double objective() const {
        return comb_log(w, spec.T) + (1.0 + spec.qsq) * ils.log_value() - energy;
    }

    double denergy(int row, int dir) const {
        long s = site(row);
        return spec.potential.U(s + dir) - spec.potential.U(s);
    }
};

void apply_move(Climber& c, int row, int dir) {
    c.energy += c.denergy(row, dir);
    c.ils.move(row, dir);
    c.w += dir;
}

// one best-improvement pass over all parity-preserving pairs; true if moved
bool climb_step(Climber& c) {
    std::vector<std::pair<int, int>> first;
    for (int row = 1; row <= c.window; ++row) {
        if (c.legal(row, +1)) first.push_back({row, +1});
        if (c.legal(row, -1)) first.push_back({row, -1});
    }
    double best = 1e-9;
    int b_r1 = 0, b_d1 = 0, b_r2 = 0, b_d2 = 0;
    double base_obj = c.objective();
    for (auto [r1, d1] : first) {
        apply_move(c, r1, d1);
        for (int row = 1; row <= c.window; ++row) {
            for (int d2 : {+1, -1}) {
                if (!c.legal(row, d2)) continue;
                long w2 = c.w + d2;
                if (w2 > c.spec.T || (c.spec.T - w2) % 2) continue;
                double obj2 = comb_log(w2, c.spec.T) +
                              (1.0 + c.spec.qsq) *
                                  (c.ils.log_value() + c.ils.peek(row, d2)) -
                              (c.energy + c.denergy(row, d2));
                double gain = obj2 - base_obj;
                if (gain > best) {
                    best = gain;
                    b_r1 = r1;
                    b_d1 = d1;
                    b_r2 = row;
                    b_d2 = d2;
                }
            }
        }
        apply_move(c, r1, -d1);
    }
    if (b_d1 == 0) return false;
    apply_move(c, b_r1, b_d1);
    apply_move(c, b_r2, b_d2);
    return true;
}

Partition climb(const ProcessSpec& spec, Partition start, int window) {
    Climber c(spec, start, window);
    while (climb_step(c)) {
    }
    return c.ils.to_partition();
}

// staircase profile of the arcsine shape: row i sits where the predicted
// particle-count tail passes i - 1/2
Partition arcsine_profile(double R, int T, int window) {
    auto tail = [&](double u) {
        // integral of sigma over [u, 2] in scaled units, times R
        double a = (u - 1) * std::asin(u - 1) + std::sqrt(std::max(0.0, 2 * u - u * u));
        double ipart = std::numbers::pi / 2 - a;  // int_u^2 arcsin(v-1) dv
        return R * ((2 - u) / 2 - ipart / std::numbers::pi);
    };
    std::vector<int> rows;
    long budget = T;
    for (int i = 1; i <= window; ++i) {
        double target = i - 0.5;
        if (tail(0) <= target) break;
        double lo = 0, hi = 2;
        for (int it = 0; it < 60; ++it) {
            double mid = (lo + hi) / 2;
            (tail(mid) > target ? lo : hi) = mid;
        }
        // u in (0,2) is the scaled coordinate; the site of row i is R*(u-1),
        // so lambda_i = R*(u-1) + i.
        long lam = std::lround(R * ((lo + hi) / 2 - 1.0)) + i;
        lam = std::min<long>(lam, budget);
        if (lam <= 0) break;
        if (!rows.empty()) lam = std::min<long>(lam, rows.back());
        rows.push_back(static_cast<int>(lam));
        budget -= lam;
        if (budget <= 0) break;
    }
    return Partition(std::move(rows));
}

// fix |lambda| parity against T by one corner box
Partition fix_parity(Partition p, int T) {
    if ((T - p.weight()) % 2 == 0) return p;
    auto mv = box_moves(p);
    if (p.weight() + 1 <= T && !mv.addable.empty()) return mv.addable.front();
    if (!mv.removable.empty()) return mv.removable.front();
    return p;
}

}  // namespace

ModeResult mode_search(const ProcessSpec& spec, int restarts) {
    if (spec.T < 2) throw std::invalid_argument("mode search needs T >= 2");
    int window = spec.T <= 24
                     ? spec.T
                     : std::min<long>(spec.T, std::lround(2.5 * std::sqrt(spec.T)) + 16);

    std::vector<Partition> starts;
    starts.push_back(fix_parity(Partition{}, spec.T));  // trivial start
    if (spec.potential.kind == Potential::Kind::constant_rate) {
        auto pred = predict_limit_shape(to_double(spec.potential.r), spec.T, spec.qsq);
        starts.push_back(fix_parity(arcsine_profile(pred.R, spec.T, window), spec.T));
        // an inflated profile approaches the mode from above; ridges in the
        // pair-move landscape are easier to descend than to cross
        starts.push_back(fix_parity(arcsine_profile(1.5 * pred.R, spec.T, window), spec.T));
    }
    for (int k = 0; k < restarts; ++k) {
        // perturb the first start by random admissible pairs
        Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(k)));
        Climber c(spec, starts[starts.size() > 1 ? 1 : 0], window);
        int kicks = 2 + static_cast<int>(rng.below(4 + static_cast<std::uint64_t>(
                                                           std::sqrt(spec.T))));
        for (int kick = 0; kick < kicks; ++kick) {
            std::vector<std::pair<int, int>> legal;
            for (int row = 1; row <= window; ++row)
                for (int d : {+1, -1})
                    if (c.legal(row, d)) legal.push_back({row, d});
            if (legal.empty()) break;
            auto [r1, d1] = legal[rng.below(legal.size())];
            apply_move(c, r1, d1);
            legal.clear();
            for (int row = 1; row <= window; ++row)
                for (int d : {+1, -1}) {
                    if (!c.legal(row, d)) continue;
                    long w2 = c.w + d;
                    if (w2 <= spec.T && (spec.T - w2) % 2 == 0) legal.push_back({row, d});
                }
            if (legal.empty()) {
                apply_move(c, r1, -d1);
                continue;
            }
            auto [r2, d2] = legal[rng.below(legal.size())];
            apply_move(c, r2, d2);
        }
        starts.push_back(c.ils.to_partition());
    }

    ModeResult best;
    bool have = false;
    for (const auto& start : starts) {
        Partition found = climb(spec, start, window);
        double lw = log_decay_weight(found, spec);
        if (!have || lw > best.log_weight + 1e-9 ||
            (std::abs(lw - best.log_weight) <= 1e-9 && found < best.mode)) {
            best.mode = found;
            best.log_weight = lw;
            have = true;
        }
    }
    best.length = best.mode.length();
    best.area = best.mode.weight();
    long k = 0;
    while (k < best.mode.length() && best.mode.part(static_cast<int>(k) + 1) - (k + 1) >= 0)
        ++k;
    best.diag_k = k;
    return best;
}

// ---------------------------------------------------------------------------
// sequential importance sampling

namespace {

struct ChunkAccum {
    KahanSum w, w2;
    std::map<Partition, long> counts;
    std::map<Partition, double> weight_sums;
};

void run_chunk(const ProcessSpec& spec, long begin, long end, ChunkAccum& acc) {
    for (long s = begin; s < end; ++s) {
        Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(s)));
        std::vector<int> parts;
        double log_w = 0;
        bool dead = false;
        for (int t = 0; t < spec.T && !dead; ++t) {
            Partition cur(parts);
            auto mv = box_moves(cur);
            std::vector<std::pair<Partition, double>> options;
            double total = 0;
            for (auto& up : mv.addable) {
                // the row that grew identifies the moving particle
                int row = 1;
                while (row <= cur.length() && up.part(row) == cur.part(row)) ++row;
                long to = static_cast<long>(up.part(row)) - row + spec.level;
                double rate = spec.potential.rate_up(to);
                if (rate > 0) {
                    total += rate;
                    options.emplace_back(std::move(up), rate);
                }
            }
            for (auto& down : mv.removable) {
                int row = 1;
                while (row <= down.length() && down.part(row) == cur.part(row)) ++row;
                long to = static_cast<long>(cur.part(row)) - row - 1 + spec.level;
                double rate = spec.potential.rate_down(to);
                if (rate > 0) {
                    total += rate;
                    options.emplace_back(std::move(down), rate);
                }
            }
            if (options.empty()) {
                dead = true;
                break;
            }
            double pick = rng.uniform() * total;
            size_t chosen = 0;
            double run = 0;
            for (size_t i = 0; i < options.size(); ++i) {
                run += options[i].second;
                if (pick <= run || i + 1 == options.size()) {
                    chosen = i;
                    break;
                }
            }
            parts = options[chosen].first.parts;
            log_w += std::log(total);
        }
        double weight = dead ? 0.0 : std::exp(log_w);
        Partition endp(parts);
        acc.w.add(weight);
        acc.w2.add(weight * weight);
        acc.counts[endp] += 1;
        acc.weight_sums[endp] += weight;
    }
}

}  // namespace

SampleSummary sample_endpoint(const ProcessSpec& spec, long n_samples) {
    SampleSummary out;
    out.n = n_samples;
    if (n_samples <= 0) return out;

    constexpr long kChunk = 4096;
    long n_chunks = (n_samples + kChunk - 1) / kChunk;
    std::vector<ChunkAccum> acc(n_chunks);

    unsigned workers = std::min<long>(thread_count(), n_chunks);
    if (workers <= 1) {
        for (long c = 0; c < n_chunks; ++c)
            run_chunk(spec, c * kChunk, std::min(n_samples, (c + 1) * kChunk), acc[c]);
    } else {
        std::atomic<long> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (long c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1))
                    run_chunk(spec, c * kChunk, std::min(n_samples, (c + 1) * kChunk),
                              acc[c]);
            });
        for (auto& th : pool) th.join();
    }

    KahanSum w, w2;
    for (long c = 0; c < n_chunks; ++c) {
        w.add(acc[c].w.value());
        w2.add(acc[c].w2.value());
        for (const auto& [k, v] : acc[c].counts) out.counts[k] += v;
        for (const auto& [k, v] : acc[c].weight_sums) out.weight_sums[k] += v;
    }
    double n = static_cast<double>(n_samples);
    out.z_hat = w.value() / n;
    if (n_samples > 1) {
        double var = (w2.value() - n * out.z_hat * out.z_hat) / (n - 1);
        out.z_se = std::sqrt(std::max(0.0, var) / n);
    }
    return out;
}

double single_row_mode(double r, long T) {
    double rt = r * std::sqrt(static_cast<double>(T));
    return rt + (1 - r * r) / 2 +
           (r * r + std::pow(1 - r * r, 2) / 8) / rt;
}

double stirling_weight_estimate(const Partition& lam, int T, const Potential& U) {
    double t = static_cast<double>(T);
    return 0.5 * std::numbers::ln2 + 0.5 * t * (std::log(t) - 1) +
           0.5 * lam.weight() * (std::log(2 * t) - 0.5) -
           potential_energy(lam, 0, U) + log_schur_tinfty(lam);
}

}  // namespace tw
