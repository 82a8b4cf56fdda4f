#include "tauwalk/layering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tauwalk/linalg.hpp"
#include "tauwalk/schur.hpp"

namespace tw {

namespace {

StripKind kind_of(int sigma) {
    switch (sigma) {
        case 1:
        case 2:
            return StripKind::vertical;
        case 3:
        case 4:
            return StripKind::horizontal;
        default:
            throw std::invalid_argument("strip letter must be 1..4");
    }
}

bool is_add(int sigma) { return sigma == 1 || sigma == 3; }

}  // namespace

bool strip_admissible(const Partition& to, const Partition& from, int sigma) {
    StripKind kind = kind_of(sigma);
    return is_add(sigma) ? is_strip(to, from, kind) : is_strip(from, to, kind);
}

double strip_transition_weight(const Partition& to, const Partition& from,
                               const StripOperator& op) {
    if (!strip_admissible(to, from, op.sigma)) return 0.0;
    long delta = std::labs(to.weight() - from.weight());
    double energy = potential_energy(from, 0, op.U) - potential_energy(to, 0, op.U);
    return std::exp(energy) * std::pow(op.x, static_cast<double>(delta));
}

ChainResult chain_propagate(const Partition& start, const DarbouxWord& word, long cap,
                            bool strict) {
    if (cap < 0)
        for (const auto& op : word)
            if (is_add(op.sigma))
                throw std::invalid_argument("growth letters need a finite weight cap");

    // Extra headroom enumerated past the cap to estimate the dropped mass.
    constexpr int kSlack = 6;

    ChainResult res;
    res.states.add(StateKey{start, 0}, 1.0);
    for (const auto& op : word) {
        WeightedStateVector<double> next;
        double spilled = 0;
        for (const auto& [key, amp] : res.states.entries) {
            const Partition& lam = key.p;
            std::vector<Partition> targets;
            if (is_add(op.sigma)) {
                long room = cap - lam.weight();
                targets = strip_additions(lam, kind_of(op.sigma),
                                          static_cast<int>(std::max<long>(0, room) + kSlack));
            } else {
                targets = strip_removals(lam, kind_of(op.sigma));
            }
            for (const auto& mu : targets) {
                double w = strip_transition_weight(mu, lam, op);
                if (w == 0) continue;
                if (cap >= 0 && mu.weight() > cap)
                    spilled += amp * w;
                else
                    next.add(StateKey{mu, 0}, amp * w);
            }
        }
        res.states = std::move(next);
        res.spilled += spilled;
    }
    if (strict && res.spilled > 0) throw CapExceeded(res.spilled);
    return res;
}

namespace {

// h_0..h_K of the given variables; one-variable-at-a-time recurrence.
std::vector<double> complete_homogeneous(const std::vector<double>& xs, int K) {
    std::vector<double> h(static_cast<std::size_t>(K) + 1, 0.0);
    h[0] = 1.0;
    for (double x : xs)
        for (int k = 1; k <= K; ++k) h[static_cast<std::size_t>(k)] += x * h[static_cast<std::size_t>(k - 1)];
    return h;
}

}  // namespace

double schur_eval(const Partition& lam, const std::vector<double>& xs) {
    int T = static_cast<int>(xs.size());
    int l = lam.length();
    if (l == 0) return 1.0;
    if (l > T) return 0.0;
    int K = lam.part(1) + l;
    auto h = complete_homogeneous(xs, K);
    Matrix<double> M(l, l);
    for (int i = 1; i <= l; ++i)
        for (int j = 1; j <= l; ++j) {
            int idx = lam.part(i) - i + j;
            M.at(i - 1, j - 1) = idx < 0 ? 0.0 : h[static_cast<std::size_t>(idx)];
        }
    return lu_det(std::move(M));
}

double growth_weight(const Partition& lam, const std::vector<double>& xs, const Potential& U) {
    int T = static_cast<int>(xs.size());
    if (lam.length() > T) return 0.0;
    return std::exp(-potential_energy(lam, T, U)) * schur_eval(lam, xs);
}

Rat growth_weight_exact(const Partition& lam, const std::vector<Rat>& xs) {
    if (lam.length() > static_cast<int>(xs.size())) return Rat(0);
    int K = lam.part(1) + lam.length();
    return schur(lam, powersums(xs, std::max(1, K)));
}

SeriesProductCheck closed_form_product(const std::vector<double>& xs, long cap, double tail_tol) {
    if (xs.empty()) throw std::invalid_argument("need at least one variable");
    double xmax = 0;
    for (double x : xs) {
        if (x < 0 || x >= 1) throw std::invalid_argument("variables must lie in [0, 1)");
        xmax = std::max(xmax, x);
    }
    int T = static_cast<int>(xs.size());

    KahanSum series;
    double last_class = 0;
    for (long w = 0; w <= cap; ++w) {
        KahanSum cls;
        for (const auto& lam : partitions_of(static_cast<int>(w)))
            if (lam.length() <= T) cls.add(schur_eval(lam, xs));
        last_class = cls.value();
        series.add(last_class);
    }
    double tail_est = xmax < 1 ? std::fabs(last_class) * xmax / (1 - xmax) : HUGE_VAL;
    if (tail_est > tail_tol * std::max(1.0, std::fabs(series.value())))
        throw ConvergenceTooSlow("series tail estimate above tolerance; raise the cap");

    double closed = 1;
    for (int j = 0; j < T; ++j) closed /= 1 - xs[static_cast<std::size_t>(j)];
    for (int i = 0; i < T; ++i)
        for (int j = i + 1; j < T; ++j)
            closed /= 1 - xs[static_cast<std::size_t>(i)] * xs[static_cast<std::size_t>(j)];

    SeriesProductCheck out;
    out.series = series.value();
    out.closed = closed;
    out.diff = std::fabs(out.series - out.closed);
    return out;
}

namespace {

void rectangle_partitions(int rows, int width, std::function<void(const Partition&)> visit) {
    std::vector<int> parts;
    std::function<void(int, int)> rec = [&](int row, int bound) {
        if (row > rows) {
            std::vector<int> cleaned = parts;
            visit(Partition(cleaned));
            return;
        }
        for (int v = bound; v >= 0; --v) {
            if (v > 0) parts.push_back(v);
            rec(row + 1, v);
            if (v > 0) parts.pop_back();
            if (v == 0) break;  // further rows are forced to zero as well
        }
    };
    rec(1, width);
}

}  // namespace

RectangleCheck closed_form_rectangle(int T, int m, const std::vector<Rat>& xs) {
    if (static_cast<int>(xs.size()) != T)
        throw std::invalid_argument("need exactly T variables");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] == 0) throw std::invalid_argument("variables must be nonzero");
        for (std::size_t j = i + 1; j < xs.size(); ++j)
            if (xs[i] == xs[j]) throw std::invalid_argument("variables must be distinct");
    }

    RectangleCheck out;
    out.series = Rat(0);
    TimeVector t = powersums(xs, m + T);
    rectangle_partitions(T, m, [&](const Partition& lam) { out.series += schur(lam, t); });

    auto det_of = [&](int shift) {
        Matrix<Rat> M(T, T);
        for (int i = 1; i <= T; ++i)
            for (int j = 1; j <= T; ++j)
                M.at(i - 1, j - 1) = rat_pow(xs[static_cast<std::size_t>(j - 1)], 2 * T + shift - i) -
                                     rat_pow(xs[static_cast<std::size_t>(j - 1)], i - 1);
        return bareiss_det(std::move(M));
    };
    Rat d0 = det_of(0);
    if (d0 == 0) throw std::invalid_argument("degenerate variables: D_0 vanishes");
    out.closed = det_of(m) / d0;
    out.equal = out.series == out.closed;
    return out;
}

namespace {

using Poly = std::vector<Int>;  // coefficients by ascending degree

void ptrim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly padd(const Poly& a, const Poly& b, bool subtract = false) {
    Poly r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += subtract ? -b[i] : b[i];
    ptrim(r);
    return r;
}

Poly pmul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    ptrim(r);
    return r;
}

// q^e - 1
Poly pcyc(long e) {
    Poly r(static_cast<std::size_t>(e) + 1, Int(0));
    r[0] = -1;
    r[static_cast<std::size_t>(e)] = 1;
    return r;
}

Poly pdiv_exact(Poly num, const Poly& den) {
    if (den.empty()) throw std::invalid_argument("division by the zero polynomial");
    if (num.size() < den.size()) {
        ptrim(num);
        if (!num.empty()) throw std::logic_error("inexact polynomial division");
        return {};
    }
    Poly q(num.size() - den.size() + 1, Int(0));
    for (std::size_t k = q.size(); k-- > 0;) {
        Int c = num[k + den.size() - 1] / den.back();
        q[k] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
    }
    ptrim(num);
    if (!num.empty()) throw std::logic_error("inexact polynomial division");
    return q;
}

double peval(const Poly& p, double q) {
    double v = 0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * q + to_double(Rat(p[i]));
    return v;
}

// Leibniz determinant over the polynomial ring; n stays tiny here.
Poly pdet(const std::vector<std::vector<Poly>>& M) {
    std::size_t n = M.size();
    if (n == 0) return Poly{Int(1)};
    std::vector<int> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<int>(i);
    Poly det;
    std::sort(idx.begin(), idx.end());
    do {
        int inv = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (idx[i] > idx[j]) ++inv;
        Poly term{Int(1)};
        for (std::size_t i = 0; i < n && !term.empty(); ++i)
            term = pmul(term, M[i][static_cast<std::size_t>(idx[i])]);
        det = padd(det, term, inv % 2 != 0);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return det;
}

}  // namespace

PlanePartitionCheck plane_partition_check(int T, int m, double phi, long cap) {
    if (T < 1 || m < 0) throw std::invalid_argument("box dimensions out of range");
    if (T > 3 || m > 3)
        throw BruteForceBoundExceeded("symmetric plane partition enumeration bounded at 3x3x3");

    long maxvol = static_cast<long>(T) * T * m;
    PlanePartitionCheck out;
    out.enum_coeffs.assign(static_cast<std::size_t>(maxvol) + 1, Int(0));

    // All symmetric T x T fillings with entries <= m, weakly decreasing along
    // rows and columns; free cells are the upper triangle.
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < T; ++i)
        for (int j = i; j < T; ++j) cells.emplace_back(i, j);
    std::vector<std::vector<int>> grid(static_cast<std::size_t>(T),
                                       std::vector<int>(static_cast<std::size_t>(T), 0));
    std::function<void(std::size_t)> fill = [&](std::size_t c) {
        if (c == cells.size()) {
            long vol = 0;
            for (int i = 0; i < T; ++i)
                for (int j = 0; j < T; ++j) vol += grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            out.enum_coeffs[static_cast<std::size_t>(vol)] += 1;
            return;
        }
        auto [i, j] = cells[c];
        int hi = m;
        if (i > 0) hi = std::min(hi, grid[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)]);
        if (j > i) hi = std::min(hi, grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)]);
        for (int v = 0; v <= hi; ++v) {
            grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
            grid[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
            fill(c + 1);
        }
        grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 0;
        grid[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = 0;
    };
    fill(0);

    // Rectangle Schur sum at x_j = q^{2j-1} as an exact polynomial.
    int K = m + T;
    std::vector<Poly> h(static_cast<std::size_t>(K) + 1);
    h[0] = Poly{Int(1)};
    for (int j = 1; j <= T; ++j) {
        long e = 2 * j - 1;
        for (int k = 1; k <= K; ++k) {
            Poly shifted;
            if (!h[static_cast<std::size_t>(k - 1)].empty()) {
                shifted.assign(h[static_cast<std::size_t>(k - 1)].size() + static_cast<std::size_t>(e), Int(0));
                for (std::size_t d = 0; d < h[static_cast<std::size_t>(k - 1)].size(); ++d)
                    shifted[d + static_cast<std::size_t>(e)] = h[static_cast<std::size_t>(k - 1)][d];
            }
            h[static_cast<std::size_t>(k)] = padd(h[static_cast<std::size_t>(k)], shifted);
        }
    }
    Poly schur_sum;
    rectangle_partitions(T, m, [&](const Partition& lam) {
        int l = lam.length();
        std::vector<std::vector<Poly>> M(static_cast<std::size_t>(l),
                                         std::vector<Poly>(static_cast<std::size_t>(l)));
        for (int i = 1; i <= l; ++i)
            for (int j = 1; j <= l; ++j) {
                int idx = lam.part(i) - i + j;
                M[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                    (idx < 0 || idx > K) ? Poly{} : h[static_cast<std::size_t>(idx)];
            }
        schur_sum = padd(schur_sum, pdet(M));
    });
    out.schur_coeffs = schur_sum;

    // Hook-type product, reduced to an exact polynomial.
    Poly num{Int(1)}, den{Int(1)};
    for (int i = 1; i <= T; ++i) {
        num = pmul(num, pcyc(m + 2 * i - 1));
        den = pmul(den, pcyc(2 * i - 1));
    }
    for (int i = 1; i <= T; ++i)
        for (int j = i + 1; j <= T; ++j) {
            num = pmul(num, pcyc(2 * (m + i + j - 1)));
            den = pmul(den, pcyc(2 * (i + j - 1)));
        }
    out.product_coeffs = pdiv_exact(num, den);

    long compare_to = std::min(cap, maxvol);
    bool ok = true;
    for (long v = 0; v <= compare_to && ok; ++v) {
        auto coeff = [&](const Poly& p) {
            return v < static_cast<long>(p.size()) ? p[static_cast<std::size_t>(v)] : Int(0);
        };
        ok = coeff(out.enum_coeffs) == coeff(out.schur_coeffs) &&
             coeff(out.enum_coeffs) == coeff(out.product_coeffs);
    }
    out.coeffs_match = ok;

    double q = std::exp(phi);
    out.lhs = peval(out.enum_coeffs, q);
    out.rhs = peval(out.product_coeffs, q);
    out.diff = std::fabs(out.lhs - out.rhs);
    return out;
}

}  // namespace tw
