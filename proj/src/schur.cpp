#include "tauwalk/schur.hpp"

#include <cmath>
#include <stdexcept>

#include "tauwalk/linalg.hpp"

namespace tw {

TimeVector powersums(const std::vector<Rat>& x, int K) {
    TimeVector tv;
    tv.t.assign(K, Rat(0));
    std::vector<Rat> p(x);  // x_i^m running powers
    for (int m = 1; m <= K; ++m) {
        Rat s = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            if (m > 1) p[i] *= x[i];
            s += p[i];
        }
        tv.t[m - 1] = s / m;
    }
    return tv;
}

TimeVector t_infinity_vector(int K) {
    TimeVector tv;
    tv.t.assign(K, Rat(0));
    if (K >= 1) tv.t[0] = 1;
    return tv;
}

TimeVector t_a1_vector(const Rat& a, int K) {
    TimeVector tv;
    tv.t.reserve(K);
    for (int m = 1; m <= K; ++m) tv.t.push_back(a / m);
    return tv;
}

std::vector<Rat> elementary_schur_upto(int K, const TimeVector& t) {
    // k h_k = sum_{m=1..k} m t_m h_{k-m}
    std::vector<Rat> h(K + 1);
    h[0] = 1;
    for (int k = 1; k <= K; ++k) {
        Rat s = 0;
        for (int m = 1; m <= k; ++m) {
            Rat tm = t.tm(m);
            if (tm != 0) s += Rat(m) * tm * h[k - m];
        }
        h[k] = s / k;
    }
    return h;
}

Rat elementary_schur(int k, const TimeVector& t) {
    if (k < 0) return 0;
    return elementary_schur_upto(k, t)[k];
}

namespace {
Rat jacobi_trudi(const std::vector<int>& lam, const std::vector<int>& mu,
                 const TimeVector& t) {
    int n = static_cast<int>(lam.size());
    if (n == 0) return 1;
    int K = 0;
    for (int i = 0; i < n; ++i) K = std::max(K, lam[i] + n);
    auto h = elementary_schur_upto(K, t);
    auto hk = [&](int k) -> Rat { return k < 0 ? Rat(0) : h[k]; };
    Matrix<Rat> M(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            int mu_j = j <= static_cast<int>(mu.size()) ? mu[j - 1] : 0;
            M.at(i - 1, j - 1) = hk(lam[i - 1] - mu_j - i + j);
        }
    return bareiss_det(std::move(M));
}
}  // namespace

Rat schur(const Partition& lam, const TimeVector& t) {
    return jacobi_trudi(lam.parts, {}, t);
}

Rat skew_schur(const Partition& lam, const Partition& mu, const TimeVector& t) {
    if (!contains(lam, mu)) return 0;
    return jacobi_trudi(lam.parts, mu.parts, t);
}

Rat schur_bialternant(const Partition& lam, const std::vector<Rat>& x) {
    int n = static_cast<int>(x.size());
    if (lam.length() > n) return 0;
    Matrix<Rat> num(n, n), den(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 1; j <= n; ++j) {
            num.at(i, j - 1) = rat_pow(x[i], lam.part(j) - j + n);
            den.at(i, j - 1) = rat_pow(x[i], n - j);
        }
    Rat d = bareiss_det(std::move(den));
    if (d == 0) throw std::domain_error("bialternant needs distinct nonzero x");
    return bareiss_det(std::move(num)) / d;
}

Rat schur_tinfty(const Partition& lam) {
    int n = lam.length();
    if (n == 0) return 1;
    std::vector<long> h(n);
    for (int i = 1; i <= n; ++i) h[i - 1] = lam.part(i) - i + n;
    Int num = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) num *= (h[i] - h[j]);
    Int den = 1;
    for (int i = 0; i < n; ++i) den *= factorial(h[i]);
    return Rat(num, den);
}

Rat schur_ta1(const Partition& lam, const Rat& a) {
    Rat v = schur_tinfty(lam);
    for (int i = 1; i <= lam.length(); ++i)
        v *= pochhammer(a - (i - 1), lam.part(i));
    return v;
}

double schur_tinfq(const Partition& lam, double q, int window) {
    if (q <= 0) throw std::invalid_argument("q must be positive");
    int n = window < 0 ? lam.length() : window;
    if (n < lam.length()) throw std::invalid_argument("window smaller than length");
    if (n == 0) return 1.0;
    std::vector<long> h(n);
    for (int i = 1; i <= n; ++i) h[i - 1] = lam.part(i) - i + n;
    // Vandermonde over q^h divided by its staircase (vacuum) value; writing each
    // pair as q^{h_j}(1 - q^{h_i-h_j}) the net q-power collapses to sum (i-1)*lam_i,
    // which makes the window independence explicit.
    long nlam = 0;
    for (int i = 1; i <= lam.length(); ++i) nlam += (i - 1) * lam.part(i);
    double v = std::pow(q, static_cast<double>(nlam));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            v *= 1.0 - std::pow(q, static_cast<double>(h[i] - h[j]));
    for (int i = 0; i < n; ++i)
        for (long k = 1; k <= h[i]; ++k) v /= 1.0 - std::pow(q, static_cast<double>(k));
    return v;
}

double schur_taq(const Partition& lam, double a, double q) {
    double v = schur_tinfq(lam, q);
    for (int i = 1; i <= lam.length(); ++i)
        for (int k = 0; k < lam.part(i); ++k)
            v *= 1.0 - std::pow(q, a - (i - 1) + k);
    return v;
}

Rat schur_special_exact(const Partition& lam, const SpecialPoint& p) {
    using Tag = SpecialPoint::Tag;
    switch (p.tag) {
        case Tag::t_infinity: return schur_tinfty(lam);
        case Tag::t_a1: return schur_ta1(lam, p.a);
        case Tag::powersums: {
            TimeVector tv = powersums(p.x, static_cast<int>(lam.weight()) + 1);
            return schur(lam, tv);
        }
        default:
            throw std::invalid_argument("point has no exact rational value");
    }
}

double schur_special(const Partition& lam, const SpecialPoint& p) {
    using Tag = SpecialPoint::Tag;
    switch (p.tag) {
        case Tag::t_inf_q: return schur_tinfq(lam, p.q);
        case Tag::t_aq: return schur_taq(lam, to_double(p.a), p.q);
        default: return to_double(schur_special_exact(lam, p));
    }
}

double log_schur_tinfty(const Partition& lam) {
    IncrementalLogSchur inc(lam, lam.length());
    return inc.log_value();
}

IncrementalLogSchur::IncrementalLogSchur(const Partition& lam, int window) {
    if (window < lam.length()) window = lam.length();
    h_.resize(window);
    for (int i = 1; i <= window; ++i) h_[i - 1] = lam.part(i) - i + window;
    for (size_t i = 0; i < h_.size(); ++i) {
        log_facts_ += std::lgamma(static_cast<double>(h_[i]) + 1.0);
        for (size_t j = i + 1; j < h_.size(); ++j)
            log_pairs_ += std::log(static_cast<double>(h_[i] - h_[j]));
    }
}

double IncrementalLogSchur::peek(int row, int dir) const {
    long hv = h_[row - 1], hn = hv + dir;
    double d = 0;
    for (size_t j = 0; j < h_.size(); ++j) {
        if (static_cast<int>(j) == row - 1) continue;
        d += std::log(std::fabs(static_cast<double>(hn - h_[j]))) -
             std::log(std::fabs(static_cast<double>(hv - h_[j])));
    }
    d -= std::lgamma(static_cast<double>(hn) + 1.0) -
         std::lgamma(static_cast<double>(hv) + 1.0);
    return d;
}

double IncrementalLogSchur::move(int row, int dir) {
    double d = peek(row, dir);
    long hv = h_[row - 1], hn = hv + dir;
    for (size_t j = 0; j < h_.size(); ++j) {
        if (static_cast<int>(j) == row - 1) continue;
        log_pairs_ += std::log(std::fabs(static_cast<double>(hn - h_[j]))) -
                      std::log(std::fabs(static_cast<double>(hv - h_[j])));
    }
    log_facts_ += std::lgamma(static_cast<double>(hn) + 1.0) -
                  std::lgamma(static_cast<double>(hv) + 1.0);
    h_[row - 1] = hn;
    return d;
}

Partition IncrementalLogSchur::to_partition() const {
    int n = window();
    std::vector<int> parts;
    for (int i = 1; i <= n; ++i) {
        long v = h_[i - 1] + i - n;
        if (v > 0) parts.push_back(static_cast<int>(v));
    }
    return Partition(std::move(parts));
}

}  // namespace tw
