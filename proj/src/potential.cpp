#include "tauwalk/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace tw {

Potential Potential::constant_rate(const Rat& r) {
    if (r <= 0) throw std::invalid_argument("rate must be positive");
    Potential p;
    p.kind = Kind::constant_rate;
    p.r = r;
    return p;
}

Potential Potential::gauss(const Rat& c) {
    Potential p;
    p.kind = Kind::gauss;
    p.c = c;
    return p;
}

Potential Potential::table(long base_site, std::vector<double> values, double tail_slope) {
    if (values.empty()) throw std::invalid_argument("table potential needs values");
    Potential p;
    p.kind = Kind::table;
    p.base_site = base_site;
    p.values = std::move(values);
    p.tail_slope = tail_slope;
    // normalize so U(0) = 0
    p.values.shrink_to_fit();
    double u0 = p.U(0);
    for (double& v : p.values) v -= u0;
    return p;
}

double Potential::U(long i) const {
    switch (kind) {
        case Kind::constant_rate:
            return -static_cast<double>(i) * std::log(to_double(r));
        case Kind::gauss:
            return to_double(c) * static_cast<double>(i) * static_cast<double>(i) / 2.0;
        case Kind::table: {
            long lo = base_site;
            long hi = base_site + static_cast<long>(values.size()) - 1;
            if (i < lo) return values.front() + tail_slope * static_cast<double>(i - lo);
            if (i > hi) return values.back() + tail_slope * static_cast<double>(i - hi);
            return values[i - lo];
        }
    }
    return 0;
}

double Potential::rate_up(long to) const {
    if (blocked(to - 1, to)) return 0;
    return std::exp(-U(to) + U(to - 1));
}

double Potential::rate_down(long to) const {
    if (blocked(to + 1, to)) return 0;
    return std::exp(-U(to) + U(to + 1));
}

Rat Potential::rate_up_rat(long to) const {
    if (kind != Kind::constant_rate) throw std::domain_error("rate not rational");
    if (blocked(to - 1, to)) return 0;
    return r;
}

Rat Potential::rate_down_rat(long to) const {
    if (kind != Kind::constant_rate) throw std::domain_error("rate not rational");
    if (blocked(to + 1, to)) return 0;
    return Rat(1) / r;
}

Rat Potential::neg_exponent_up(long to) const {
    // -U_to + U_{to-1} for gauss: -c(2 to - 1)/2; constant handled via log r slot
    if (kind == Kind::gauss) return -c * (2 * to - 1) / 2;
    throw std::domain_error("no rational exponent for this potential");
}

Rat Potential::neg_exponent_down(long to) const {
    if (kind == Kind::gauss) return c * (2 * to + 1) / 2;
    throw std::domain_error("no rational exponent for this potential");
}

double potential_energy(const Partition& lam, int level, const Potential& U) {
    double s = 0;
    for (int i = 1; i <= lam.length(); ++i)
        s += U.U(static_cast<long>(lam.part(i)) - i + level) - U.U(static_cast<long>(level) - i);
    return s;
}

Rat boltzmann_exact(const Partition& lam, int level, const Potential& U) {
    (void)level;  // telescopes away for constant rate
    if (U.kind != Potential::Kind::constant_rate)
        throw std::domain_error("exact Boltzmann factor needs a constant rate");
    return rat_pow(U.r, lam.weight());
}

Rat boltzmann_exponent(const Partition& lam, int level, const Potential& U) {
    // rational q with e^{-U_lambda(n)} = e^q (gauss); constant rate handled by
    // boltzmann_exact instead.
    if (U.kind != Potential::Kind::gauss)
        throw std::domain_error("rational exponent needs a gauss potential");
    Rat q = 0;
    for (int i = 1; i <= lam.length(); ++i) {
        long a = static_cast<long>(lam.part(i)) - i + level;
        long b = static_cast<long>(level) - i;
        q -= U.c * (Rat(a) * a - Rat(b) * b) / 2;
    }
    return q;
}

}  // namespace tw
