// Site potentials U_i: hopping rates and Boltzmann factors.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tauwalk/numeric.hpp"
#include "tauwalk/partition.hpp"

namespace tw {

// U is defined up to an additive constant; U_0 = 0 by normalization.
// constant_rate(r): U_i = -i log r; gauss(c): U_i = c i^2/2; table: explicit
// values with linear tails. hard_wall freezes every hop touching sites < 0.
struct Potential {
    enum class Kind { constant_rate, table, gauss };
    Kind kind = Kind::constant_rate;
    Rat r = 1;
    Rat c = 0;
    long base_site = 0;
    std::vector<double> values;
    double tail_slope = 0;
    bool hard_wall = false;

    static Potential constant_rate(const Rat& r);
    static Potential gauss(const Rat& c);
    static Potential table(long base_site, std::vector<double> values, double tail_slope);

    double U(long i) const;
    // -U_i as an exact rational multiple of log r (constant) or a plain
    // rational exponent (gauss with rational c); nullopt for table potentials.
    bool rational_rates() const { return kind == Kind::constant_rate; }
    bool rational_exponents() const { return kind != Kind::table; }

    double rate_up(long to) const;    // hop to-1 -> to, e^{-U_to + U_{to-1}}
    double rate_down(long to) const;  // hop to+1 -> to, e^{-U_to + U_{to+1}}
    bool blocked(long from, long to) const {
        return hard_wall && (from < 0 || to < 0);
    }

    // Exact variants where they exist.
    Rat rate_up_rat(long to) const;    // constant_rate only
    Rat rate_down_rat(long to) const;  // constant_rate only
    Rat neg_exponent_up(long to) const;    // q with rate = e^q, gauss only
    Rat neg_exponent_down(long to) const;  // q with rate = e^q, gauss only
};

// U_lambda(n) = sum_i (U_{lambda_i - i + n} - U_{-i + n})
double potential_energy(const Partition& lam, int level, const Potential& U);
// e^{-U_lambda(n)} exactly for constant rational rate: r^{|lambda|}.
Rat boltzmann_exact(const Partition& lam, int level, const Potential& U);
// Rational exponent of e^{-U_lambda(n)} for gauss/constant potentials.
Rat boltzmann_exponent(const Partition& lam, int level, const Potential& U);

}  // namespace tw
