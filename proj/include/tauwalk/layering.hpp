// Strip-layering chains: one-letter growth/evaporation operators acting by
// vertical or horizontal strips, words of them, Schur growth weights, and the
// closed-form normalization identities they must reproduce.
#pragma once

#include <stdexcept>
#include <vector>

#include "tauwalk/glinf.hpp"
#include "tauwalk/numeric.hpp"
#include "tauwalk/partition.hpp"
#include "tauwalk/potential.hpp"

namespace tw {

// sigma: 1 add-vertical, 2 remove-vertical, 3 add-horizontal, 4 remove-horizontal.
struct StripOperator {
    int sigma = 1;
    double x = 1.0;
    Potential U = Potential::constant_rate(Rat(1));
};
using DarbouxWord = std::vector<StripOperator>;

struct CapExceeded : std::runtime_error {
    double spilled_mass;
    explicit CapExceeded(double mass)
        : std::runtime_error("chain mass escaped the weight cap"), spilled_mass(mass) {}
};

struct ConvergenceTooSlow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Whether `to` is reachable from `from` by one application of the letter.
bool strip_admissible(const Partition& to, const Partition& from, int sigma);

// e^{U_from - U_to} * x^{boxes added or removed} when admissible, else 0.
// Site energies are taken at level 0; the empty strip (to == from) gives 1.
double strip_transition_weight(const Partition& to, const Partition& from,
                               const StripOperator& op);

struct ChainResult {
    WeightedStateVector<double> states;
    double spilled = 0;  // mass dropped at the weight cap
};

// Apply the word letter by letter.  cap < 0 means unbounded and is only legal
// for removal-only words; set strict to turn dropped mass into CapExceeded.
ChainResult chain_propagate(const Partition& start, const DarbouxWord& word, long cap,
                            bool strict = false);

// s_lambda(x_1..x_T) for positive reals, by the determinant in complete
// homogeneous terms; zero when the partition is longer than T.
double schur_eval(const Partition& lam, const std::vector<double>& xs);

// e^{-U_lambda} s_lambda(x_1..x_T), energies at level T (half-line coordinates
// h_i = lambda_i - i + T; constant-rate energies do not depend on the level).
double growth_weight(const Partition& lam, const std::vector<double>& xs, const Potential& U);
// Exact variant at U = 0 for rational variables.
Rat growth_weight_exact(const Partition& lam, const std::vector<Rat>& xs);

// sum_lambda s_lambda(x) against prod (1-x_j)^-1 prod_{i<j} (1-x_i x_j)^-1.
struct SeriesProductCheck {
    double series = 0;
    double closed = 0;
    double diff = 0;
};
SeriesProductCheck closed_form_product(const std::vector<double>& xs, long cap,
                                       double tail_tol = 1e-7);

// sum over lambda inside the T x m rectangle of s_lambda(x), exactly, against
// the determinant ratio D_m / D_0 with D_m = det(x_j^{2T+m-i} - x_j^{i-1}).
struct RectangleCheck {
    Rat series;
    Rat closed;
    bool equal = false;
};
RectangleCheck closed_form_rectangle(int T, int m, const std::vector<Rat>& xs);

// Volume generating function of symmetric plane partitions in the T x T x m
// box, three ways: direct enumeration, the rectangle Schur sum at
// x_j = q^{2j-1}, and the hook-type product; coefficients in q are exact.
struct PlanePartitionCheck {
    std::vector<Int> enum_coeffs;
    std::vector<Int> schur_coeffs;
    std::vector<Int> product_coeffs;
    bool coeffs_match = false;
    double lhs = 0;   // enumeration series at e^phi
    double rhs = 0;   // product evaluated at e^phi
    double diff = 0;
};
PlanePartitionCheck plane_partition_check(int T, int m, double phi, long cap);

}  // namespace tw
