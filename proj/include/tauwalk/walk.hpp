// The random-turn walk over partitions: exact decay weights from the vacuum,
// normalization sums, Coulomb-coupled variants, ensemble rewrites, limit-shape
// prediction/verification, mode search and a sequential importance sampler.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "tauwalk/numeric.hpp"
#include "tauwalk/partition.hpp"
#include "tauwalk/potential.hpp"

namespace tw {

struct ProcessSpec {
    Potential potential = Potential::constant_rate(Rat(1));
    int T = 0;              // number of ticks
    double qsq = 0;         // Coulomb charge squared
    int level = 0;
    std::uint64_t seed = 1;
};

struct BoundExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kExactSumBound = 40;

// Number of length-T hop sequences vacuum -> lambda; zero when T - |lambda|
// is odd or negative.
Int path_count(const Partition& lam, int T);

// Exact weights exist for constant rational rates with integer Coulomb charge.
bool weight_is_exact(const ProcessSpec& spec);
Rat decay_weight_exact(const Partition& lam, const ProcessSpec& spec);
double log_decay_weight(const Partition& lam, const ProcessSpec& spec);  // -inf when zero
double decay_weight(const Partition& lam, const ProcessSpec& spec);

Rat normalization_Z0_exact(const ProcessSpec& spec, int bound = kExactSumBound);
double normalization_Z0(const ProcessSpec& spec, int bound = kExactSumBound);
double transition_probability(const Partition& lam, const ProcessSpec& spec,
                              int bound = kExactSumBound);

struct EndpointEntry {
    Partition lam;
    Rat weight;         // meaningful only when the table is exact
    double log_weight;
    double probability;
};
struct EndpointTable {
    bool exact = false;
    Rat Z_exact;
    double Z = 0;
    std::vector<EndpointEntry> entries;  // canonical order
};
EndpointTable endpoint_distribution(const ProcessSpec& spec, int bound = kExactSumBound);

// Sum over |lambda| <= cap of e^{-U_lambda} s_lambda(t_inf)^{qsq} z^{|lambda|};
// tail_estimate (optional) receives the relative size of the last weight class.
double equilibrium_partition_sum(const Potential& U, double qsq, double z, int cap,
                                 double* tail_estimate = nullptr);

// Two independent evaluations of the n-charge gas sum at matched truncation.
struct CoulombGasRoutes {
    double partition_route = 0;
    double h_route = 0;
};
CoulombGasRoutes coulomb_gas_q1(int n, const Potential& U, int cap);

// Partition-sum form vs the symmetrized discrete-ensemble form.
struct EnsembleCheck {
    bool exact = false;
    Rat lhs_exact, rhs_exact;
    double lhs = 0, rhs = 0, diff = 0;
};
EnsembleCheck orthogonal_ensemble_check(int T, const Potential& U);

struct LimitShapePrediction {
    double R = 0;
    double length = 0, area = 0, diag_k = 0, backward_m = 0;
    double sigma(double h) const;  // 1 below 0, 0 above 2R, arcsine between
};
LimitShapePrediction predict_limit_shape(double r, long T, double qsq = 0);

// Max residual of the equilibrium condition for the predicted density: the
// principal-value transform is compared to its closed form log(2h/R) on a
// grid of h in (0, 2R).
double verify_equilibrium_density(double r, long T, int grid = 19);

struct ModeResult {
    Partition mode;
    double log_weight = 0;
    long length = 0, area = 0, diag_k = 0;
};
// Hill climb over parity-preserving pairs of box moves, best of the seeded
// start, the trivial start and `restarts` perturbed starts.
ModeResult mode_search(const ProcessSpec& spec, int restarts = 4);

struct SampleSummary {
    long n = 0;
    double z_hat = 0, z_se = 0;  // unbiased estimate of Z0 and its std. error
    std::map<Partition, long> counts;
    std::map<Partition, double> weight_sums;  // importance weight per endpoint
};
SampleSummary sample_endpoint(const ProcessSpec& spec, long n_samples);

// Three-term expansion of the dominant single-row endpoint.
double single_row_mode(double r, long T);

// Stirling estimate of the log decay weight, valid for |lambda| << T.
double stirling_weight_estimate(const Partition& lam, int T, const Potential& U);

}  // namespace tw
