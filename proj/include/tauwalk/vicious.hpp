// Nonintersecting (vicious) walker chains: one-particle step kernels,
// determinantal transition weights, lattice-path determinants, and the
// cross-checks tying them to skew Schur values and the operator engine.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tauwalk/glinf.hpp"
#include "tauwalk/linalg.hpp"
#include "tauwalk/numeric.hpp"
#include "tauwalk/partition.hpp"
#include "tauwalk/potential.hpp"

namespace tw {

struct LengthMismatch : std::runtime_error {
    explicit LengthMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct WindowTooSmall : std::runtime_error {
    explicit WindowTooSmall(const std::string& what) : std::runtime_error(what) {}
};

// One-tick transition amplitude between growth states: det over rows of the
// destination of e^{U_{s_i} - U_{s'_j}} / (s'_j - s_i)! with zero-window sites
// s_i = lam_i - i.  Vanishes unless the start is contained in the end.
double wick_transition(const Partition& to, const Partition& from, const Potential& U);
// Exact variant; requires rational rates (constant-rate or zero potential).
Rat wick_transition_exact(const Partition& to, const Partition& from, const Potential& U);

// det of binomial coefficients C(a_i, b_j); a and b must have equal length.
Int binomial_determinant(const std::vector<long>& a, const std::vector<long>& b);

// Signed count of vertex-disjoint lattice-path families (0, a_i) -> (b_j, b_j)
// with unit right/down steps, enumerated directly.  Bounded brute force:
// throws BruteForceBoundExceeded beyond k = 4 or a_1 = 12.
Int nonintersecting_path_count(const std::vector<long>& a, const std::vector<long>& b);

enum class Geometry { half_line, ring };

// One-step single-walker kernel on sites 0..top.  Column = from, row = to.
// Moves are single hops to a neighboring site weighted e^{-U_to(t) + U_from(f)};
// on the ring the seam pair (0, top) are neighbors.  Stays are off by default.
template <typename S>
struct StepKernel {
    long top = 0;
    Matrix<S> m;  // (top+1) x (top+1), m.at(to, from)
    const S& at(long to, long from) const { return m.at(static_cast<int>(to), static_cast<int>(from)); }
};
using KernelMatrix = StepKernel<double>;

KernelMatrix vicious_step_kernel(const Potential& from_u, const Potential& to_u, Geometry geom,
                                 long top, bool allow_stay = false);
StepKernel<Rat> vicious_step_kernel_exact(const Potential& from_u, const Potential& to_u,
                                          Geometry geom, long top, bool allow_stay = false);

// A T-step chain of N walkers.  `levels` holds the site potential per level
// 0..T; a single entry is used for every level.  window is the top site on the
// half-line (-1 = auto-size to max coordinate + T); rings use sites 0..ring_n.
struct ChainSpec {
    std::vector<Potential> levels{Potential::constant_rate(Rat(1))};
    int T = 0;
    int walkers = 1;
    Geometry geometry = Geometry::half_line;
    long ring_n = 0;
    bool allow_stay = false;
    long window = -1;

    const Potential& level_potential(int j) const;
    long top_site(long max_coord) const;  // resolved window; throws WindowTooSmall
};

// det of the composed step kernels taken on the walker coordinate sets
// (rows = end, columns = start, both sorted decreasing).  Coordinates must be
// distinct sites within the window.
double chain_weight(const std::vector<long>& end_h, const std::vector<long>& start_h,
                    const ChainSpec& spec);
Rat chain_weight_exact(const std::vector<long>& end_h, const std::vector<long>& start_h,
                       const ChainSpec& spec);
// Partition endpoints at window N: h_i = lam_i - i + N.
double chain_weight(const Partition& end, const Partition& start, const ChainSpec& spec);

// Signed family decomposition: total = W+ - W- over lock-step families with no
// shared site at any tick, signed by crossing parity.  Computed by propagating
// N-site subsets, so it is exact but only feasible while C(window+1, N) stays
// under max_states (throws BruteForceBoundExceeded otherwise).
struct SignedChainWeight {
    double value = 0;
    double w_plus = 0;
    double w_minus = 0;
};
SignedChainWeight chain_weight_signed(const std::vector<long>& end_h,
                                      const std::vector<long>& start_h, const ChainSpec& spec,
                                      std::uint64_t max_states = 200000);

// Pinned-site constraints at intermediate ticks: contain = the configuration
// must cover all listed sites, avoid = it must miss them all.
struct TimeConstraint {
    int time = 0;
    bool contain = true;
    std::vector<long> sites;
};
double constrained_chain_weight(const std::vector<long>& end_h, const std::vector<long>& start_h,
                                const ChainSpec& spec, const std::vector<TimeConstraint>& constraints,
                                std::uint64_t max_states = 200000);

// det C(h'_i, h_j) over window-k coordinates of the pair, and the same matrix
// element computed through the operator engine as e^A with arc weights i on
// the hop (i-1) -> i.  Both exact.
Rat gv_pair_det(const Partition& outer, const Partition& inner, int k);
Rat gv_pair_operator(const Partition& outer, const Partition& inner, int k);
// Single-particle element of e^A between sites j and i; equals C(i, j).
Rat gv_single_particle(long i, long j);

// Generating-series agreement: sum over pairs of s_{lam'}(x) s_lam(y) times the
// binomial determinant versus the same series with the engine matrix element.
struct GeneratingCheck {
    Rat direct;
    Rat engine;
    bool equal = false;
};
GeneratingCheck gv_generating_check(int k, const std::vector<Rat>& xs, const std::vector<Rat>& ys,
                                    long cap);

// prod over cells (i,j) of lam of (n + j - i).
Rat content_pochhammer(const Partition& lam, long n);

// Empirical reconciliation of the window-size parameter: the binomial
// determinant at window k against the content-product form
// (n)_{outer} / (n)_{inner} * s_{outer/inner}(t_infinity).
struct BinomialSkewCheck {
    Rat det_route;
    Rat pochhammer_route;
    bool equal = false;
};
BinomialSkewCheck binomial_skew_check(const Partition& outer, const Partition& inner, int window,
                                      long n);

// Gaussian-potential factorization: the growth weight of lam under
// x_j = e^{c h'_j} against the prefactored Gaussian determinant route.
struct GaussKernelCheck {
    double layering_route = 0;
    double det_route = 0;
    double rel_diff = 0;
};
GaussKernelCheck gauss_kernel_check(const std::vector<long>& hp, const Partition& lam, const Rat& c);

}  // namespace tw
