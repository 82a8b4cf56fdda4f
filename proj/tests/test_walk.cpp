#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "tauwalk/walk.hpp"

using namespace tw;

namespace {

Int double_factorial_odd(int n) {  // n!! for odd n >= -1
    Int v(1);
    for (int k = n; k >= 1; k -= 2) v *= Int(k);
    return v;
}

}  // namespace

TEST_CASE("path counts match the one-box DP") {
    for (int T = 0; T <= 7; ++T) {
        auto table = oracle::walk_path_counts(T);
        Int total(0);
        for (const auto& [lam, cnt] : table) total += cnt;
        Int via_lib(0);
        for (const auto& lam : partitions_up_to(T)) {
            Int c = path_count(lam, T);
            auto it = table.find(lam);
            CHECK(c == (it == table.end() ? Int(0) : it->second));
            via_lib += c;
        }
        CHECK(via_lib == total);
    }
    // parity and reachability
    CHECK(path_count(parse_partition("1"), 4) == Int(0));
    CHECK(path_count(parse_partition("5"), 3) == Int(0));
    CHECK(path_count(parse_partition("1"), 3) == Int(3));
    CHECK(path_count(parse_partition("1"), 5) == Int(15));
}

TEST_CASE("vacuum return weight is the odd double factorial") {
    ProcessSpec spec;
    for (int T = 2; T <= 16; T += 2) {
        spec.T = T;
        CHECK(decay_weight_exact(Partition(), spec) == Rat(double_factorial_odd(T - 1)));
    }
    spec.T = 5;
    CHECK(decay_weight_exact(Partition(), spec) == Rat(0));
}

TEST_CASE("normalization sum small values") {
    ProcessSpec spec;
    spec.T = 2;
    CHECK(normalization_Z0_exact(spec) == Rat(3));
    spec.T = 3;
    CHECK(normalization_Z0_exact(spec) == Rat(7));
    spec.T = 0;
    CHECK(normalization_Z0_exact(spec) == Rat(1));
}

TEST_CASE("normalization bound is enforced") {
    ProcessSpec spec;
    spec.T = kExactSumBound + 1;
    CHECK_THROWS_AS(normalization_Z0_exact(spec), BoundExceeded);
    CHECK_THROWS_AS(endpoint_distribution(spec), BoundExceeded);
}

TEST_CASE("decay weights equal the elementary-move DP sums") {
    for (const Rat& r : {Rat(1), Rat(3, 2)}) {
        ProcessSpec spec;
        spec.potential = Potential::constant_rate(r);
        for (int T = 0; T <= 6; ++T) {
            spec.T = T;
            auto dp = oracle::walk_weight_sums(spec.potential, T);
            Rat total(0);
            for (const auto& [lam, w] : dp) total += w;
            CHECK(normalization_Z0_exact(spec) == total);
            for (const auto& lam : partitions_up_to(T)) {
                auto it = dp.find(lam);
                CHECK(decay_weight_exact(lam, spec) == (it == dp.end() ? Rat(0) : it->second));
            }
        }
    }
}

TEST_CASE("float decay weights track the DP for a gaussian well") {
    ProcessSpec spec;
    spec.potential = Potential::gauss(Rat(1, 4));
    for (int T = 0; T <= 5; ++T) {
        spec.T = T;
        auto dp = oracle::walk_weight_sums_float(spec.potential, T);
        for (const auto& [lam, w] : dp)
            CHECK(decay_weight(lam, spec) == doctest::Approx(w).epsilon(1e-10));
    }
}

TEST_CASE("coulomb coupling at unit charge reweights by the tableau count") {
    // W = N_{lam,0} * s^{qsq} * e^{-U}; at qsq = 1, r = 1 each endpoint weight
    // is multiplied by d(lambda)/|lambda|! relative to the qsq = 0 value.
    ProcessSpec base, coup;
    base.T = coup.T = 4;
    coup.qsq = 1;
    for (const auto& lam : partitions_up_to(4)) {
        Rat w0 = decay_weight_exact(lam, base);
        Rat w1 = decay_weight_exact(lam, coup);
        Rat fact(1);
        for (long k = 2; k <= lam.weight(); ++k) fact = fact * Rat(k);
        CHECK(w1 * fact == w0 * Rat(standard_tableaux_count(lam)));
    }
    // spelled-out instance
    ProcessSpec s;
    s.T = 3;
    s.qsq = 1;
    CHECK(decay_weight_exact(parse_partition("2,1"), s) == Rat(2, 3));
}

TEST_CASE("zero coupling reproduces the base process exactly") {
    ProcessSpec a, b;
    a.T = b.T = 6;
    a.potential = b.potential = Potential::constant_rate(Rat(3, 2));
    b.qsq = 0;
    auto ta = endpoint_distribution(a);
    auto tb = endpoint_distribution(b);
    REQUIRE(ta.entries.size() == tb.entries.size());
    CHECK(ta.Z_exact == tb.Z_exact);
    for (std::size_t i = 0; i < ta.entries.size(); ++i) {
        CHECK(ta.entries[i].lam == tb.entries[i].lam);
        CHECK(ta.entries[i].weight == tb.entries[i].weight);
    }
}

TEST_CASE("multiplicity at full duration counts standard tableaux") {
    // N_{lam,0}(|lam|) = d(lam): the shortest paths build the shape one box
    // at a time with no removals.
    for (int n = 0; n <= 8; ++n)
        for (const auto& lam : partitions_of(n)) CHECK(path_count(lam, n) == standard_tableaux_count(lam));
}

TEST_CASE("endpoint distribution is a probability table") {
    ProcessSpec spec;
    spec.T = 6;
    spec.potential = Potential::constant_rate(Rat(3, 2));
    auto table = endpoint_distribution(spec);
    REQUIRE(table.exact);
    Rat total(0);
    double ptotal = 0;
    for (const auto& e : table.entries) {
        total += e.weight;
        ptotal += e.probability;
        CHECK(e.probability == doctest::Approx(transition_probability(e.lam, spec)).epsilon(1e-12));
        CHECK(std::exp(e.log_weight) == doctest::Approx(to_double(e.weight)).epsilon(1e-12));
    }
    CHECK(total == table.Z_exact);
    CHECK(ptotal == doctest::Approx(1.0).epsilon(1e-12));
    // canonical order, parity-reachable endpoints only
    for (const auto& e : table.entries) CHECK((spec.T - e.lam.weight()) % 2 == 0);
}

TEST_CASE("ensemble rewrite agrees with the direct sum") {
    for (const Rat& r : {Rat(1), Rat(2), Rat(1, 2)}) {
        Potential U = Potential::constant_rate(r);
        for (int T = 1; T <= 6; ++T) {
            auto chk = orthogonal_ensemble_check(T, U);
            REQUIRE(chk.exact);
            CHECK(chk.lhs_exact == chk.rhs_exact);
        }
    }
    for (int T = 1; T <= 4; ++T) {
        auto chk = orthogonal_ensemble_check(T, Potential::gauss(Rat(1, 3)));
        CHECK(!chk.exact);
        CHECK(chk.diff < 1e-9);
    }
}

TEST_CASE("equilibrium partition sum approaches e at unit argument") {
    // sum_lam s_lam(t_inf)^2 z^{|lam|} = e^z
    double tail = 0;
    double v = equilibrium_partition_sum(Potential::constant_rate(Rat(1)), 2.0, 1.0, 12, &tail);
    CHECK(std::abs(v - std::exp(1.0)) < 1e-6);
    CHECK(tail < 1e-6);
}

TEST_CASE("single-charge gas routes cross-check") {
    for (int n : {1, 2}) {
        auto routes = coulomb_gas_q1(n, Potential::constant_rate(Rat(1)), 14);
        CHECK(routes.partition_route == doctest::Approx(routes.h_route).epsilon(1e-9));
    }
}

TEST_CASE("predicted limit shape at the pinned reference point") {
    auto pred = predict_limit_shape(1.0, 10000);
    CHECK(pred.R == doctest::Approx(141.421356).epsilon(1e-4));
    CHECK(pred.area == doctest::Approx(5070.71).epsilon(1e-3));
    CHECK(pred.diag_k == doctest::Approx(45.016).epsilon(1e-3));
    CHECK(pred.backward_m == doctest::Approx(2464.64).epsilon(1e-3));
    CHECK(pred.sigma(-1.0) == 1.0);
    CHECK(pred.sigma(2 * pred.R + 1) == 0.0);
    CHECK(pred.sigma(pred.R) == doctest::Approx(0.5).epsilon(1e-12));
    auto coup = predict_limit_shape(1.0, 10000, 1.0);
    CHECK(coup.R == doctest::Approx(11.892).epsilon(1e-3));
}

TEST_CASE("predicted density satisfies the equilibrium condition") {
    CHECK(verify_equilibrium_density(1.0, 10000) < 1e-6);
}

TEST_CASE("single-row expansion at the reference point") {
    CHECK(single_row_mode(1.0, 10000) == doctest::Approx(100.01).epsilon(1e-3));
}

TEST_CASE("stirling estimate matches the vacuum return weight") {
    double est = stirling_weight_estimate(Partition(), 200, Potential::constant_rate(Rat(1)));
    // log (199!!) = log 200! - 100 log 2 - log 100!
    double exact = std::lgamma(201.0) - 100 * std::log(2.0) - std::lgamma(101.0);
    CHECK(est == doctest::Approx(exact).epsilon(1e-3));
}

TEST_CASE("mode search finds the exact argmax for short walks") {
    for (int T = 2; T <= 10; T += 2) {
        ProcessSpec spec;
        spec.T = T;
        auto table = endpoint_distribution(spec);
        const EndpointEntry* best = nullptr;
        for (const auto& e : table.entries)
            if (!best || e.probability > best->probability) best = &e;
        auto found = mode_search(spec, 6);
        CHECK(found.log_weight == doctest::Approx(best->log_weight).epsilon(1e-9));
    }
}

TEST_CASE("importance sampler is unbiased within noise") {
    ProcessSpec spec;
    spec.T = 8;
    spec.seed = 5;
    auto table = endpoint_distribution(spec);
    auto sum = sample_endpoint(spec, 20000);
    CHECK(sum.n == 20000);
    REQUIRE(sum.z_se > 0);
    CHECK(std::abs(sum.z_hat - table.Z) < 4 * sum.z_se);
    long total = 0;
    for (const auto& [lam, c] : sum.counts) total += c;
    CHECK(total == sum.n);
    // determinism with a fixed seed
    auto again = sample_endpoint(spec, 20000);
    CHECK(again.z_hat == sum.z_hat);
    CHECK(again.counts == sum.counts);
}
