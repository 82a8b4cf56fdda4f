#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "tauwalk/layering.hpp"
#include "tauwalk/schur.hpp"
#include "tauwalk/walk.hpp"

using namespace tw;

namespace {

double state_coeff(const ChainResult& res, const Partition& lam) {
    auto it = res.states.entries.find(StateKey{lam, 0});
    return it == res.states.entries.end() ? 0.0 : it->second;
}

}  // namespace

TEST_CASE("single-letter transition weights") {
    StripOperator add_v{1, 0.5, Potential::constant_rate(Rat(1))};
    CHECK(strip_transition_weight(parse_partition("1,1"), Partition(), add_v) ==
          doctest::Approx(0.25));
    CHECK(strip_transition_weight(parse_partition("2"), Partition(), add_v) == 0.0);
    CHECK(strip_transition_weight(parse_partition("1"), parse_partition("1"), add_v) == 1.0);

    StripOperator add_h{3, 0.5, Potential::constant_rate(Rat(1))};
    CHECK(strip_transition_weight(parse_partition("2"), Partition(), add_h) == doctest::Approx(0.25));
    CHECK(strip_transition_weight(parse_partition("1,1"), Partition(), add_h) == 0.0);

    StripOperator rem_v{2, 0.3, Potential::constant_rate(Rat(1))};
    CHECK(strip_transition_weight(parse_partition("2,1"), parse_partition("2,2"), rem_v) ==
          doctest::Approx(0.3));
    CHECK(strip_transition_weight(parse_partition("2,2"), parse_partition("2,1"), rem_v) == 0.0);

    // energy factor: e^{U_from - U_to} at level 0
    Potential well = Potential::gauss(Rat(1, 2));
    StripOperator add_g{1, 1.0, well};
    double expect = std::exp(potential_energy(Partition(), 0, well) -
                             potential_energy(parse_partition("1"), 0, well));
    CHECK(strip_transition_weight(parse_partition("1"), Partition(), add_g) ==
          doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("admissibility matches the strip predicate") {
    for (const auto& from : partitions_up_to(4))
        for (const auto& to : partitions_up_to(4)) {
            CHECK(strip_admissible(to, from, 1) == is_strip(to, from, StripKind::vertical));
            CHECK(strip_admissible(to, from, 3) == is_strip(to, from, StripKind::horizontal));
            CHECK(strip_admissible(to, from, 2) == is_strip(from, to, StripKind::vertical));
            CHECK(strip_admissible(to, from, 4) == is_strip(from, to, StripKind::horizontal));
        }
    CHECK_THROWS_AS(strip_transition_weight(Partition(), Partition(), StripOperator{5, 1.0, {}}),
                    std::invalid_argument);
}

TEST_CASE("one-letter chains lay down columns") {
    DarbouxWord word = {StripOperator{1, 0.5, Potential::constant_rate(Rat(1))}};
    auto res = chain_propagate(Partition(), word, 30);
    // states (1^k) with weight x^k
    CHECK(state_coeff(res, Partition()) == doctest::Approx(1.0));
    CHECK(state_coeff(res, parse_partition("1,1,1")) == doctest::Approx(0.125));
    CHECK(state_coeff(res, parse_partition("2")) == 0.0);
    for (const auto& [key, w] : res.states.entries) {
        CHECK(key.p.part(1) <= 1);
        CHECK(w == doctest::Approx(std::pow(0.5, key.p.weight())).epsilon(1e-12));
    }
}

TEST_CASE("grow-then-shrink returns to the vacuum with the squared series") {
    double x = 0.4;
    DarbouxWord word = {StripOperator{1, x, Potential::constant_rate(Rat(1))},
                        StripOperator{2, x, Potential::constant_rate(Rat(1))}};
    auto res = chain_propagate(Partition(), word, 60);
    // vacuum coefficient sum_k x^{2k} = 1/(1-x^2), truncated high enough
    CHECK(state_coeff(res, Partition()) == doctest::Approx(1.0 / (1 - x * x)).epsilon(1e-9));
}

TEST_CASE("empty word and removal-only words") {
    auto res = chain_propagate(parse_partition("2,1"), {}, -1);
    REQUIRE(res.states.entries.size() == 1);
    CHECK(state_coeff(res, parse_partition("2,1")) == 1.0);
    CHECK(res.spilled == 0.0);

    DarbouxWord down = {StripOperator{4, 1.0, Potential::constant_rate(Rat(1))}};
    auto res2 = chain_propagate(parse_partition("2,2"), down, -1);
    // removable horizontal strips of (2,2): itself, (2,1), (2)
    CHECK(state_coeff(res2, parse_partition("2,2")) == 1.0);
    CHECK(state_coeff(res2, parse_partition("2,1")) == 1.0);
    CHECK(state_coeff(res2, parse_partition("2")) == 1.0);
    CHECK(state_coeff(res2, parse_partition("1,1")) == 0.0);

    DarbouxWord up = {StripOperator{1, 1.0, Potential::constant_rate(Rat(1))}};
    CHECK_THROWS_AS(chain_propagate(Partition(), up, -1), std::invalid_argument);
}

TEST_CASE("strict mode raises when mass hits the cap") {
    DarbouxWord word = {StripOperator{1, 0.9, Potential::constant_rate(Rat(1))}};
    CHECK_THROWS_AS(chain_propagate(Partition(), word, 3, true), CapExceeded);
    auto lax = chain_propagate(Partition(), word, 3, false);
    CHECK(lax.spilled > 0);
    try {
        chain_propagate(Partition(), word, 3, true);
    } catch (const CapExceeded& e) {
        CHECK(e.spilled_mass == doctest::Approx(lax.spilled));
    }
}

TEST_CASE("growth weights on pinned examples") {
    std::vector<double> xs = {0.3, 0.3};
    Potential flat = Potential::constant_rate(Rat(1));
    CHECK(growth_weight(parse_partition("2,1"), xs, flat) ==
          doctest::Approx(2 * std::pow(0.3, 3)).epsilon(1e-12));
    CHECK(growth_weight(parse_partition("1,1,1"), xs, flat) == 0.0);
    CHECK(growth_weight(Partition(), xs, flat) == 1.0);
}

TEST_CASE("horizontal-strip chains accumulate schur coefficients") {
    // T letters with marks x_1..x_T starting from the vacuum: the coefficient
    // of lambda is s_lambda(x_1..x_T).
    std::vector<double> xs = {0.2, 0.35, 0.15};
    DarbouxWord word;
    for (double x : xs) word.push_back(StripOperator{3, x, Potential::constant_rate(Rat(1))});
    auto res = chain_propagate(Partition(), word, 45);
    for (const auto& lam : partitions_up_to(8)) {
        if (lam.length() > 3) continue;
        CHECK(state_coeff(res, lam) == doctest::Approx(schur_eval(lam, xs)).epsilon(1e-9));
    }
}

TEST_CASE("vertical growth is horizontal growth of the conjugate") {
    std::vector<double> xs = {0.25, 0.4};
    DarbouxWord vword, hword;
    for (double x : xs) {
        vword.push_back(StripOperator{1, x, Potential::constant_rate(Rat(1))});
        hword.push_back(StripOperator{3, x, Potential::constant_rate(Rat(1))});
    }
    auto vres = chain_propagate(Partition(), vword, 40);
    auto hres = chain_propagate(Partition(), hword, 40);
    for (const auto& lam : partitions_up_to(7))
        CHECK(state_coeff(vres, lam) == doctest::Approx(state_coeff(hres, conjugate(lam))).epsilon(1e-10));
}

TEST_CASE("chain coefficients stay non-negative for non-negative marks") {
    DarbouxWord word = {StripOperator{3, 0.5, Potential::constant_rate(Rat(1))},
                        StripOperator{1, 0.25, Potential::constant_rate(Rat(1))},
                        StripOperator{4, 0.7, Potential::constant_rate(Rat(1))},
                        StripOperator{3, 0.3, Potential::constant_rate(Rat(1))}};
    auto res = chain_propagate(Partition(), word, 25);
    for (const auto& [key, w] : res.states.entries) CHECK(w >= 0.0);
}

TEST_CASE("constant-rate growth specializes the exact rational value") {
    std::vector<Rat> xr = {Rat(1, 4), Rat(1, 4)};
    std::vector<double> xd = {0.25, 0.25};
    for (const Rat& r : {Rat(1), Rat(3, 2)}) {
        Potential U = Potential::constant_rate(r);
        for (const auto& lam : partitions_up_to(6)) {
            if (lam.length() > 2) continue;
            double expect = to_double(rat_pow(r, lam.weight()) * growth_weight_exact(lam, xr));
            CHECK(growth_weight(lam, xd, U) == doctest::Approx(expect).epsilon(1e-12));
            // the energy factor alone is the boltzmann weight
            CHECK(std::exp(-potential_energy(lam, 0, U)) ==
                  doctest::Approx(to_double(boltzmann_exact(lam, 0, U))).epsilon(1e-12));
        }
    }
}

TEST_CASE("float schur evaluation tracks the exact one") {
    std::vector<Rat> xr = {Rat(3, 10), Rat(1, 5), Rat(1, 2)};
    std::vector<double> xd = {0.3, 0.2, 0.5};
    for (const auto& lam : partitions_up_to(7)) {
        Rat exact = schur(lam, powersums(xr, std::max<int>(1, static_cast<int>(lam.weight()))));
        CHECK(schur_eval(lam, xd) == doctest::Approx(to_double(exact)).epsilon(1e-12));
    }
}

TEST_CASE("series against the pair product") {
    auto chk = closed_form_product({0.1, 0.2}, 40);
    double expect = 1.0 / (0.9 * 0.8 * 0.98);
    CHECK(chk.closed == doctest::Approx(expect).epsilon(1e-12));
    CHECK(chk.series == doctest::Approx(expect).epsilon(1e-6));
    CHECK(chk.diff < 1e-6);

    auto single = closed_form_product({0.5}, 60);
    CHECK(single.closed == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(single.series == doctest::Approx(2.0).epsilon(1e-7));

    CHECK_THROWS_AS(closed_form_product({0.95}, 10), ConvergenceTooSlow);
    CHECK_THROWS_AS(closed_form_product({1.5}, 10), std::invalid_argument);
}

TEST_CASE("rectangle sums against the determinant ratio") {
    auto chk = closed_form_rectangle(2, 2, {Rat(1, 3), Rat(1, 5)});
    CHECK(chk.equal);
    CHECK(chk.series == chk.closed);
    // T=1, m=1: 1 + x
    auto tiny = closed_form_rectangle(1, 1, {Rat(2, 7)});
    CHECK(tiny.equal);
    CHECK(tiny.series == Rat(9, 7));
    auto wide = closed_form_rectangle(2, 3, {Rat(1, 2), Rat(1, 7)});
    CHECK(wide.equal);
}

TEST_CASE("symmetric plane partitions three ways") {
    auto tiny = plane_partition_check(1, 1, 0.0, 10);
    CHECK(tiny.coeffs_match);
    REQUIRE(tiny.enum_coeffs.size() == 2);
    CHECK(tiny.enum_coeffs[0] == Int(1));
    CHECK(tiny.enum_coeffs[1] == Int(1));

    auto mid = plane_partition_check(2, 1, 0.3, 20);
    CHECK(mid.coeffs_match);
    CHECK(mid.diff < 1e-9);
    // (1+q)(1+q^3) spelled out
    REQUIRE(mid.enum_coeffs.size() >= 5);
    CHECK(mid.enum_coeffs[0] == Int(1));
    CHECK(mid.enum_coeffs[1] == Int(1));
    CHECK(mid.enum_coeffs[2] == Int(0));
    CHECK(mid.enum_coeffs[3] == Int(1));
    CHECK(mid.enum_coeffs[4] == Int(1));

    CHECK(plane_partition_check(2, 2, 0.2, 24).coeffs_match);
    CHECK(plane_partition_check(3, 2, 0.1, 30).coeffs_match);
    CHECK(plane_partition_check(3, 3, -0.2, 30).coeffs_match);

    // deep freeze: only the empty configuration survives
    auto frozen = plane_partition_check(2, 2, -30.0, 16);
    CHECK(frozen.lhs == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(plane_partition_check(4, 2, 0.1, 10), BruteForceBoundExceeded);
}

TEST_CASE("growth weights match the walk boltzmann factors under a gaussian well") {
    // level-T energies: growth_weight(lam, xs, U) = e^{-U_lam(level T)} s_lam(xs)
    Potential well = Potential::gauss(Rat(1, 3));
    std::vector<double> xs = {0.3, 0.2};
    for (const auto& lam : partitions_up_to(5)) {
        if (lam.length() > 2) continue;
        double energy = potential_energy(lam, 2, well);
        CHECK(growth_weight(lam, xs, well) ==
              doctest::Approx(std::exp(-energy) * schur_eval(lam, xs)).epsilon(1e-12));
    }
}
