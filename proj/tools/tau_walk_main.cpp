// tau-walk: exact weights, limit shapes, samplers and determinantal checks
// for the random-turn walk toolkit.
#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tauwalk/glinf.hpp"
#include "tauwalk/io.hpp"
#include "tauwalk/layering.hpp"
#include "tauwalk/numeric.hpp"
#include "tauwalk/partition.hpp"
#include "tauwalk/potential.hpp"
#include "tauwalk/pvquad.hpp"
#include "tauwalk/schur.hpp"
#include "tauwalk/vicious.hpp"
#include "tauwalk/walk.hpp"

namespace {

using tw::Json;

std::vector<long> parse_sites(const std::string& text) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stol(item));
    }
    return out;
}

// Shared potential flags; at most one of the three selectors.
struct PotentialFlags {
    std::string rate;
    std::string gauss;
    std::string file;

    void attach(CLI::App* cmd, bool with_rate = true) {
        CLI::Option* r = nullptr;
        if (with_rate) r = cmd->add_option("--rate", rate, "constant hop rate r (rational, e.g. 3/2)");
        auto* g = cmd->add_option("--gauss", gauss, "gaussian potential coupling c (rational)");
        auto* f = cmd->add_option("--potential", file, "potential description file (JSON)");
        g->excludes(f);
        if (r) {
            r->excludes(g);
            r->excludes(f);
        }
    }

    tw::Potential resolve() const {
        if (!file.empty()) return tw::load_potential(file);
        if (!gauss.empty()) return tw::Potential::gauss(tw::parse_rat(gauss));
        if (!rate.empty()) return tw::Potential::constant_rate(tw::parse_rat(rate));
        return tw::Potential::constant_rate(tw::Rat(1));
    }
};

void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty())
        std::cout << payload << "\n";
    else
        tw::atomic_write(out_path, payload);
}

Json spec_json(const char* subcommand, const tw::ProcessSpec& spec) {
    Json j;
    j["subcommand"] = subcommand;
    j["steps"] = spec.T;
    j["potential"] = tw::potential_json(spec.potential);
    j["qsq"] = spec.qsq;
    j["seed"] = spec.seed;
    return j;
}

int run_exact(const tw::ProcessSpec& spec, int cap, const std::string& out,
              const std::string& format) {
    tw::EndpointTable tab = tw::endpoint_distribution(spec, cap);
    if (format == "csv") {
        std::ostringstream csv;
        csv << "partition,log_weight,probability\n";
        for (const auto& e : tab.entries)
            csv << '"' << e.lam.str() << "\"," << tw::format_sig9(e.log_weight) << ','
                << tw::format_sig9(e.probability) << '\n';
        emit(out, csv.str());
        return 0;
    }
    Json j;
    j["spec"] = spec_json("exact", spec);
    j["spec"]["cap"] = cap;
    if (tab.exact)
        j["Z0"] = tw::rat_string(tab.Z_exact);
    else
        j["Z0"] = tab.Z;
    Json entries = Json::array();
    for (const auto& e : tab.entries) {
        Json row;
        row["partition"] = tw::partition_json(e.lam);
        row["log_weight"] = e.log_weight;
        row["probability"] = e.probability;
        if (tab.exact) row["weight"] = tw::rat_string(e.weight);
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    emit(out, j.dump(2));
    return 0;
}

int run_sample(const tw::ProcessSpec& spec, long samples, const std::string& out,
               const std::string& format) {
    tw::SampleSummary s = tw::sample_endpoint(spec, samples);
    if (format == "csv") {
        std::ostringstream csv;
        csv << "partition,count,weight_sum\n";
        for (const auto& [lam, cnt] : s.counts)
            csv << '"' << lam.str() << "\"," << cnt << ','
                << tw::format_sig9(s.weight_sums.at(lam)) << '\n';
        emit(out, csv.str());
        return 0;
    }
    Json j;
    j["spec"] = spec_json("sample", spec);
    j["spec"]["samples"] = samples;
    j["n"] = s.n;
    j["z_hat"] = s.z_hat;
    j["z_se"] = s.z_se;
    Json entries = Json::array();
    for (const auto& [lam, cnt] : s.counts) {
        Json row;
        row["partition"] = tw::partition_json(lam);
        row["count"] = cnt;
        row["weight_sum"] = s.weight_sums.at(lam);
        entries.push_back(std::move(row));
    }
    j["endpoints"] = std::move(entries);
    emit(out, j.dump(2));
    return 0;
}

int run_shape(const tw::ProcessSpec& spec, double r, bool do_mode, int restarts,
              const std::string& out) {
    tw::LimitShapePrediction pred = tw::predict_limit_shape(r, spec.T, spec.qsq);

    std::optional<tw::ModeResult> mode;
    if (do_mode) mode = tw::mode_search(spec, restarts);

    long hmax = static_cast<long>(std::ceil(2 * pred.R)) + 2;
    int level = std::max(1L, std::lround(pred.length));
    // Rolling occupancy window for the staircase column.
    int w = std::max<long>(3, std::lround(std::sqrt(static_cast<double>(spec.T)) / 2) | 1);

    std::ostringstream csv;
    csv << "h,sigma_predicted" << (do_mode ? ",sigma_mode" : "") << "\n";
    for (long h = 0; h <= hmax; ++h) {
        csv << h << ',' << tw::format_sig9(pred.sigma(static_cast<double>(h)));
        if (do_mode) {
            double occ = 0;
            for (long s = h - w / 2; s <= h + w / 2; ++s)
                occ += tw::site_occupied(mode->mode, level, s) ? 1.0 : 0.0;
            csv << ',' << tw::format_sig9(occ / w);
        }
        csv << '\n';
    }
    emit(out, csv.str());

    Json j;
    j["predicted"] = {{"R", pred.R},
                      {"length", pred.length},
                      {"area", pred.area},
                      {"diag_k", pred.diag_k},
                      {"backward_m", pred.backward_m}};
    if (mode) {
        j["mode"] = {{"partition", tw::partition_json(mode->mode)},
                     {"log_weight", mode->log_weight},
                     {"length", mode->length},
                     {"area", mode->area},
                     {"diag_k", mode->diag_k}};
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_schur(const std::string& partition, const std::string& skew, const std::string& point,
              const std::string& a, double qval, const std::string& xs, int window,
              const std::string& out) {
    tw::Partition lam = tw::parse_partition(partition);
    Json j;
    j["partition"] = tw::partition_json(lam);
    if (!skew.empty()) j["skew"] = tw::partition_json(tw::parse_partition(skew));
    j["point"] = point;

    int K = static_cast<int>(lam.weight()) + 1;
    auto times = [&]() -> tw::TimeVector {
        if (point == "tinfty") return tw::t_infinity_vector(K);
        if (point == "ta1") return tw::t_a1_vector(tw::parse_rat(a), K);
        if (point == "powersums") {
            std::vector<tw::Rat> x;
            std::stringstream ss(xs);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) x.push_back(tw::parse_rat(item));
            return tw::powersums(x, K);
        }
        throw std::invalid_argument("point must be tinfty, ta1, powersums, tinfq or taq");
    };

    if (point == "tinfq") {
        j["value"] = tw::schur_tinfq(lam, qval, window);
    } else if (point == "taq") {
        j["value"] = tw::schur_taq(lam, tw::to_double(tw::parse_rat(a)), qval);
    } else {
        tw::TimeVector t = times();
        tw::Rat v = skew.empty() ? tw::schur(lam, t)
                                 : tw::skew_schur(lam, tw::parse_partition(skew), t);
        j["value"] = tw::rat_string(v);
    }
    emit(out, j.dump(2));
    return 0;
}

int run_gv(const std::string& top, const std::string& bottom, const std::string& out) {
    std::vector<long> a = parse_sites(top), b = parse_sites(bottom);
    tw::Int det = tw::binomial_determinant(a, b);
    Json j;
    j["top"] = a;
    j["bottom"] = b;
    j["determinant"] = det.str();
    try {
        tw::Int count = tw::nonintersecting_path_count(a, b);
        j["path_count"] = count.str();
        j["agree"] = det == count;
    } catch (const tw::BruteForceBoundExceeded&) {
        j["path_count"] = nullptr;
    }
    emit(out, j.dump(2));
    return 0;
}

int run_vicious(int walkers, int steps, const std::string& start, const std::string& end,
                const PotentialFlags& pot, long ring, bool allow_stay, long window,
                const std::string& out) {
    tw::ChainSpec spec;
    spec.levels = {pot.resolve()};
    spec.T = steps;
    spec.walkers = walkers;
    spec.window = window;
    if (ring >= 0) {
        spec.geometry = tw::Geometry::ring;
        spec.ring_n = ring;
    }
    spec.allow_stay = allow_stay;
    std::vector<long> from = parse_sites(start), to = parse_sites(end);

    Json j;
    j["spec"] = {{"walkers", walkers},
                 {"steps", steps},
                 {"start", from},
                 {"end", to},
                 {"potential", tw::potential_json(spec.levels.front())},
                 {"geometry", ring >= 0 ? "ring" : "half_line"},
                 {"allow_stay", allow_stay}};
    if (ring >= 0) j["spec"]["ring_n"] = ring;

    j["weight"] = tw::chain_weight(to, from, spec);
    if (spec.levels.front().rational_rates())
        j["weight_exact"] = tw::rat_string(tw::chain_weight_exact(to, from, spec));
    try {
        tw::SignedChainWeight sw = tw::chain_weight_signed(to, from, spec);
        j["W_plus"] = sw.w_plus;
        j["W_minus"] = sw.w_minus;
    } catch (const tw::BruteForceBoundExceeded&) {
        j["W_plus"] = nullptr;
        j["W_minus"] = nullptr;
    }
    emit(out, j.dump(2));
    return 0;
}

int run_layering(const std::string& word_text, const std::string& start, long cap, bool strict,
                 const PotentialFlags& pot, const std::string& out) {
    tw::Potential U = pot.resolve();
    tw::DarbouxWord word;
    std::stringstream ss(word_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("word letters look like sigma:x, e.g. 1:0.3");
        tw::StripOperator op;
        op.sigma = std::stoi(item.substr(0, colon));
        op.x = std::stod(item.substr(colon + 1));
        op.U = U;
        word.push_back(op);
    }
    tw::ChainResult res = tw::chain_propagate(tw::parse_partition(start), word, cap, strict);

    Json j;
    j["spec"] = {{"word", word_text},
                 {"start", tw::partition_json(tw::parse_partition(start))},
                 {"cap", cap},
                 {"potential", tw::potential_json(U)}};
    j["spilled"] = res.spilled;
    Json states = Json::array();
    for (const auto& [key, weight] : res.states.entries) {
        Json row;
        row["partition"] = tw::partition_json(key.p);
        row["weight"] = weight;
        states.push_back(std::move(row));
    }
    j["states"] = std::move(states);
    emit(out, j.dump(2));
    return 0;
}

struct CheckLine {
    std::string name;
    double value;
    double tol;
    bool ok() const { return value <= tol; }
};

int run_check(const std::string& suite, const std::string& out) {
    std::vector<CheckLine> lines;
    auto want = [&](const std::string& s) { return suite == "all" || suite == s; };

    if (want("appendix")) {
        for (double u : {0.5, 1.0, 1.5, 2.0}) {
            double err = std::fabs(tw::pv_arcsine_integral(u) - std::log(2 * u));
            lines.push_back({"appendix.pv_integral.u=" + tw::format_sig9(u), err, 1e-6});
        }
        lines.push_back({"appendix.equilibrium_density.r=1",
                         tw::verify_equilibrium_density(1.0, 10000), 1e-6});
    }
    if (want("closed-form")) {
        auto a = tw::closed_form_product({0.1, 0.2}, 40);
        lines.push_back({"closed_form.series_product", a.diff, 1e-9});
        auto b = tw::closed_form_rectangle(2, 2, {tw::Rat(1, 3), tw::Rat(1, 5)});
        lines.push_back({"closed_form.rectangle_det", b.equal ? 0.0 : 1.0, 0.5});
        auto c = tw::plane_partition_check(2, 1, 0.3, 20);
        lines.push_back({"closed_form.plane_partitions", c.coeffs_match ? c.diff : 1.0, 1e-9});
    }
    if (want("ensemble")) {
        for (int T = 1; T <= 5; ++T) {
            auto chk = tw::orthogonal_ensemble_check(T, tw::Potential::constant_rate(tw::Rat(1)));
            lines.push_back({"ensemble.T=" + std::to_string(T),
                             chk.exact ? (chk.lhs_exact == chk.rhs_exact ? 0.0 : 1.0) : chk.diff,
                             1e-9});
        }
    }
    if (want("commutator")) {
        const tw::Potential pots[] = {tw::Potential::constant_rate(tw::Rat(1)),
                                      tw::Potential::constant_rate(tw::Rat(3, 2)),
                                      tw::Potential::gauss(tw::Rat(1, 2))};
        const char* names[] = {"unit", "rate=3/2", "gauss"};
        for (int i = 0; i < 3; ++i)
            lines.push_back({std::string("commutator.") + names[i],
                             tw::commutator_check(pots[i], -3, 3, 6), 0.0});
    }
    if (lines.empty()) throw std::invalid_argument("unknown suite: " + suite);

    std::ostringstream report;
    bool all_ok = true;
    for (const auto& l : lines) {
        all_ok = all_ok && l.ok();
        report << (l.ok() ? "ok   " : "FAIL ") << l.name << "  residual=" << tw::format_sig9(l.value)
               << " tol=" << tw::format_sig9(l.tol) << "\n";
    }
    if (!out.empty())
        tw::atomic_write(out, report.str());
    else
        std::cout << report.str();
    return all_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random-turn walk and vicious-walker toolkit"};
    app.require_subcommand(1);

    // exact
    auto* exact = app.add_subcommand("exact", "exact endpoint distribution after T steps");
    int ex_steps = 0, ex_cap = tw::kExactSumBound;
    double ex_qsq = 0;
    PotentialFlags ex_pot;
    std::string ex_out, ex_format = "json";
    exact->add_option("--steps", ex_steps, "number of ticks")->required()->check(CLI::NonNegativeNumber);
    ex_pot.attach(exact);
    exact->add_option("--qsq", ex_qsq, "Coulomb charge squared");
    exact->add_option("--cap", ex_cap, "endpoint weight bound for the table");
    exact->add_option("--out", ex_out, "output path (default stdout)");
    exact->add_option("--format", ex_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // sample
    auto* sample = app.add_subcommand("sample", "sequential importance sampling of endpoints");
    int sa_steps = 0;
    long sa_samples = 10000;
    std::uint64_t sa_seed = 1;
    PotentialFlags sa_pot;
    std::string sa_out, sa_format = "json";
    sample->add_option("--steps", sa_steps, "number of ticks")->required()->check(CLI::NonNegativeNumber);
    sa_pot.attach(sample);
    sample->add_option("--samples", sa_samples, "number of sampled paths");
    sample->add_option("--seed", sa_seed, "base RNG seed");
    sample->add_option("--out", sa_out, "output path (default stdout)");
    sample->add_option("--format", sa_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // shape
    auto* shape = app.add_subcommand("shape", "limit-shape prediction and mode search");
    int sh_steps = 0, sh_restarts = 4;
    double sh_qsq = 0;
    std::string sh_rate = "1", sh_out;
    bool sh_mode = false;
    shape->add_option("--steps", sh_steps, "number of ticks")->required()->check(CLI::NonNegativeNumber);
    shape->add_option("--rate", sh_rate, "constant hop rate r");
    shape->add_option("--qsq", sh_qsq, "Coulomb charge squared");
    shape->add_flag("--mode-search", sh_mode, "hill-climb the most likely endpoint");
    shape->add_option("--restarts", sh_restarts, "perturbed restarts for the search");
    shape->add_option("--out", sh_out, "CSV output path (default stdout)");

    // schur
    auto* schur_cmd = app.add_subcommand("schur", "Schur values at special points");
    std::string sc_partition, sc_skew, sc_point = "tinfty", sc_a = "1", sc_x, sc_out;
    double sc_q = 0.5;
    int sc_window = -1;
    schur_cmd->add_option("--partition", sc_partition, "outer partition, e.g. 3,1")->required();
    schur_cmd->add_option("--skew", sc_skew, "inner partition for a skew value");
    schur_cmd->add_option("--point", sc_point, "tinfty|ta1|powersums|tinfq|taq");
    schur_cmd->add_option("--a", sc_a, "parameter a (rational)");
    schur_cmd->add_option("--q", sc_q, "parameter q");
    schur_cmd->add_option("--x", sc_x, "comma-separated rational variables");
    schur_cmd->add_option("--window", sc_window, "coordinate window for q-points");
    schur_cmd->add_option("--out", sc_out, "output path (default stdout)");

    // gv
    auto* gv = app.add_subcommand("gv", "binomial determinant vs path enumeration");
    std::string gv_top, gv_bottom, gv_out;
    gv->add_option("--top", gv_top, "row heights a_1,a_2,...")->required();
    gv->add_option("--bottom", gv_bottom, "column heights b_1,b_2,...")->required();
    gv->add_option("--out", gv_out, "output path (default stdout)");

    // vicious
    auto* vic = app.add_subcommand("vicious", "nonintersecting walker chain weight");
    int vi_walkers = 1, vi_steps = 0;
    long vi_ring = -1, vi_window = -1;
    bool vi_stay = false;
    std::string vi_start, vi_end, vi_out;
    PotentialFlags vi_pot;
    vic->add_option("--walkers", vi_walkers, "number of walkers")->required();
    vic->add_option("--steps", vi_steps, "number of ticks")->required()->check(CLI::NonNegativeNumber);
    vic->add_option("--start", vi_start, "starting sites h1,h2,...")->required();
    vic->add_option("--end", vi_end, "ending sites")->required();
    vi_pot.attach(vic);
    vic->add_option("--ring", vi_ring, "ring geometry on sites 0..n");
    vic->add_flag("--allow-stay", vi_stay, "let walkers stand still");
    vic->add_option("--window", vi_window, "top site on the half line");
    vic->add_option("--out", vi_out, "output path (default stdout)");

    // layering
    auto* lay = app.add_subcommand("layering", "strip-operator chain propagation");
    std::string la_word, la_start, la_out;
    long la_cap = 40;
    bool la_strict = false;
    PotentialFlags la_pot;
    lay->add_option("--word", la_word, "letters sigma:x, comma-separated")->required();
    lay->add_option("--start", la_start, "starting partition, e.g. 2,1 (empty = vacuum)");
    lay->add_option("--cap", la_cap, "weight cap during growth");
    lay->add_flag("--strict", la_strict, "fail when mass escapes the cap");
    la_pot.attach(lay);
    lay->add_option("--out", la_out, "output path (default stdout)");

    // check
    auto* chk = app.add_subcommand("check", "built-in verification batteries");
    std::string ck_suite = "all", ck_out;
    chk->add_option("--suite", ck_suite, "appendix|closed-form|ensemble|commutator|all");
    chk->add_option("--out", ck_out, "output path (default stdout)");

    auto started = std::chrono::steady_clock::now();
    int rc = 0;
    try {
        app.parse(argc, argv);

        if (exact->parsed()) {
            tw::ProcessSpec spec{ex_pot.resolve(), ex_steps, ex_qsq, 0, 1};
            rc = run_exact(spec, ex_cap, ex_out, ex_format);
        } else if (sample->parsed()) {
            tw::ProcessSpec spec{sa_pot.resolve(), sa_steps, 0, 0, sa_seed};
            rc = run_sample(spec, sa_samples, sa_out, sa_format);
        } else if (shape->parsed()) {
            tw::ProcessSpec spec{tw::Potential::constant_rate(tw::parse_rat(sh_rate)), sh_steps,
                                 sh_qsq, 0, 1};
            rc = run_shape(spec, tw::to_double(tw::parse_rat(sh_rate)), sh_mode, sh_restarts,
                           sh_out);
        } else if (schur_cmd->parsed()) {
            rc = run_schur(sc_partition, sc_skew, sc_point, sc_a, sc_q, sc_x, sc_window, sc_out);
        } else if (gv->parsed()) {
            rc = run_gv(gv_top, gv_bottom, gv_out);
        } else if (vic->parsed()) {
            rc = run_vicious(vi_walkers, vi_steps, vi_start, vi_end, vi_pot, vi_ring, vi_stay,
                             vi_window, vi_out);
        } else if (lay->parsed()) {
            rc = run_layering(la_word, la_start, la_cap, la_strict, la_pot, la_out);
        } else if (chk->parsed()) {
            rc = run_check(ck_suite, ck_out);
        }
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const tw::BoundExceeded& e) {
        std::cerr << "bound exceeded: " << e.what() << "\n";
        return 3;
    } catch (const tw::TruncationOverflow& e) {
        std::cerr << "truncation overflow: " << e.what() << "\n";
        return 3;
    } catch (const tw::BruteForceBoundExceeded& e) {
        std::cerr << "brute-force bound: " << e.what() << "\n";
        return 3;
    } catch (const tw::ConvergenceTooSlow& e) {
        std::cerr << "convergence too slow: " << e.what() << "\n";
        return 3;
    } catch (const tw::CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << " (spilled " << e.spilled_mass << ")\n";
        return 3;
    } catch (const tw::LengthMismatch& e) {
        std::cerr << "length mismatch: " << e.what() << "\n";
        return 2;
    } catch (const tw::WindowTooSmall& e) {
        std::cerr << "window too small: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    std::cerr << "wall_ms=" << elapsed << "\n";
    return rc;
}
