// Copyright 2026 The nestlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs the acceptance checks and prints one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nestlab/analytics.hpp"
#include "nestlab/cli.hpp"
#include "nestlab/decoder.hpp"
#include "nestlab/error.hpp"
#include "nestlab/montecarlo.hpp"
#include "nestlab/nest.hpp"

namespace {

using namespace nestlab;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string data(const std::string &name) {
    return std::string(NESTLAB_TEST_DATA_DIR) + "/" + name;
}

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli_run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::size_t count_stick_lines(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        n += line.rfind(" [(", 0) == 0 ? 1 : 0;
    }
    return n;
}

// Exact endpoint-pair comparison and the worst diameter difference.
struct GoldenDiff {
    std::size_t golden_lines = 0;
    std::size_t missing = 0;
    std::size_t extra = 0;
    double worst = 0.0;
};

GoldenDiff diff_against(const Nest &generated, const std::string &golden_text) {
    const Nest golden = import_nest(golden_text);
    GoldenDiff d;
    d.golden_lines = count_stick_lines(golden_text);
    for (const auto &s : golden.sticks()) {
        const Stick *m = generated.find(s.a, s.b);
        if (m == nullptr) {
            ++d.missing;
            continue;
        }
        d.worst = std::max(d.worst, std::abs(m->probability - s.probability));
    }
    d.extra = generated.size() - (golden.size() - d.missing);
    return d;
}

Outcome golden_criterion(const std::string &boundary, const std::string &file, std::size_t expected_lines,
                         const std::function<void(const Nest &, Outcome &)> &extra) {
    const auto t0 = Clock::now();
    auto gen = cli_run({"nest-gen", "--d", "3", "--boundary", boundary, "--rounds", "7", "--p", "0.04", "--sector", "x"});
    const double secs = seconds_since(t0);
    Outcome o;
    if (gen.code != 0) {
        o.detail = "nest-gen exited " + std::to_string(gen.code) + ": " + gen.err;
        return o;
    }
    const Nest nest = import_nest(gen.out);
    const auto d = diff_against(nest, slurp(data(file)));
    o.pass = d.golden_lines == expected_lines && d.missing == 0 && d.extra == 0 && d.worst <= 5e-4 && secs < 1.0;
    o.detail = std::to_string(d.golden_lines) + " reference sticks, " + std::to_string(d.missing) + " missing, " +
               std::to_string(d.extra) + " extra, max |diff| " + fmt("%.2e", d.worst) + " (tol 5e-4; 1e-7 " +
               (d.worst <= 1e-7 ? "met" : "not met") + "), " + fmt("%.3f", secs) + " s";
    if (extra) {
        extra(nest, o);
    }
    return o;
}

Outcome criterion1() {
    return golden_criterion("planar", "reference_planar.txt", 181, nullptr);
}

Outcome criterion2() {
    return golden_criterion("cyclic", "reference_cyclic.txt", 342, [](const Nest &nest, Outcome &o) {
        const Stick *star = nest.find({{4, 1}, 6}, {{4, 3}, 6});
        const Stick *narrow = nest.find({{2, 1}, 6}, {{4, 1}, 6});
        if (star == nullptr || narrow == nullptr) {
            o.pass = false;
            o.detail += "; calibration sticks missing";
            return;
        }
        const double wide = star->probability / 0.04;
        const double thin = narrow->probability / 0.04;
        const bool ok = std::abs(star->probability - 0.1922704) <= 5e-4 && wide >= 4.75 && wide <= 4.85 &&
                        thin >= 3.17 && thin <= 3.23;
        o.pass = o.pass && ok;
        o.detail += "; starred " + fmt("%.7f", star->probability) + " = " + fmt("%.3f", wide) + "p, narrow " +
                    fmt("%.7f", narrow->probability) + " = " + fmt("%.3f", thin) + "p";
    });
}

Outcome criterion3() {
    const auto t0 = Clock::now();
    Outcome o{true, ""};
    std::size_t worst_degree = 0;
    std::size_t checked = 0;
    auto check = [&](const Nest &nest) {
        const auto z = verify_no_zigzag(nest);
        o.pass = o.pass && z.ok();
        worst_degree = std::max(worst_degree, max_stick_degree(nest));
        ++checked;
    };
    check(import_nest(slurp(data("reference_planar.txt"))));
    check(import_nest(slurp(data("reference_cyclic.txt"))));
    for (int d = 3; d <= 5; ++d) {
        const auto sched = build_round_schedule(build_layout(d, Boundary::kCyclic));
        for (auto sector : {PauliKind::kX, PauliKind::kZ}) {
            check(build_nest(sched, 2 * d + 1, 0.001, sector));
        }
    }
    const double secs = seconds_since(t0);
    o.pass = o.pass && worst_degree <= 12 && secs < 1.0;
    o.detail = std::to_string(checked) + " nests without zigzags, max degree " + std::to_string(worst_degree) + ", " +
               fmt("%.3f", secs) + " s";
    return o;
}

Outcome criterion4() {
    const auto t0 = Clock::now();
    Outcome o{true, ""};
    for (int d = 3; d <= 5; ++d) {
        const auto sched = build_round_schedule(build_layout(d, Boundary::kCyclic));
        const auto nest = build_nest(sched, 2 * d + 1, 0.001, PauliKind::kX);
        const auto lr = count_min_nontrivial_cycles(nest, Homology::kLeftRight);
        const auto tb = count_min_nontrivial_cycles(nest, Homology::kTopBottom);
        o.pass = o.pass && lr == static_cast<std::size_t>(d) && tb == static_cast<std::size_t>(d);
        o.detail += "d=" + std::to_string(d) + ": " + std::to_string(lr) + "/" + std::to_string(tb) + "; ";
    }
    const double secs = seconds_since(t0);
    o.pass = o.pass && secs < 10.0;
    o.detail += fmt("%.3f", secs) + " s";
    return o;
}

Outcome criterion5() {
    auto r = cli_run({"asymptote", "--check-published"});
    Outcome o;
    double worst = 0.0;
    for (const auto &row : kPublishedPrefactors) {
        worst = std::max(worst, std::abs(cyclic_prefactor(row.d, kEpsCoeffNarrow).prefactor - row.a_x1) / row.a_x1);
        worst = std::max(worst, std::abs(cyclic_prefactor(row.d, kEpsCoeffWide).prefactor - row.a_z1) / row.a_z1);
    }
    o.pass = r.code == 0 && worst <= 5e-3;
    o.detail = "8 entries, worst relative deviation " + fmt("%.2e", worst);
    return o;
}

Outcome criterion6() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20261017);
    std::vector<MatchingGraph> shapes;
    for (auto b : {Boundary::kPlanar, Boundary::kCyclic}) {
        for (int d : {3, 4}) {
            const auto sched = build_round_schedule(build_layout(d, b));
            shapes.push_back(build_matching_graph(build_nest(sched, d, 0.001, PauliKind::kX, {TimeBoundary::kPerfectReadout})));
        }
    }
    std::size_t mismatches = 0;
    std::size_t instances = 0;
    double worst = 0.0;
    for (; instances < 10000; ++instances) {
        const auto &g = shapes[instances % shapes.size()];
        const std::size_t events = g.events().size();
        std::vector<std::size_t> pool(events);
        for (std::size_t k = 0; k < events; ++k) {
            pool[k] = k;
        }
        std::shuffle(pool.begin(), pool.end(), rng);
        std::size_t m = std::uniform_int_distribution<std::size_t>(0, 10)(rng);
        if (!g.has_boundary() && m % 2 == 1) {
            --m;
        }
        std::vector<std::size_t> chosen(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(m));
        const double a = mwpm(g, chosen).total_weight;
        const double b = exhaustive_mwpm(g, chosen).total_weight;
        worst = std::max(worst, std::abs(a - b));
        mismatches += std::abs(a - b) > 1e-9 ? 1 : 0;
    }
    const double secs = seconds_since(t0);
    Outcome o;
    o.pass = mismatches == 0 && secs < 60.0;
    o.detail = std::to_string(instances) + " instances, " + std::to_string(mismatches) + " mismatches, max |diff| " +
               fmt("%.1e", worst) + ", " + fmt("%.2f", secs) + " s";
    return o;
}

struct Campaign {
    RateEstimate cyclic_lo;
    RateEstimate cyclic_hi;
    RateEstimate planar_hi;
    double seconds = 0.0;
};

RateEstimate run_point(Boundary b, double p, std::uint64_t seed) {
    TrialConfig c;
    c.distance = 4;
    c.boundary = b;
    c.p = p;
    c.trials = 20000;
    c.seed = seed;
    c.target_failures = 200;
    c.max_trials = 20000000;
    return estimate_rates(c);
}

const Campaign &campaign() {
    static const Campaign c = [] {
        const auto t0 = Clock::now();
        Campaign out;
        out.cyclic_lo = run_point(Boundary::kCyclic, 5e-4, 101);
        out.cyclic_hi = run_point(Boundary::kCyclic, 1e-3, 102);
        out.planar_hi = run_point(Boundary::kPlanar, 1e-3, 103);
        out.seconds = seconds_since(t0);
        return out;
    }();
    return c;
}

std::string describe(const ClassEstimate &k, double predicted) {
    return k.label + " " + fmt("%.3e", k.per_round_rate) + " [" + fmt("%.2e", k.ci_low) + ", " +
           fmt("%.2e", k.ci_high) + "] from " + std::to_string(k.failures) + "/" + std::to_string(k.trials) +
           ", ratio " + fmt("%.2f", k.per_round_rate / predicted);
}

bool within_factor(double measured, double predicted, double factor) {
    return measured >= predicted / factor && measured <= predicted * factor;
}

Outcome criterion7() {
    const auto &c = campaign();
    Outcome o{true, ""};
    for (const auto *est : {&c.cyclic_lo, &c.cyclic_hi}) {
        const auto &z1 = est->at("Z1");
        const double predicted = 2.76e2 * est->config.p * est->config.p;
        o.pass = o.pass && z1.failures >= 100 && within_factor(z1.per_round_rate, predicted, 1.5);
        o.detail += "p=" + fmt("%.0e", est->config.p) + ": " + describe(z1, predicted) + "; ";
    }
    o.detail += "R=" + std::to_string(c.cyclic_hi.rounds);
    return o;
}

Outcome criterion8() {
    const auto &c = campaign();
    const auto &x = c.planar_hi.at("X");
    const double predicted = 3.97e2 * 1e-3 * 1e-3;
    Outcome o;
    o.pass = x.failures >= 100 && within_factor(x.per_round_rate, predicted, 1.5);
    o.detail = "p=1e-03: " + describe(x, predicted) + "; R=" + std::to_string(c.planar_hi.rounds);
    return o;
}

Outcome criterion9() {
    const auto &c = campaign();
    Outcome o{true, ""};
    for (auto [planar, cyclic] : {std::pair{"X", "Z2"}, std::pair{"Z", "X2"}}) {
        const auto &pl = c.planar_hi.at(planar);
        const auto &cy = c.cyclic_hi.at(cyclic);
        const bool disjoint = cy.ci_high < pl.ci_low;
        o.pass = o.pass && disjoint;
        o.detail += std::string(planar) + " " + fmt("%.2e", pl.per_round_rate) + " vs " + cyclic + " " +
                    fmt("%.2e", cy.per_round_rate) + (disjoint ? " (disjoint CIs); " : " (CIs overlap); ");
    }
    auto cmp = cli_run({"compare"});
    const bool x_ok = cmp.out.find("d=10 X vs Z2: 69.") != std::string::npos;
    const bool z_ok = cmp.out.find("Z vs X2: 13.0x") != std::string::npos;
    const bool grows = cmp.out.find("discrepancy grows with d: yes") != std::string::npos;
    o.pass = o.pass && cmp.code == 0 && x_ok && z_ok && grows;
    o.detail += std::string("d=10 analytic ratios ") + (x_ok && z_ok ? "69x and 13x" : "unexpected") +
                (grows ? ", growing with d" : ", not growing");
    o.detail += "; Monte Carlo " + fmt("%.1f", c.seconds) + " s";
    return o;
}

long double binomial_tail(int m, long double eps) {
    long double total = 0.0L;
    for (int k = (m + 1) / 2; k <= m; ++k) {
        long double c = 1.0L;
        for (int i = 1; i <= k; ++i) {
            c = c * (m - k + i) / i;
        }
        total += c * std::pow(eps, static_cast<long double>(k)) * std::pow(1.0L - eps, static_cast<long double>(m - k));
    }
    return total;
}

Outcome criterion10() {
    const long double eps = 1e-4L;
    const long double oracle = 44.0L * 4 / 121.0L * 22.0L * 22 * 22 * 22 * eps * eps / (1.0L - 484.0L * eps);
    const double got = total_upper_bound(4, 1e-4);
    const double rel = static_cast<double>(std::abs(got - oracle) / oracle);
    bool dominates = true;
    for (double e : {0.01, 0.1, 0.4}) {
        for (int m = 1; m <= 12; ++m) {
            dominates = dominates && static_cast<long double>(path_failure_bound(m, e)) >= binomial_tail(m, e);
        }
    }
    bool diverges = false;
    try {
        total_upper_bound(4, 1.0 / 484.0);
    } catch (const Error &e) {
        diverges = e.code() == ErrorCode::kDivergence;
    }
    auto cli = cli_run({"bound", "--d", "4", "--eps", "0.01"});
    Outcome o;
    o.pass = rel <= 1e-6 && dominates && diverges && cli.code == 2;
    o.detail = "bound(4, 1e-4) = " + fmt("%.6e", got) + " (rel err " + fmt("%.1e", rel) + "), tail dominated: " +
               (dominates ? "yes" : "no") + ", divergence raised: " + (diverges ? "yes" : "no");
    return o;
}

Outcome criterion11() {
    const std::vector<std::string> args{"simulate", "--d", "3", "--boundary", "cyclic", "--p", "0.005,0.01",
                                        "--trials", "2000", "--seed", "4242"};
    auto one = args;
    one.insert(one.end(), {"--threads", "1"});
    auto many = args;
    many.insert(many.end(), {"--threads", "4"});
    const auto a = cli_run(args);
    const auto b = cli_run(args);
    const auto c = cli_run(one);
    const auto d = cli_run(many);
    const bool identical = a.code == 0 && a.out == b.out && a.out == c.out && a.out == d.out;

    bool round_trip = true;
    for (auto bnd : {Boundary::kPlanar, Boundary::kCyclic}) {
        for (auto sector : {PauliKind::kX, PauliKind::kZ}) {
            const auto nest = build_nest(build_round_schedule(build_layout(4, bnd)), 5, 0.01, sector);
            const auto text = export_nest(nest);
            const auto back = import_nest(text);
            round_trip = round_trip && back.size() == nest.size() && export_nest(back) == text;
            for (const auto &s : nest.sticks()) {
                const Stick *m = back.find(s.a, s.b);
                round_trip = round_trip && m != nullptr && std::abs(m->probability - s.probability) <= 5e-8;
            }
        }
    }
    bool reexport = true;
    for (const char *file : {"reference_planar.txt", "reference_cyclic.txt"}) {
        const auto text = slurp(data(file));
        reexport = reexport && export_nest(import_nest(text)) == text;
    }
    Outcome o;
    o.pass = identical && round_trip && reexport;
    o.detail = std::string("simulate CSV byte-identical across runs and thread counts: ") + (identical ? "yes" : "no") +
               ", round trip lossless: " + (round_trip ? "yes" : "no") +
               ", reference blocks re-export byte-identical: " + (reexport ? "yes" : "no");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char *, Outcome (*)()>> criteria = {
        {"nest golden (planar)", criterion1},
        {"nest golden (cyclic) and stick calibration", criterion2},
        {"zigzag and degree", criterion3},
        {"minimum nontrivial cycles", criterion4},
        {"cyclic asymptote vs published prefactors", criterion5},
        {"decoder exactness", criterion6},
        {"cyclic Monte Carlo vs asymptote", criterion7},
        {"planar Monte Carlo vs published prefactor", criterion8},
        {"cyclic vs planar discrepancy", criterion9},
        {"upper bound sanity", criterion10},
        {"determinism and format", criterion11},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::cout << "criterion " << k + 1 << " " << criteria[k].first << ": " << (o.pass ? "PASS" : "FAIL") << " ("
                  << o.detail << ")" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
