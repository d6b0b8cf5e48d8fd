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

#include "nestlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include "nestlab/analytics.hpp"
#include "nestlab/error.hpp"
#include "nestlab/montecarlo.hpp"
#include "nestlab/nest.hpp"

namespace nestlab::cli {

namespace {

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string format(const char *fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string &path, const std::string &text, std::ostream &out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot write " + path);
    }
    f << text;
}

Boundary parse_boundary(const std::string &s) {
    if (s == "planar") {
        return Boundary::kPlanar;
    }
    if (s == "cyclic") {
        return Boundary::kCyclic;
    }
    throw UsageError("boundary must be planar or cyclic");
}

PauliKind parse_sector(const std::string &s) {
    if (s == "x" || s == "X") {
        return PauliKind::kX;
    }
    if (s == "z" || s == "Z") {
        return PauliKind::kZ;
    }
    throw UsageError("sector must be x or z");
}

std::optional<std::uint64_t> env_u64(const char *name) {
    const char *v = std::getenv(name);
    if (v == nullptr || *v == '\0') {
        return std::nullopt;
    }
    char *end = nullptr;
    const unsigned long long parsed = std::strtoull(v, &end, 10);
    if (end == nullptr || *end != '\0') {
        throw UsageError(std::string(name) + " must be a non-negative integer");
    }
    return parsed;
}

std::vector<std::string> split(const std::string &line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) {
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == sep) {
        out.emplace_back();
    }
    return out;
}

// ---- nest-gen -------------------------------------------------------------

struct NestGenArgs {
    int d = 3;
    std::string boundary = "planar";
    int rounds = 7;
    double p = 0.0;
    std::string sector = "x";
    std::string time_boundary = "truncate";
    std::string aggregation = "linear";
    std::string out = "-";
};

int cmd_nest_gen(const NestGenArgs &a, std::ostream &out) {
    NestOptions options;
    if (a.time_boundary == "readout") {
        options.time_boundary = TimeBoundary::kPerfectReadout;
    } else if (a.time_boundary != "truncate") {
        throw UsageError("time boundary must be truncate or readout");
    }
    if (a.aggregation == "xor") {
        options.aggregation = StickAggregation::kXor;
    } else if (a.aggregation != "linear") {
        throw UsageError("aggregation must be linear or xor");
    }
    const auto schedule = build_round_schedule(build_layout(a.d, parse_boundary(a.boundary)));
    const auto nest = build_nest(schedule, a.rounds, a.p, parse_sector(a.sector), options);
    write_output(a.out, export_nest(nest), out);
    return kExitOk;
}

// ---- nest-verify ----------------------------------------------------------

struct NestVerifyArgs {
    std::string file;
    std::string golden;
    double tol = 5e-4;
};

int cmd_nest_verify(const NestVerifyArgs &a, std::ostream &out) {
    const Nest nest = import_nest(read_file(a.file));
    bool pass = true;
    const auto &g = nest.geometry();
    out << "sticks: " << nest.size() << "\n";
    if (!nest.empty()) {
        out << "layout: " << boundary_name(g.boundary) << " d=" << g.distance << " rounds=" << g.rounds
            << " sector=" << pauli_kind_name(g.sector) << "\n";
    }

    const auto zig = verify_no_zigzag(nest);
    out << "zigzag: " << (zig.ok() ? "ok" : "FAIL") << " (" << zig.diagonal_sticks << " diagonal sticks";
    for (const auto &v : zig.violations) {
        out << "; class (" << v.di << ", " << v.dj << ") has both time directions";
    }
    out << ")\n";
    pass = pass && zig.ok();

    const auto degree = max_stick_degree(nest);
    const bool degree_ok = degree <= static_cast<std::size_t>(kMaxSticksPerNode);
    out << "max degree: " << degree << " (limit " << kMaxSticksPerNode << ") " << (degree_ok ? "ok" : "FAIL") << "\n";
    pass = pass && degree_ok;

    if (!nest.empty() && g.boundary == Boundary::kCyclic) {
        try {
            const auto lr = count_min_nontrivial_cycles(nest, Homology::kLeftRight);
            const auto tb = count_min_nontrivial_cycles(nest, Homology::kTopBottom);
            const bool ok = lr == static_cast<std::size_t>(g.distance) && tb == static_cast<std::size_t>(g.distance);
            out << "cycles: left-right: " << lr << ", top-bottom: " << tb << " (expected " << g.distance << ") "
                << (ok ? "ok" : "FAIL") << "\n";
            pass = pass && ok;
        } catch (const Error &e) {
            if (e.code() != ErrorCode::kInvalidParameter) {
                throw;
            }
            out << "cycles: skipped (" << e.what() << ")\n";
        }
    }

    if (!a.golden.empty()) {
        const Nest ref = import_nest(read_file(a.golden));
        std::size_t missing = 0;
        double worst = 0.0;
        for (const auto &s : ref.sticks()) {
            const Stick *m = nest.find(s.a, s.b);
            if (m == nullptr) {
                ++missing;
                continue;
            }
            worst = std::max(worst, std::abs(m->probability - s.probability));
        }
        const std::size_t extra = nest.size() - (ref.size() - missing);
        const bool ok = missing == 0 && extra == 0 && worst <= a.tol;
        out << "golden: " << (ok ? "ok" : "FAIL") << " (missing " << missing << ", extra " << extra
            << ", max |diff| " << format("%.3e", worst) << ", tol " << format("%.3e", a.tol) << ")\n";
        pass = pass && ok;
    }
    out << "result: " << (pass ? "pass" : "fail") << "\n";
    return pass ? kExitOk : kExitVerifyFailed;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
    std::vector<int> d;
    std::string boundary = "planar";
    std::vector<double> p;
    std::uint64_t trials = 10000;
    int rounds = 0;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::string sector = "both";
    std::uint64_t target_failures = 0;
    std::uint64_t max_trials = 0;
    std::string format = "csv";
    std::string out = "-";
};

int cmd_simulate(const SimulateArgs &a, std::ostream &out) {
    if (a.d.empty() || a.p.empty()) {
        throw UsageError("need at least one --d and one --p");
    }
    for (double p : a.p) {
        if (!(p > 0.0 && p < 0.5)) {
            throw UsageError("p grid values must lie in (0, 0.5)");
        }
    }
    if (a.format != "csv" && a.format != "json") {
        throw UsageError("format must be csv or json");
    }
    TrialConfig base;
    base.boundary = parse_boundary(a.boundary);
    base.trials = a.trials;
    base.rounds = a.rounds;
    base.seed = a.seed ? *a.seed : env_u64("NESTLAB_SEED").value_or(1);
    base.threads = a.threads ? *a.threads : static_cast<unsigned>(env_u64("NESTLAB_THREADS").value_or(0));
    base.target_failures = a.target_failures;
    base.max_trials = a.max_trials;
    if (a.sector == "x") {
        base.sectors = SectorChoice::kX;
    } else if (a.sector == "z") {
        base.sectors = SectorChoice::kZ;
    } else if (a.sector != "both") {
        throw UsageError("sector must be x, z or both");
    }

    std::vector<ResultRecord> records;
    for (int d : a.d) {
        for (double p : a.p) {
            TrialConfig c = base;
            c.distance = d;
            c.p = p;
            const auto est = estimate_rates(c);
            for (const auto &k : est.classes) {
                records.push_back({d, a.boundary, p, k.label, k.failures, k.trials, est.rounds, k.per_round_rate,
                                   k.ci_low, k.ci_high, c.seed});
            }
        }
    }
    write_output(a.out, a.format == "csv" ? records_to_csv(records) : records_to_json(records), out);
    return kExitOk;
}

// ---- asymptote ------------------------------------------------------------

struct AsymptoteArgs {
    std::string mode = "cyclic";
    std::vector<int> d;
    std::vector<double> p;
    double eps_coeff = kEpsCoeffWide;
    double a = 0.0;
    bool check_published = false;
};

int cmd_asymptote(const AsymptoteArgs &a, std::ostream &out) {
    if (a.check_published) {
        bool pass = true;
        out << "d,class,eps_coeff,computed,published,rel_dev,status\n";
        for (const auto &row : kPublishedPrefactors) {
            for (auto [label, coeff, published] :
                 {std::tuple{"X1", kEpsCoeffNarrow, row.a_x1}, std::tuple{"Z1", kEpsCoeffWide, row.a_z1}}) {
                const double computed = cyclic_prefactor(row.d, coeff).prefactor;
                const double dev = std::abs(computed - published) / published;
                const bool ok = dev <= 5e-3;
                pass = pass && ok;
                out << row.d << "," << label << "," << coeff << "," << format("%.6g", computed) << ","
                    << format("%.3g", published) << "," << format("%.3e", dev) << "," << (ok ? "ok" : "DEVIATES")
                    << "\n";
            }
        }
        return pass ? kExitOk : kExitVerifyFailed;
    }
    if (a.d.empty() || a.p.empty()) {
        throw UsageError("need at least one --d and one --p");
    }
    const bool cyclic = a.mode == "cyclic" || a.mode == "eq1";
    if (!cyclic && a.mode != "table") {
        throw UsageError("mode must be cyclic or table");
    }
    if (cyclic) {
        for (int d : a.d) {
            if (d % 2 != 0) {
                throw UsageError("cyclic mode needs even d");
            }
        }
    }
    out << "d,p,value\n";
    for (int d : a.d) {
        for (double p : a.p) {
            const double v = cyclic ? cyclic_asymptote(d, a.eps_coeff * p) : power_law_curve(a.a, d, p);
            out << d << "," << format("%.6g", p) << "," << format("%.6e", v) << "\n";
        }
    }
    return kExitOk;
}

// ---- bound ----------------------------------------------------------------

struct BoundArgs {
    int d = 4;
    double eps = 0.0;
};

int cmd_bound(const BoundArgs &a, std::ostream &out) {
    if (a.d % 2 != 0) {
        throw UsageError("bound needs even d");
    }
    const double total = total_upper_bound(a.d, a.eps);
    out << "B: " << format("%.6e", bound_spec(a.d, a.eps).b) << "\n";
    out << "bound: " << format("%.6e", total) << "\n";
    return kExitOk;
}

// ---- compare --------------------------------------------------------------

struct CompareArgs {
    std::string results;
    std::vector<int> d = {4, 6, 8, 10};
};

std::string magnitude_phrase(double ratio) {
    if (ratio >= 100.0) {
        return "over 2 orders of magnitude";
    }
    if (ratio >= 10.0) {
        return "over an order of magnitude";
    }
    if (ratio > 1.0) {
        return "below a factor of 10";
    }
    return "no underestimate";
}

int cmd_compare(const CompareArgs &a, std::ostream &out) {
    out << "prefactor ratios (published planar / cyclic asymptote)\n";
    double prev_x = 0.0;
    double prev_z = 0.0;
    bool growing = true;
    for (int d : a.d) {
        const auto ax = published_prefactor(d, "X");
        const auto az = published_prefactor(d, "Z");
        if (!ax || !az || d % 2 != 0) {
            throw UsageError("no published prefactors for d=" + std::to_string(d));
        }
        const double z2 = cyclic_prefactor(d, kEpsCoeffNarrow).prefactor;
        const double x2 = cyclic_prefactor(d, kEpsCoeffWide).prefactor;
        const double rx = *ax / z2;
        const double rz = *az / x2;
        out << "d=" << d << " X vs Z2: " << format("%.1f", rx) << "x (" << magnitude_phrase(rx) << "); Z vs X2: "
            << format("%.1f", rz) << "x (" << magnitude_phrase(rz) << ")\n";
        growing = growing && rx > prev_x && rz > prev_z;
        prev_x = rx;
        prev_z = rz;
    }
    out << "discrepancy grows with d: " << (growing ? "yes" : "no") << "\n";

    if (a.results.empty()) {
        return kExitOk;
    }
    const auto records = parse_records(read_file(a.results));
    if (records.empty()) {
        throw UsageError("results file has no records");
    }
    out << "\nd,boundary,p,class,rate,asymptote,ratio\n";
    std::map<std::tuple<int, double, std::string, std::string>, const ResultRecord *> by_key;
    for (const auto &r : records) {
        by_key[{r.d, r.p, r.boundary, r.label}] = &r;
        std::optional<double> asym;
        if (r.d % 2 == 0) {
            if (auto c = eps_coeff_for_class(r.label)) {
                asym = cyclic_asymptote(r.d, *c * r.p);
            } else if (auto pf = published_prefactor(r.d, r.label)) {
                asym = power_law_curve(*pf, r.d, r.p);
            }
        }
        out << r.d << "," << r.boundary << "," << format("%.6g", r.p) << "," << r.label << ","
            << format("%.4e", r.rate) << "," << (asym ? format("%.4e", *asym) : "n/a") << ","
            << (asym && *asym > 0 ? format("%.3f", r.rate / *asym) : "n/a") << "\n";
    }
    bool header = false;
    for (const auto &[key, rec] : by_key) {
        const auto &[d, p, boundary, label] = key;
        if (boundary != "planar") {
            continue;
        }
        const char *partner = label == "X" ? "Z2" : label == "Z" ? "X2" : nullptr;
        if (partner == nullptr) {
            continue;
        }
        auto it = by_key.find({d, p, "cyclic", partner});
        if (it == by_key.end()) {
            continue;
        }
        if (!header) {
            out << "\nmeasured discrepancy (planar / cyclic)\n";
            header = true;
        }
        const auto *cyc = it->second;
        const bool separated = cyc->ci_high < rec->ci_low;
        out << "d=" << d << " p=" << format("%.6g", p) << " " << label << " vs " << partner << ": "
            << (cyc->rate > 0 ? format("%.2f", rec->rate / cyc->rate) + "x" : std::string("inf"))
            << (separated ? " (95% intervals disjoint)" : " (95% intervals overlap)") << "\n";
    }
    return kExitOk;
}

int exit_code_for(const Error &e) {
    return e.code() == ErrorCode::kInternalConsistency ? kExitVerifyFailed : kExitUsage;
}

}  // namespace

std::string records_to_csv(const std::vector<ResultRecord> &records) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto &r : records) {
        out += std::to_string(r.d) + "," + r.boundary + "," + format("%.6g", r.p) + "," + r.label + "," +
               std::to_string(r.failures) + "," + std::to_string(r.trials) + "," + std::to_string(r.rounds) + "," +
               format("%.6e", r.rate) + "," + format("%.6e", r.ci_low) + "," + format("%.6e", r.ci_high) + "," +
               std::to_string(r.seed) + "\n";
    }
    return out;
}

std::string records_to_json(const std::vector<ResultRecord> &records) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto &r : records) {
        rows.push_back({{"d", r.d},
                        {"boundary", r.boundary},
                        {"p", r.p},
                        {"class", r.label},
                        {"failures", r.failures},
                        {"trials", r.trials},
                        {"rounds", r.rounds},
                        {"rate", r.rate},
                        {"ci_low", r.ci_low},
                        {"ci_high", r.ci_high},
                        {"seed", r.seed}});
    }
    nlohmann::ordered_json doc;
    doc["metadata"] = {
        {"window", "clean initial state, rounds noisy rounds, one perfect readout round"},
        {"rate", "block failure fraction f / rounds for f < 0.1, else (1 - (1 - 2f)^(1/rounds)) / 2"},
        {"interval", "95% Wilson score interval on f, converted the same way"},
    };
    doc["records"] = rows;
    return doc.dump(2) + "\n";
}

std::vector<ResultRecord> parse_records(const std::string &text) {
    std::vector<ResultRecord> out;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return out;
    }
    if (text[first] == '{' || text[first] == '[') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception &e) {
            throw ParseError(1, e.what());
        }
        const auto &rows = doc.is_array() ? doc : doc.value("records", nlohmann::json::array());
        std::size_t k = 0;
        for (const auto &row : rows) {
            ++k;
            try {
                out.push_back({row.at("d").get<int>(), row.at("boundary").get<std::string>(),
                               row.at("p").get<double>(), row.at("class").get<std::string>(),
                               row.at("failures").get<std::uint64_t>(), row.at("trials").get<std::uint64_t>(),
                               row.at("rounds").get<int>(), row.at("rate").get<double>(),
                               row.at("ci_low").get<double>(), row.at("ci_high").get<double>(),
                               row.at("seed").get<std::uint64_t>()});
            } catch (const nlohmann::json::exception &e) {
                throw ParseError(k, std::string("record: ") + e.what());
            }
        }
        return out;
    }

    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    const auto header = split(line, ',');
    std::map<std::string, std::size_t> col;
    for (std::size_t k = 0; k < header.size(); ++k) {
        col[header[k]] = k;
    }
    for (const auto &name : split(kCsvHeader, ',')) {
        if (col.count(name) == 0) {
            throw ParseError(1, "missing column '" + name + "'");
        }
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto cells = split(line, ',');
        if (cells.size() != header.size()) {
            throw ParseError(line_no, "expected " + std::to_string(header.size()) + " cells");
        }
        auto cell = [&](const char *name) { return cells[col.at(name)]; };
        try {
            out.push_back({std::stoi(cell("d")), cell("boundary"), std::stod(cell("p")), cell("class"),
                           std::stoull(cell("failures")), std::stoull(cell("trials")), std::stoi(cell("rounds")),
                           std::stod(cell("rate")), std::stod(cell("ci_low")), std::stod(cell("ci_high")),
                           std::stoull(cell("seed"))});
        } catch (const std::logic_error &) {
            throw ParseError(line_no, "malformed number");
        }
    }
    return out;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"nestlab: single-fault nests, matching decoder and logical error rates for surface codes"};
    app.require_subcommand(1);

    NestGenArgs gen;
    auto *gen_cmd = app.add_subcommand("nest-gen", "Build a nest and write it in the text format");
    gen_cmd->add_option("--d", gen.d, "Code distance")->required();
    gen_cmd->add_option("--boundary", gen.boundary, "planar or cyclic")->capture_default_str();
    gen_cmd->add_option("--rounds", gen.rounds, "Measurement rounds")->capture_default_str();
    gen_cmd->add_option("--p", gen.p, "Physical error rate")->required();
    gen_cmd->add_option("--sector", gen.sector, "x or z stabilizer sector")->capture_default_str();
    gen_cmd->add_option("--time-boundary", gen.time_boundary, "truncate or readout")->capture_default_str();
    gen_cmd->add_option("--aggregation", gen.aggregation, "linear or xor")->capture_default_str();
    gen_cmd->add_option("--out", gen.out, "Output file, - for stdout")->capture_default_str();

    NestVerifyArgs verify;
    auto *verify_cmd = app.add_subcommand("nest-verify", "Check zigzag, degree and cycle properties of a nest file");
    verify_cmd->add_option("file", verify.file, "Nest file")->required();
    verify_cmd->add_option("--golden", verify.golden, "Reference nest to diff against");
    verify_cmd->add_option("--tol", verify.tol, "Absolute diameter tolerance for --golden")->capture_default_str();

    SimulateArgs sim;
    auto *sim_cmd = app.add_subcommand("simulate", "Estimate per-round logical error rates");
    sim_cmd->add_option("--d", sim.d, "Distances (comma separated)")->delimiter(',')->required();
    sim_cmd->add_option("--boundary", sim.boundary, "planar or cyclic")->capture_default_str();
    sim_cmd->add_option("--p", sim.p, "Physical error rates (comma separated)")->delimiter(',')->required();
    sim_cmd->add_option("--trials", sim.trials, "Blocks per point (batch size with --target-failures)")
        ->capture_default_str();
    sim_cmd->add_option("--rounds", sim.rounds, "Noisy rounds per block, 0 for 2d")->capture_default_str();
    sim_cmd->add_option("--seed", sim.seed, "RNG seed (env NESTLAB_SEED, default 1)");
    sim_cmd->add_option("--threads", sim.threads, "Worker threads (env NESTLAB_THREADS, default all cores)");
    sim_cmd->add_option("--sector", sim.sector, "x, z or both")->capture_default_str();
    sim_cmd->add_option("--target-failures", sim.target_failures, "Keep sampling until every class has this many")
        ->capture_default_str();
    sim_cmd->add_option("--max-trials", sim.max_trials, "Upper limit with --target-failures, 0 for none")
        ->capture_default_str();
    sim_cmd->add_option("--format", sim.format, "csv or json")->capture_default_str();
    sim_cmd->add_option("--out", sim.out, "Output file, - for stdout")->capture_default_str();

    AsymptoteArgs asym;
    auto *asym_cmd = app.add_subcommand("asymptote", "Evaluate low-p asymptotes");
    asym_cmd->add_option("--mode", asym.mode, "cyclic (from eps; alias eq1) or table (A p^(d/2))")
        ->capture_default_str();
    asym_cmd->add_option("--d", asym.d, "Distances")->delimiter(',');
    asym_cmd->add_option("--p", asym.p, "Physical error rates")->delimiter(',');
    asym_cmd->add_option("--eps-coeff", asym.eps_coeff, "eps / p for cyclic mode")->capture_default_str();
    asym_cmd->add_option("--A", asym.a, "Prefactor for table mode");
    asym_cmd->add_flag("--check-published,--check-table1", asym.check_published,
                       "Compare computed cyclic prefactors with the published ones");

    BoundArgs bound;
    auto *bound_cmd = app.add_subcommand("bound", "Evaluate the total logical error upper bound");
    bound_cmd->add_option("--d", bound.d, "Even code distance")->required();
    bound_cmd->add_option("--eps", bound.eps, "Stick probability")->required();

    CompareArgs cmp;
    auto *cmp_cmd = app.add_subcommand("compare", "Report planar vs cyclic discrepancy");
    cmp_cmd->add_option("--results", cmp.results, "simulate output (csv or json)");
    cmp_cmd->add_option("--d", cmp.d, "Distances for the analytic ratios")->delimiter(',')->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen_cmd) {
            return cmd_nest_gen(gen, out);
        }
        if (*verify_cmd) {
            return cmd_nest_verify(verify, out);
        }
        if (*sim_cmd) {
            return cmd_simulate(sim, out);
        }
        if (*asym_cmd) {
            return cmd_asymptote(asym, out);
        }
        if (*bound_cmd) {
            return cmd_bound(bound, out);
        }
        if (*cmp_cmd) {
            return cmd_compare(cmp, out);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kExitUsage;
}

}  // namespace nestlab::cli
