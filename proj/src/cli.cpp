#include "nonlocal/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/families.hpp"
#include "nonlocal/inequalities.hpp"
#include "nonlocal/radial.hpp"
#include "nonlocal/simulator.hpp"

namespace nonlocal {
namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

const std::vector<std::string> kSuites{"pointwise", "ccf",   "identity", "exp_weighted", "log_bound",
                                       "alpha",     "hardy", "kiselev",  "radial"};

struct LabOptions {
    std::string command;
    std::vector<double> delta{0.0};
    std::vector<double> sigma{1.0};
    std::vector<double> p{2.0};
    std::vector<double> rtilde{2.0};
    std::vector<double> alpha{1.0};
    std::vector<double> gamma;
    std::vector<double> kappa;
    std::string model = "hilbert_transport";
    double amp = 1.0;
    std::size_t grid_size = 4096;
    double box = 40.0 * std::numbers::pi;
    double t_end = 1.0;
    std::uint64_t seed = 0;
    std::string out = "nonlocal_lab_out";
    std::vector<std::string> only;
    std::string input;
    unsigned threads = 1;
};

struct Row {
    std::string suite;
    std::string function;
    InequalityReport report;
};

struct Task {
    std::string suite;
    std::string function;
    std::function<std::vector<InequalityReport>()> run;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

unsigned thread_cap() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("NONLOCAL_LAB_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1) throw UsageError("NONLOCAL_LAB_THREADS must be a positive integer");
        n = std::min(n, static_cast<unsigned>(v));
    }
    return n;
}

bool parameter_error(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidArgument:
        case ErrorKind::DomainError:
        case ErrorKind::GammaOutOfRange:
        case ErrorKind::AlphaOutOfRange:
        case ErrorKind::DeltaOutOfRange:
            return true;
        default:
            return false;
    }
}

// Adds `count` dilations x -> f(x/L), L log-uniform in [1/2, 2], of randomly chosen members.
std::vector<TestFunction> with_seeded_members(std::vector<TestFunction> family, std::uint64_t seed, int count = 4) {
    if (seed == 0) return family;
    std::mt19937_64 rng(seed);
    const std::size_t base = family.size();
    for (int i = 0; i < count; ++i) {
        const std::size_t pick = rng() % base;
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        family.push_back(family[pick].dilated(std::exp2(2.0 * u - 1.0)));
    }
    return family;
}

// Runs tasks on at most `threads` workers; rows come back in task order.
std::vector<Row> run_tasks(const std::vector<Task>& tasks, unsigned threads) {
    std::vector<std::vector<Row>> results(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < tasks.size();) {
            const auto& t = tasks[i];
            try {
                for (auto& r : t.run()) results[i].push_back({t.suite, t.function, std::move(r)});
            } catch (const LabError& e) {
                if (parameter_error(e.kind())) {
                    errors[i] = std::current_exception();
                    continue;
                }
                InequalityReport r;
                r.name = std::string(t.suite) + ":" + to_string(e.kind());
                r.verdict = Verdict::inconclusive;
                results[i].push_back({t.suite, t.function, r});
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
    for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    std::vector<Row> rows;
    for (auto& r : results) std::move(r.begin(), r.end(), std::back_inserter(rows));
    return rows;
}

std::string row_json(const Row& row) {
    const std::string line = to_json_line(row.report);
    return "{\"suite\":" + Json(row.suite).dump() + ",\"function\":" + Json(row.function).dump() + "," + line.substr(1);
}

int exit_for(const std::vector<Verdict>& verdicts) {
    bool inconclusive = false;
    for (auto v : verdicts) {
        if (v == Verdict::fails) return exit_fails;
        if (v == Verdict::inconclusive) inconclusive = true;
    }
    return inconclusive ? exit_inconclusive : exit_holds;
}

InequalityReport pointwise_report(const PointwiseBound& b) {
    InequalityReport r;
    r.name = "pointwise_lower_bound";
    r.lhs = b.worst * b.scale;
    r.rhs = b.scale;
    r.ratio = b.worst;
    r.verdict = b.scale == 0.0 ? Verdict::holds : (b.holds ? Verdict::holds : Verdict::fails);
    return r;
}

InequalityReport identity_report(const IdentityReport& id) {
    InequalityReport r;
    r.name = "hilbert_energy_identity";
    r.lhs = id.lhs;
    r.rhs = id.term1 + id.term2;
    r.ratio = safe_ratio(r.lhs, r.rhs);
    r.err_est = id.err_est;
    r.params = {{"term1", id.term1}, {"term2", id.term2}, {"residual", id.residual},
                {"direct_bound", id.direct_bound ? 1.0 : 0.0}};
    r.verdict = id.verdict;
    return r;
}

// The constant is not specified, so a finite ratio is all that can be checked per function.
InequalityReport log_bound_report(const BoundReport& b, double gamma) {
    InequalityReport r;
    r.name = "fractional_log_bound";
    r.params = {{"gamma", gamma}};
    r.lhs = b.lhs;
    r.rhs = b.rhs;
    r.ratio = b.ratio;
    r.verdict = std::isfinite(b.ratio) ? Verdict::holds : Verdict::inconclusive;
    return r;
}

InequalityReport hardy_step_report(int n, double alpha, double delta) {
    InequalityReport r;
    r.name = "hardy_step";
    r.params = {{"n", static_cast<double>(n)}, {"alpha", alpha}, {"delta", delta}};
    r.lhs = hardy_step_value(n, alpha, delta);
    r.rhs = 1.0;
    r.ratio = r.lhs;
    r.verdict = hardy_step_condition(n, alpha, delta) ? Verdict::holds : Verdict::fails;
    return r;
}

bool selected(const LabOptions& o, const std::string& suite) {
    return o.only.empty() || std::find(o.only.begin(), o.only.end(), suite) != o.only.end();
}

std::vector<Task> verify_tasks(const LabOptions& o) {
    std::vector<Task> tasks;
    const auto monotone = with_seeded_members(monotone_family(), o.seed);
    auto graded_suite = [&](const std::string& suite, std::function<std::vector<InequalityReport>(const EvenProfile&)> check) {
        if (!selected(o, suite)) return;
        for (const auto& f : monotone) {
            tasks.push_back({suite, f.name, [f, check] { return check(make_profile(f, Monotonicity::nonincreasing)); }});
        }
    };
    graded_suite("pointwise", [](const EvenProfile& g) {
        return std::vector<InequalityReport>{pointwise_report(check_pointwise_lower_bound(g))};
    });
    graded_suite("ccf", [delta = o.delta](const EvenProfile& g) {
        std::vector<InequalityReport> out;
        for (double d : delta) out.push_back(verify_ccf(g, d));
        return out;
    });
    graded_suite("identity", [](const EvenProfile& g) {
        return std::vector<InequalityReport>{identity_report(hilbert_energy_identity(g))};
    });
    graded_suite("exp_weighted", [](const EvenProfile& g) {
        return std::vector<InequalityReport>{verify_exp_weighted_bound(g)};
    });
    auto periodic = [](const TestFunction& f) {
        return sample_even(default_periodic_embedding(), f, Monotonicity::nonincreasing);
    };
    if (selected(o, "log_bound")) {
        for (const auto& f : monotone) {
            tasks.push_back({"log_bound", f.name, [f, periodic, gamma = o.gamma] {
                                 const auto g = periodic(f);
                                 std::vector<InequalityReport> out;
                                 for (double gm : gamma) out.push_back(log_bound_report(verify_fractional_log_bound(g, gm), gm));
                                 return out;
                             }});
        }
    }
    if (selected(o, "alpha")) {
        for (const auto& f : monotone) {
            tasks.push_back({"alpha", f.name, [f, periodic, alpha = o.alpha] {
                                 const auto g = periodic(f);
                                 std::vector<InequalityReport> out;
                                 for (double a : alpha) out.push_back(verify_alpha(g, a, false));
                                 return out;
                             }});
        }
    }
    if (selected(o, "alpha")) {
        for (double a : o.alpha) {
            tasks.push_back({"alpha", "family", [a, periodic, monotone] {
                                 std::vector<SampledFunction> family;
                                 for (const auto& f : monotone) family.push_back(periodic(f));
                                 return fit_alpha_family(family, a).reports;
                             }});
        }
    }
    if (selected(o, "hardy")) {
        for (const auto& f : with_seeded_members(nonnegative_family(), o.seed)) {
            tasks.push_back({"hardy", f.name, [f, p = o.p, rtilde = o.rtilde] {
                                 const auto s = sample_even(default_graded_grid(), f);
                                 std::vector<InequalityReport> out;
                                 for (double pp : p)
                                     for (double rt : rtilde) out.push_back(verify_hardy(s, pp, rt));
                                 return out;
                             }});
        }
    }
    if (selected(o, "kiselev")) {
        for (const auto& f : with_seeded_members(increasing_family(), o.seed)) {
            tasks.push_back({"kiselev", f.name, [f, p = o.p, sigma = o.sigma] {
                                 const auto g = make_profile(f, Monotonicity::nondecreasing);
                                 std::vector<InequalityReport> out;
                                 for (double pp : p)
                                     for (double sg : sigma) out.push_back(verify_kiselev(g, pp, sg, KiselevDomain::half_line));
                                 return out;
                             }});
        }
    }
    if (selected(o, "radial")) {
        for (int n : {2, 3}) {
            for (double a : o.alpha) {
                for (double d : o.delta) {
                    tasks.push_back({"radial", "gaussian_n" + std::to_string(n), [n, a, d] {
                                         const auto g = RadialProfile::from_function(
                                             n, [](double r) { return std::exp(-r * r); },
                                             [](double r) { return -2.0 * r * std::exp(-r * r); });
                                         auto [point, weighted] = verify_radial_bounds(g, a, d);
                                         return std::vector<InequalityReport>{point, weighted, hardy_step_report(n, a, d)};
                                     }});
                }
            }
        }
    }
    return tasks;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw UsageError("cannot write " + path.string());
    return os;
}

int run_verify(const LabOptions& o, Json& manifest) {
    for (const auto& s : o.only) {
        if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end()) throw UsageError("unknown suite: " + s);
    }
    const auto rows = run_tasks(verify_tasks(o), o.threads);
    const fs::path path = fs::path(o.out) / "reports.jsonl";
    auto os = open_output(path);
    std::vector<Verdict> verdicts;
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& r : rows) {
        os << row_json(r) << '\n';
        verdicts.push_back(r.report.verdict);
        ++counts[static_cast<int>(r.report.verdict)];
    }
    manifest["outputs"] = {path.string()};
    manifest["verdicts"] = {{"holds", counts[0]}, {"fails", counts[1]}, {"inconclusive", counts[2]}};
    std::printf("%zu reports: %zu holds, %zu fails, %zu inconclusive -> %s\n", rows.size(), counts[0], counts[1],
                counts[2], path.string().c_str());
    return exit_for(verdicts);
}

int run_simulate(const LabOptions& o, Json& manifest) {
    const Model model = model_from_string(o.model);
    std::vector<double> alphas = model == Model::alpha_model ? o.alpha : std::vector<double>{o.alpha.front()};
    Json outputs = Json::array();
    int index = 0;
    for (double g : o.gamma) {
        for (double k : o.kappa) {
            for (double a : alphas) {
                SimulationConfig c;
                c.model = model;
                c.kappa = k;
                c.gamma = g;
                c.alpha = a;
                c.grid = simulation_grid(o.grid_size, o.box);
                c.t_end = o.t_end;
                const double amp = o.amp;
                const auto start = std::chrono::steady_clock::now();
                auto series = run_with_monitors(c, [amp](double x) { return amp * std::exp(-x * x); });
                const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                double c2 = std::nan("");
                try {
                    c2 = fit_riccati_constant(series);
                } catch (const LabError&) {
                }
                const fs::path csv = fs::path(o.out) / ("series_" + std::to_string(index) + ".csv");
                const fs::path meta = fs::path(o.out) / ("series_" + std::to_string(index) + ".json");
                auto os = open_output(csv);
                write_csv(os, series);
                auto js = Json::parse(metadata_json(c, series, c2));
                js["wall_seconds"] = seconds;
                open_output(meta) << js.dump(2) << '\n';
                outputs.push_back(csv.string());
                outputs.push_back(meta.string());
                std::printf("gamma=%s kappa=%s alpha=%s: %zu records, stop=%s, C2=%s -> %s\n", fmt(g).c_str(),
                            fmt(k).c_str(), fmt(a).c_str(), series.records.size(),
                            js.value("stop_reason", std::string("?")).c_str(), fmt(c2).c_str(), csv.string().c_str());
                ++index;
            }
        }
    }
    manifest["outputs"] = outputs;
    return exit_holds;
}

int run_counterexample(const LabOptions& o, Json& manifest) {
    Json outputs = Json::array();
    std::vector<Verdict> verdicts;
    for (std::size_t i = 0; i < o.sigma.size(); ++i) {
        const auto ce = construct_counterexample(o.sigma[i]);
        const fs::path csv = fs::path(o.out) / ("counterexample_" + std::to_string(i) + ".csv");
        const fs::path meta = fs::path(o.out) / ("counterexample_" + std::to_string(i) + ".json");
        {
            // x >= 0 half of the support; both functions are even.
            auto os = open_output(csv);
            os << "x,phi_a,phi_b\n";
            const auto x = ce.phi_a.grid().nodes();
            char buf[96];
            for (std::size_t j = 0; j < x.size(); ++j) {
                if (x[j] < 0.0 || (ce.phi_a[j] == 0.0 && ce.phi_b[j] == 0.0)) continue;
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x[j], ce.phi_a[j], ce.phi_b[j]);
                os << buf;
            }
        }
        const bool negative = ce.functional_value < 0.0;
        const bool affine = ce.affine_residual <= 1e-6;
        Json js{{"sigma", o.sigma[i]},
                {"t", ce.t},
                {"x0", ce.x0},
                {"center_b", ce.center_b},
                {"radius_a", ce.radius_a},
                {"cross_term", ce.cross_term},
                {"cross_term_direct", ce.cross_term_direct},
                {"functional_value", ce.functional_value},
                {"functional_t", {ce.functional_t[0], ce.functional_t[1], ce.functional_t[2]}},
                {"affine_residual", ce.affine_residual},
                {"negative", negative},
                {"affine", affine}};
        open_output(meta) << js.dump(2) << '\n';
        outputs.push_back(csv.string());
        outputs.push_back(meta.string());
        verdicts.push_back(negative && affine ? Verdict::holds : Verdict::fails);
        std::printf("sigma=%s: t=%s functional=%s affine residual=%s -> %s\n", fmt(o.sigma[i]).c_str(),
                    fmt(ce.t).c_str(), fmt(ce.functional_value).c_str(), fmt(ce.affine_residual).c_str(),
                    meta.string().c_str());
    }
    manifest["outputs"] = outputs;
    return exit_for(verdicts);
}

int run_report(const LabOptions& o, Json& manifest) {
    const fs::path input = o.input.empty() ? fs::path(o.out) / "reports.jsonl" : fs::path(o.input);
    std::ifstream in(input);
    if (!in) throw UsageError("cannot read " + input.string());
    std::ostringstream table;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-14s %-28s %-30s %14s %14s %13s\n", "suite", "function", "check", "ratio",
                  "constant", "verdict");
    table << buf;
    std::size_t counts[3] = {0, 0, 0};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        Json j;
        try {
            j = Json::parse(line);
        } catch (const Json::parse_error&) {
            throw UsageError(input.string() + ":" + std::to_string(lineno) + ": not JSON");
        }
        auto num = [](const Json& v) { return v.is_number() ? fmt(v.get<double>()) : std::string("-"); };
        const std::string verdict = j.value("verdict", std::string("?"));
        if (verdict == "holds") ++counts[0];
        if (verdict == "fails") ++counts[1];
        if (verdict == "inconclusive") ++counts[2];
        std::snprintf(buf, sizeof buf, "%-14s %-28s %-30s %14s %14s %13s\n", j.value("suite", std::string()).c_str(),
                      j.value("function", std::string()).c_str(), j.value("name", std::string()).c_str(),
                      num(j["ratio"]).c_str(), num(j["stated_constant"]).c_str(), verdict.c_str());
        table << buf;
    }
    std::snprintf(buf, sizeof buf, "total: %zu holds, %zu fails, %zu inconclusive\n", counts[0], counts[1], counts[2]);
    table << buf;
    const fs::path out = fs::path(o.out) / "summary.txt";
    open_output(out) << table.str();
    std::cout << table.str();
    manifest["inputs"] = {input.string()};
    manifest["outputs"] = {out.string()};
    return exit_holds;
}

Json manifest_for(const LabOptions& o, const std::vector<std::string>& args) {
    Json m;
    m["command"] = o.command;
    m["argv"] = args;
    m["delta"] = o.delta;
    m["sigma"] = o.sigma;
    m["p"] = o.p;
    m["rtilde"] = o.rtilde;
    m["alpha"] = o.alpha;
    m["gamma"] = o.gamma;
    m["kappa"] = o.kappa;
    m["model"] = o.model;
    m["amp"] = o.amp;
    m["grid_size"] = o.grid_size;
    m["box"] = o.box;
    m["t_end"] = o.t_end;
    m["seed"] = o.seed;
    m["out"] = o.out;
    m["only"] = o.only.empty() ? kSuites : o.only;
    m["threads"] = o.threads;
    const auto& graded = *default_graded_grid();
    const auto& periodic = *default_periodic_embedding();
    const SimulationConfig sim;
    m["fixed"] = {{"graded_points", graded.size()},
                  {"graded_half_length", graded.half_length()},
                  {"periodic_points", periodic.size()},
                  {"periodic_half_length", periodic.half_length()},
                  {"seeded_members", o.seed == 0 ? 0 : 4},
                  {"radial_dimensions", {2, 3}},
                  {"sim_dt_max", sim.dt_initial},
                  {"sim_cfl_safety", sim.cfl_safety},
                  {"sim_output_interval", sim.output_interval},
                  {"sim_resolution_tol", sim.resolution_tol},
                  {"sim_dealias", sim.dealias},
                  {"counterexample_affine_tol", 1e-6}};
    return m;
}

}  // namespace

int run_command(const std::vector<std::string>& args) {
    LabOptions o;
    CLI::App app{"Numerical laboratory for nonlocal transport inequalities", "nonlocal_lab"};
    app.require_subcommand(1, 1);
    auto list = [&](const char* name, std::vector<double>& v, const char* help) {
        return app.add_option(name, v, help)->delimiter(',')->expected(1, -1);
    };
    list("--delta", o.delta, "delta values (comma separated)");
    list("--sigma", o.sigma, "sigma values");
    list("--p", o.p, "p values (Hardy and Kiselev)");
    list("--rtilde", o.rtilde, "r-tilde values (Hardy)");
    list("--alpha", o.alpha, "alpha values");
    auto* gamma = list("--gamma", o.gamma, "dissipation orders");
    auto* kappa = list("--kappa", o.kappa, "dissipation coefficients");
    app.add_option("--model", o.model, "hilbert_transport | reversed_hilbert | alpha_model (aliases ccf, section4, alpha)");
    app.add_option("--amp", o.amp, "amplitude of the Gaussian initial datum");
    app.add_option("--grid-size", o.grid_size, "simulation grid points (power of two)");
    app.add_option("--box", o.box, "simulation half-box length");
    app.add_option("--t-end", o.t_end, "simulation end time");
    app.add_option("--seed", o.seed, "adds seeded random dilations to the test families (0: none)");
    app.add_option("--out", o.out, "output directory");
    app.add_option("--only", o.only, "verify: restrict to these suites")->delimiter(',');
    app.add_option("--input", o.input, "report: JSONL file (default <out>/reports.jsonl)");
    for (const char* name : {"verify", "simulate", "counterexample", "report"}) {
        app.add_subcommand(name)->fallthrough();
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e) == 0 ? exit_holds : exit_usage;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }
    o.command = app.get_subcommands().front()->get_name();
    if (gamma->count() == 0) o.gamma = {o.command == "simulate" ? 1.0 : 0.5};
    if (kappa->count() == 0) o.kappa = {o.command == "simulate" ? 1.0 : 0.0};
    try {
        o.threads = thread_cap();
        fs::create_directories(o.out);
        Json manifest = manifest_for(o, args);
        int code = exit_usage;
        if (o.command == "verify") code = run_verify(o, manifest);
        if (o.command == "simulate") code = run_simulate(o, manifest);
        if (o.command == "counterexample") code = run_counterexample(o, manifest);
        if (o.command == "report") code = run_report(o, manifest);
        manifest["exit_code"] = code;
        open_output(fs::path(o.out) / "manifest.json") << manifest.dump(2) << '\n';
        return code;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const LabError& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (parameter_error(e.kind())) return exit_usage;
        return exit_inconclusive;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

int run_command(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_command(args);
}

}  // namespace nonlocal
