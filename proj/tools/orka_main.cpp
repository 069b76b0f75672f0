// orka-cli: generation, extraction, benchmarks and oracle comparisons on top
// of the shared library's C interface.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orka.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadArgs = 2;
constexpr int kExitBudget = 3;
constexpr int kExitIo = 4;

struct MatrixDeleter {
    void operator()(orka_matrix* m) const { orka_matrix_free(m); }
};
struct ObjectDeleter {
    void operator()(orka_object* o) const { orka_object_free(o); }
};
using MatrixPtr = std::unique_ptr<orka_matrix, MatrixDeleter>;
using ObjectPtr = std::unique_ptr<orka_object, ObjectDeleter>;

int exit_code(orka_status st) {
    switch (st) {
        case ORKA_OK: return kExitOk;
        case ORKA_E_BUDGET: return kExitBudget;
        case ORKA_E_IO: return kExitIo;
        default: return kExitBadArgs;
    }
}

// fails the whole run with the library's error message on any bad status
void check(orka_status st, const std::string& where) {
    if (st == ORKA_OK) return;
    std::cerr << "orka-cli: " << where << ": " << orka_last_error() << "\n";
    std::exit(exit_code(st));
}

struct CommonOpts {
    std::string mu_text = "1";
    long c = 1;
    std::size_t k = 4;
    std::size_t objects = 1;
    int dims = 1;
    std::uint64_t seed = 1;
    int workers = 1;
    std::uint64_t node_budget = 0;  // 0 = library default
    std::string format = "csv";
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_out = true) {
    static std::string config_doc;  // handled before CLI11 parsing
    cmd->add_option("--config", config_doc, "plain key=value file; explicit flags win");
    cmd->add_option("--mu", o.mu_text, "regularization weight, a float or \"inf\"");
    cmd->add_option("--c", o.c, "Lipschitz bound per step");
    cmd->add_option("--k", o.k, "correlation band width K");
    cmd->add_option("--objects", o.objects, "number of objects to extract");
    cmd->add_option("--dims", o.dims, "1 for signals, 2 for video frames");
    cmd->add_option("--seed", o.seed, "seed for all stochastic generation");
    cmd->add_option("--workers", o.workers, "worker threads for correlation");
    cmd->add_option("--node-budget", o.node_budget, "graph per-partition node cap");
    cmd->add_option("--format", o.format, "output matrix format")
        ->check(CLI::IsMember({"csv", "bin"}));
    if (with_out) cmd->add_option("--out", o.out, "output path or prefix")->required();
}

double parse_mu(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF") return orka_mu_infinity();
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || v < 0.0 || std::isnan(v)) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        std::cerr << "orka-cli: --mu must be a nonnegative float or \"inf\", got \""
                  << text << "\"\n";
        std::exit(kExitBadArgs);
    }
}

int format_id(const std::string& f) { return f == "bin" ? 2 : 1; }
std::string format_ext(const std::string& f) { return f == "bin" ? ".bin" : ".csv"; }

orka_params make_params(const CommonOpts& o) {
    orka_params p;
    orka_params_init(&p);
    p.mu = parse_mu(o.mu_text);
    p.lipschitz = o.c;
    p.k_band = o.k;
    p.dims = o.dims;
    p.workers = o.workers;
    p.node_budget = o.node_budget;
    return p;
}

MatrixPtr load(const std::string& path) {
    orka_matrix* m = nullptr;
    check(orka_matrix_load(path.c_str(), 0, &m), "reading " + path);
    return MatrixPtr(m);
}

void save(const orka_matrix* m, const std::string& path, const std::string& fmt) {
    check(orka_matrix_save(m, path.c_str(), format_id(fmt)), "writing " + path);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out || !(out << text).flush()) {
        std::cerr << "orka-cli: cannot write " << path << "\n";
        std::exit(kExitIo);
    }
}

void write_shifts(const std::string& path, const ObjectPtr& obj, int dims) {
    std::size_t n = 0;
    orka_object_shifts(obj.get(), nullptr, nullptr, &n);
    std::vector<long> x(n), y(dims == 2 ? n : 0);
    check(orka_object_shifts(obj.get(), x.data(), dims == 2 ? y.data() : nullptr, &n),
          "reading shifts");
    std::ostringstream csv;
    for (std::size_t j = 0; j < n; ++j) {
        csv << x[j];
        if (dims == 2) csv << ',' << y[j];
        csv << '\n';
    }
    write_file(path, csv.str());
}

std::string run_report(const CommonOpts& o, const std::vector<ObjectPtr>& objects,
                       const std::vector<std::string>& extra = {}) {
    std::ostringstream rep;
    rep << "mu: " << o.mu_text << "\n"
        << "c: " << o.c << "\n"
        << "k: " << o.k << "\n"
        << "objects: " << o.objects << "\n"
        << "dims: " << o.dims << "\n"
        << "seed: " << o.seed << "\n"
        << "workers: " << o.workers << "\n"
        << "node_budget: " << o.node_budget << "\n"
        << "format: " << o.format << "\n";
    for (std::size_t i = 0; i < objects.size(); ++i) {
        const auto& obj = objects[i];
        const std::string tag = "object" + std::to_string(i + 1) + "_";
        rep << tag << "objective: " << orka_object_objective(obj.get()) << "\n"
            << tag << "tau: " << orka_object_tau(obj.get()) << "\n"
            << tag << "nodes_per_partition: " << orka_object_nodes_per_partition(obj.get())
            << "\n"
            << tag << "seconds_correlate: " << orka_object_stage_seconds(obj.get(), 0) << "\n"
            << tag << "seconds_kernel: " << orka_object_stage_seconds(obj.get(), 1) << "\n"
            << tag << "seconds_graph: " << orka_object_stage_seconds(obj.get(), 2) << "\n"
            << tag << "seconds_solve: " << orka_object_stage_seconds(obj.get(), 3) << "\n";
    }
    for (const auto& line : extra) rep << line << "\n";
    return rep.str();
}

// mean graph-stage seconds; repeats cheap runs so short timings stay stable
double timed_graph_seconds(const orka_matrix* d, const orka_params& p) {
    double total = 0.0;
    int reps = 0;
    while (reps < 64 && (reps == 0 || total < 0.1)) {
        orka_object* o = nullptr;
        check(orka_extract(d, &p, &o), "extract (benchmark)");
        total += orka_object_stage_seconds(o, 2);
        orka_object_free(o);
        ++reps;
    }
    return total / reps;
}

// ---- subcommand bodies ------------------------------------------------------

int cmd_gen_gap(const CommonOpts& o) {
    orka_matrix* m = nullptr;
    check(orka_gen_gap_matrix(&m), "gen-gap");
    MatrixPtr guard(m);
    save(m, o.out, o.format);
    return kExitOk;
}

struct SceneOpts {
    std::size_t rows = 128, cols = 32;
    double velocity = 1.0, width = 4.0, drift = 0.0;
    double noise_psnr = 0.0;
    bool add_noise = false;
};

int cmd_gen_scene(const CommonOpts& o, const SceneOpts& s) {
    orka_matrix *data = nullptr, *clean = nullptr;
    std::vector<long> truth(s.cols);
    check(orka_gen_pulse_scene(s.rows, s.cols, s.velocity, s.width, s.drift,
                               s.add_noise ? 1 : 0, s.noise_psnr, o.seed, &data, &clean,
                               truth.data()),
          "gen-scene");
    MatrixPtr dguard(data), cguard(clean);

    save(data, o.out, o.format);
    const std::string stem = o.out.substr(0, o.out.find_last_of('.'));
    save(clean, stem + "_clean" + format_ext(o.format), o.format);
    std::ostringstream csv;
    for (long v : truth) csv << v << '\n';
    write_file(stem + "_truth.csv", csv.str());
    return kExitOk;
}

int cmd_extract(const CommonOpts& o, const std::string& in, std::size_t iterations) {
    MatrixPtr d = load(in);
    std::vector<orka_params> params(iterations, make_params(o));
    std::vector<orka_object*> raw(iterations, nullptr);
    orka_matrix* residual = nullptr;
    check(orka_decompose(d.get(), params.data(), iterations, raw.data(), &residual),
          "extract");
    MatrixPtr rguard(residual);
    std::vector<ObjectPtr> objects;
    for (auto* p : raw) objects.emplace_back(p);

    const std::string ext = format_ext(o.format);
    for (std::size_t i = 0; i < objects.size(); ++i) {
        const std::string tag = iterations == 1 ? "" : "_" + std::to_string(i + 1);
        save(orka_object_u(objects[i].get()), o.out + "_u" + tag + ext, o.format);
        write_shifts(o.out + "_lambda" + tag + ".csv", objects[i], o.dims);
    }
    save(residual, o.out + "_residual" + ext, o.format);
    write_file(o.out + "_report.txt", run_report(o, objects, {"input: " + in}));
    return kExitOk;
}

int cmd_denoise(const CommonOpts& o, const std::string& in) {
    MatrixPtr d = load(in);
    std::vector<orka_params> params(o.objects, make_params(o));
    std::vector<orka_object*> raw(o.objects, nullptr);
    check(orka_decompose(d.get(), params.data(), o.objects, raw.data(), nullptr),
          "denoise");
    std::vector<ObjectPtr> objects;
    for (auto* p : raw) objects.emplace_back(p);

    // denoised = sum of the objects' contributions
    orka_matrix* acc = nullptr;
    check(orka_object_contribution(objects[0].get(), &acc), "denoise");
    MatrixPtr sum(acc);
    const std::size_t total = orka_matrix_rows(acc) * orka_matrix_cols(acc);
    for (std::size_t i = 1; i < objects.size(); ++i) {
        orka_matrix* contrib = nullptr;
        check(orka_object_contribution(objects[i].get(), &contrib), "denoise");
        MatrixPtr cguard(contrib);
        const double* src = orka_matrix_data_const(contrib);
        double* dst = orka_matrix_data(sum.get());
        for (std::size_t j = 0; j < total; ++j) dst[j] += src[j];
    }
    save(sum.get(), o.out, o.format);
    write_file(o.out + ".report.txt", run_report(o, objects, {"input: " + in}));
    return kExitOk;
}

int cmd_psnr(const std::string& ref_path, const std::string& x_path) {
    MatrixPtr ref = load(ref_path), x = load(x_path);
    double db = 0.0;
    check(orka_psnr(ref.get(), x.get(), &db), "psnr");
    std::cout << db << "\n";
    return kExitOk;
}

int cmd_bench_k(const CommonOpts& o, std::size_t kmin, std::size_t kmax,
                std::size_t rows, std::size_t cols) {
    orka_matrix* d = nullptr;
    check(orka_gen_random(rows, cols, o.seed, 1, &d), "bench-k");
    MatrixPtr guard(d);
    std::ostringstream csv;
    csv << "k,seconds\n";
    for (std::size_t k = kmin; k <= kmax; ++k) {
        orka_params p = make_params(o);
        p.k_band = k;
        csv << k << ',' << timed_graph_seconds(d, p) << '\n';
    }
    write_file(o.out, csv.str());
    return kExitOk;
}

int cmd_bench_n(const CommonOpts& o, std::size_t nmin, std::size_t nmax, std::size_t rows) {
    std::ostringstream csv;
    csv << "n,seconds\n";
    for (std::size_t n = nmin; n <= nmax; n *= 2) {
        orka_matrix* d = nullptr;
        check(orka_gen_random(rows, n, o.seed, 1, &d), "bench-n");
        MatrixPtr guard(d);
        csv << n << ',' << timed_graph_seconds(d, make_params(o)) << '\n';
    }
    write_file(o.out, csv.str());
    return kExitOk;
}

int cmd_compare_oracle(const CommonOpts& o, std::size_t size, std::size_t trials,
                       const std::vector<std::string>& mus) {
    std::ostringstream csv;
    csv << "mu,k,mean_error\n";
    for (const auto& mu_text : mus) {
        const double mu = parse_mu(mu_text);
        std::vector<double> err(size - 1, 0.0);  // K = 1 .. N-1
        for (std::size_t t = 0; t < trials; ++t) {
            orka_matrix* d = nullptr;
            check(orka_gen_random(size, size, o.seed + t, 1, &d), "compare-oracle");
            MatrixPtr guard(d);

            double best_tau = 0.0;
            check(orka_brute_force(d, mu, o.c, size - 1, 1, 0, nullptr, nullptr, &best_tau),
                  "compare-oracle (brute force)");

            for (std::size_t k = 1; k < size; ++k) {
                orka_params p = make_params(o);
                p.mu = mu;
                p.k_band = k;
                orka_object* obj = nullptr;
                check(orka_extract(d, &p, &obj), "compare-oracle (extract)");
                ObjectPtr oguard(obj);
                // shifts found under truncation, scored against the optimum
                // of the untruncated objective
                std::size_t n = 0;
                orka_object_shifts(obj, nullptr, nullptr, &n);
                std::vector<long> x(n);
                orka_object_shifts(obj, x.data(), nullptr, &n);
                double tau_at = 0.0;
                check(orka_tau(d, mu, o.c, size - 1, 1, x.data(), nullptr, &tau_at),
                      "compare-oracle (tau)");
                err[k - 1] += best_tau - tau_at;
            }
        }
        for (std::size_t k = 1; k < size; ++k)
            csv << mu_text << ',' << k << ',' << err[k - 1] / trials << '\n';
    }
    write_file(o.out, csv.str());
    return kExitOk;
}

}  // namespace

// Expands --config FILE into --key value tokens for every key=value line in
// the file, skipping keys the user passed explicitly so flags always win.
std::vector<std::string> apply_config(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string cfg;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) cfg = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) cfg = args[i].substr(9);
    }
    if (cfg.empty()) return args;

    std::ifstream in(cfg);
    if (!in) {
        std::cerr << "orka-cli: cannot read config file " << cfg << "\n";
        std::exit(kExitIo);
    }
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::cerr << "orka-cli: config line without '=': " << line << "\n";
            std::exit(kExitBadArgs);
        }
        const std::string key = "--" + line.substr(0, eq);
        bool given = false;
        for (const auto& a : args)
            if (a == key || a.rfind(key + "=", 0) == 0) given = true;
        if (!given) {
            args.push_back(key);
            args.push_back(line.substr(eq + 1));
        }
    }
    return args;
}

int main(int argc, char** argv) {
    CLI::App app{"ORKA object reconstruction toolkit"};
    app.require_subcommand(1);

    CommonOpts o;
    SceneOpts scene;
    std::string in, ref_path, x_path;
    std::size_t kmin = 3, kmax = 8, bench_rows = 64, bench_cols = 64;
    std::size_t nmin = 16, nmax = 128;
    std::size_t oracle_size = 8, trials = 20;
    std::vector<std::string> mus = {"0.1", "1"};

    auto* gen_gap = app.add_subcommand("gen-gap", "write the gap test matrix");
    add_common(gen_gap, o);

    auto* gen_scene = app.add_subcommand("gen-scene", "write a synthetic pulse scene");
    add_common(gen_scene, o);
    gen_scene->add_option("--rows", scene.rows, "samples per measurement");
    gen_scene->add_option("--cols", scene.cols, "number of measurements");
    gen_scene->add_option("--velocity", scene.velocity, "pulse samples per measurement");
    gen_scene->add_option("--width", scene.width, "pulse width");
    gen_scene->add_option("--drift", scene.drift, "amplitude/width drift factor");
    auto* noise_opt = gen_scene->add_option("--noise-psnr", scene.noise_psnr,
                                            "add noise at this PSNR (dB)");

    auto* extract = app.add_subcommand("extract", "recover one object");
    add_common(extract, o);
    extract->add_option("--in", in, "input matrix file")->required();

    auto* decompose = app.add_subcommand("decompose", "peel several objects");
    add_common(decompose, o);
    decompose->add_option("--in", in, "input matrix file")->required();

    auto* denoise = app.add_subcommand("denoise", "reassemble input from extracted objects");
    add_common(denoise, o);
    denoise->add_option("--in", in, "input matrix file")->required();

    auto* psnr = app.add_subcommand("psnr", "print PSNR of a file against a reference");
    psnr->add_option("--ref", ref_path, "reference matrix file")->required();
    psnr->add_option("--in", x_path, "matrix file under test")->required();

    auto* bench_k = app.add_subcommand("bench-k", "graph-stage seconds per K");
    add_common(bench_k, o);
    bench_k->add_option("--kmin", kmin);
    bench_k->add_option("--kmax", kmax);
    bench_k->add_option("--rows", bench_rows);
    bench_k->add_option("--cols", bench_cols);

    auto* bench_n = app.add_subcommand("bench-n", "graph-stage seconds per N (doubling)");
    add_common(bench_n, o);
    bench_n->add_option("--nmin", nmin);
    bench_n->add_option("--nmax", nmax);
    bench_n->add_option("--rows", bench_rows);

    auto* cmp = app.add_subcommand("compare-oracle",
                                   "mean truncation error against brute force");
    add_common(cmp, o);
    cmp->add_option("--size", oracle_size, "square matrix side N");
    cmp->add_option("--trials", trials, "random trials per mu");
    cmp->add_option("--mus", mus, "mu values to sweep")->delimiter(',');

    const std::vector<std::string> args = apply_config(argc, argv);
    std::vector<const char*> argp;
    argp.reserve(args.size());
    for (const auto& a : args) argp.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argp.size()), argp.data());
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitBadArgs;
    }

    scene.add_noise = noise_opt->count() > 0;

    if (gen_gap->parsed()) return cmd_gen_gap(o);
    if (gen_scene->parsed()) return cmd_gen_scene(o, scene);
    if (extract->parsed()) return cmd_extract(o, in, 1);
    if (decompose->parsed()) return cmd_extract(o, in, o.objects);
    if (denoise->parsed()) return cmd_denoise(o, in);
    if (psnr->parsed()) return cmd_psnr(ref_path, x_path);
    if (bench_k->parsed()) return cmd_bench_k(o, kmin, kmax, bench_rows, bench_cols);
    if (bench_n->parsed()) return cmd_bench_n(o, nmin, nmax, bench_rows);
    if (cmp->parsed()) return cmd_compare_oracle(o, oracle_size, trials, mus);
    return kExitBadArgs;
}
