#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ssdlab/bench.hpp"
#include "ssdlab/duality.hpp"
#include "ssdlab/io.hpp"
#include "ssdlab/limits.hpp"
#include "ssdlab/ss_matrix.hpp"
#include "ssdlab/ssm.hpp"
#include "ssdlab/sss_extract.hpp"

namespace ssd::cli {

namespace {

using io::Json;

/// Options shared by every subcommand.
struct RunConfig {
    std::optional<std::uint64_t> seed;
    double eps = linalg::default_eps;
    std::string out;
    std::string format;
};

void add_common(CLI::App& cmd, RunConfig& cfg, const std::string& default_format,
                const std::vector<std::string>& formats)
{
    cmd.add_option("--seed", cfg.seed, "Seed for randomized inputs");
    cmd.add_option("--eps", cfg.eps, "Relative tolerance for rank and span decisions")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--out", cfg.out, "Output path (stdout when omitted)");
    cfg.format = default_format;
    cmd.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember(formats));
}

std::uint64_t require_seed(const RunConfig& cfg, const char* command)
{
    if (!cfg.seed) {
        throw Error(Errc::invalid_argument, std::string(command) + " needs --seed for random inputs");
    }
    return *cfg.seed;
}

/// Worker cap from SSD_LAB_THREADS, if set to a positive integer.
std::size_t cap_workers(std::size_t requested)
{
    if (const char* env = std::getenv("SSD_LAB_THREADS")) {
        char* end = nullptr;
        const unsigned long cap = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) {
            return std::min<std::size_t>(requested, cap);
        }
    }
    return requested;
}

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out)
{
    if (cfg.out.empty()) {
        out << content;
    } else {
        io::write_file_atomic(cfg.out, content);
    }
}

int exit_code_for(Errc code)
{
    switch (code) {
    case Errc::invalid_argument:
    case Errc::shape_mismatch:
    case Errc::size_exceeded:
    case Errc::parse_error:
    case Errc::degenerate_grid:
        return exit_input_error;
    case Errc::not_scalar_identity:
    case Errc::zero_gain:
    case Errc::unstable_scaling:
    case Errc::rank_exceeds_n:
        return exit_precondition;
    case Errc::not_representable:
    case Errc::reconstruction_failure:
    case Errc::inconsistent_transition:
        return exit_property_failure;
    }
    return exit_input_error;
}

std::string fixed(double v, int digits = 3)
{
    std::ostringstream s;
    s << std::setprecision(digits) << std::scientific << v;
    return s.str();
}

// ---------------------------------------------------------------- gen

struct GenArgs {
    RunConfig cfg;
    std::string kind;
    std::size_t steps = 0;
    std::size_t state_dim = 1;
    std::size_t channels = 1;
    double gain_min = 0.0;
    double gain_max = 1.0;
    bool unsigned_gains = false;
    bool scalar_identity = false;
};

int cmd_gen(const GenArgs& a, std::ostream& out)
{
    if (a.steps == 0) {
        throw Error(Errc::invalid_argument, "gen needs --T >= 1");
    }
    InstanceSpec spec;
    spec.steps = a.steps;
    spec.state_dim = a.state_dim;
    spec.channels = a.channels;
    spec.gain_min_abs = a.gain_min;
    spec.gain_max_abs = a.gain_max;
    spec.signed_gains = !a.unsigned_gains;
    spec.scalar_identity = a.scalar_identity;

    auto emit_matrix = [&](const LowerTriangularMatrix& m) {
        emit(a.cfg, a.cfg.format == "csv" ? io::matrix_to_csv(m.dense()) : io::dump(io::to_json(m)), out);
    };

    if (a.kind == "ssm") {
        if (a.cfg.format == "csv") {
            throw Error(Errc::invalid_argument, "models are written as JSON only");
        }
        emit(a.cfg, io::dump(io::to_json(random_diagonal_ssm(require_seed(a.cfg, "gen ssm"), spec))), out);
    } else if (a.kind == "sequence") {
        const SequenceData x = random_sequence(require_seed(a.cfg, "gen sequence"), a.steps, a.channels);
        emit(a.cfg, a.cfg.format == "csv" ? io::matrix_to_csv(x) : io::dump(io::sequence_to_json(x)), out);
    } else if (a.kind == "kernel") {
        emit_matrix(materialize_kernel(random_diagonal_ssm(require_seed(a.cfg, "gen kernel"), spec)));
    } else if (a.kind == "one-ss") {
        spec.state_dim = 1;
        const DiagonalSsm gains = random_diagonal_ssm(require_seed(a.cfg, "gen one-ss"), spec);
        MaskVector mask;
        for (std::size_t t = 0; t < a.steps; ++t) {
            mask.a.push_back(gains.gains()(t, 0));
        }
        emit_matrix(one_ss(mask));
    } else if (a.kind == "sss") {
        emit_matrix(materialize_sss(random_sss_representation(require_seed(a.cfg, "gen sss"), a.steps, a.state_dim)));
    } else if (a.kind == "non-dualizable") {
        emit_matrix(non_dualizable_matrix(a.steps));
    } else if (a.kind == "identity") {
        emit_matrix(identity_matrix(a.steps));
    }
    return exit_pass;
}

// ---------------------------------------------------------------- forward

struct ForwardArgs {
    RunConfig cfg;
    std::string ssm_path;
    std::string x_path;
    std::string path = "all";
    std::size_t steps = 0;
    std::size_t state_dim = 4;
    std::size_t channels = 1;
    std::size_t workers = 1;
    double gain_max = 1.0;
};

int cmd_forward(const ForwardArgs& a, std::ostream& out)
{
    std::optional<DiagonalSsm> ssm;
    if (!a.ssm_path.empty()) {
        ssm = io::load_ssm(a.ssm_path);
    } else {
        if (a.steps == 0) {
            throw Error(Errc::invalid_argument, "forward needs --ssm or --T/--N/--d with --seed");
        }
        InstanceSpec spec;
        spec.steps = a.steps;
        spec.state_dim = a.state_dim;
        spec.channels = a.channels;
        spec.gain_max_abs = a.gain_max;
        ssm = random_diagonal_ssm(require_seed(a.cfg, "forward"), spec);
    }
    SequenceData x;
    if (!a.x_path.empty()) {
        x = io::load_sequence(a.x_path);
    } else {
        x = random_sequence(require_seed(a.cfg, "forward") + 1, ssm->steps(), a.channels);
    }
    check_sequence(*ssm, x);
    const SsdOptions ssd_options{kernels::SsdSchedule::staged, cap_workers(std::max<std::size_t>(1, a.workers))};

    auto run_path = [&](const std::string& name) -> SequenceData {
        if (name == "recurrence") return forward_recurrence(*ssm, x);
        if (name == "ssd") return forward_ssd(*ssm, x, ssd_options);
        return forward_materialized(*ssm, x);
    };

    if (a.path != "all") {
        const SequenceData y = run_path(a.path);
        if (a.cfg.format == "csv") {
            emit(a.cfg, io::matrix_to_csv(y), out);
        } else if (a.cfg.format == "pretty") {
            std::ostringstream s;
            s << "path " << a.path << "  T=" << y.rows() << " d=" << y.cols()
              << "  ||Y||_F=" << fixed(frobenius_norm(y)) << '\n';
            emit(a.cfg, s.str(), out);
        } else {
            emit(a.cfg, io::dump(io::sequence_to_json(y, "Y")), out);
        }
        return exit_pass;
    }

    if (a.cfg.format == "csv") {
        throw Error(Errc::invalid_argument, "--path all writes JSON or pretty output");
    }
    const std::vector<std::string> names{"recurrence", "ssd", "materialized"};
    std::vector<SequenceData> ys;
    for (const std::string& name : names) {
        ys.push_back(run_path(name));
    }
    Json pairs = Json::object();
    double worst = 0.0;
    for (std::size_t i = 0; i < names.size(); ++i) {
        for (std::size_t j = i + 1; j < names.size(); ++j) {
            const double e = relative_error(ys[i], ys[j]);
            worst = std::max(worst, e);
            pairs[names[i] + "/" + names[j]] = e;
        }
    }
    const bool agree = worst <= a.cfg.eps;
    if (a.cfg.format == "pretty") {
        std::ostringstream s;
        s << "pair                      relative error\n";
        for (const auto& [key, value] : pairs.items()) {
            s << std::left << std::setw(26) << key << fixed(value.get<double>()) << '\n';
        }
        s << "max pairwise error " << fixed(worst) << (agree ? "  (within eps)" : "  (exceeds eps)") << '\n';
        emit(a.cfg, s.str(), out);
    } else {
        Json j;
        Json outputs = Json::object();
        for (std::size_t i = 0; i < names.size(); ++i) {
            outputs[names[i]] = io::rows_to_json(ys[i]);
        }
        j["Y"] = std::move(outputs);
        j["pairwise_relative_error"] = std::move(pairs);
        j["max_pairwise_relative_error"] = worst;
        j["eps"] = a.cfg.eps;
        j["agree"] = agree;
        emit(a.cfg, io::dump(j), out);
    }
    return agree ? exit_pass : exit_property_failure;
}

// ---------------------------------------------------------------- check-dual

struct CheckDualArgs {
    RunConfig cfg;
    std::string mode = "representability";
    std::string matrix_path;
    std::string ssm_path;
    std::string factors_out;
    std::size_t state_dim = 0;
    double tol = 1e-8;
};

int cmd_check_dual(const CheckDualArgs& a, std::ostream& out)
{
    Json report;
    report["mode"] = a.mode;
    int code = exit_pass;
    std::optional<MaskedAttentionFactors> factors;

    if (a.mode == "representability") {
        std::optional<LowerTriangularMatrix> m;
        if (!a.matrix_path.empty()) {
            m = io::load_matrix(a.matrix_path);
        } else if (!a.ssm_path.empty()) {
            m = materialize_kernel(io::load_ssm(a.ssm_path));
        } else {
            throw Error(Errc::invalid_argument, "representability needs --matrix or --ssm");
        }
        if (a.state_dim == 0) {
            throw Error(Errc::invalid_argument, "representability needs --N >= 1");
        }
        const RepresentabilityReport rep = check_one_ss_dual(*m, a.state_dim, a.cfg.eps);
        report["report"] = io::to_json(rep);
        if (rep.representable) {
            factors = construct_one_ss_dual(*m, a.state_dim, a.cfg.eps);
            report["residual"] = relative_error(materialize_factors(*factors).dense(), m->dense());
        } else {
            code = exit_property_failure;
        }
    } else {
        if (a.ssm_path.empty()) {
            throw Error(Errc::invalid_argument, a.mode + " needs --ssm");
        }
        const DiagonalSsm ssm = io::load_ssm(a.ssm_path);
        factors = a.mode == "scalar-identity" ? scalar_identity_dual(ssm) : full_rank_one_ss_dual(ssm);
        const double residual = relative_error(materialize_factors(*factors).dense(), materialize_kernel(ssm).dense());
        report["residual"] = residual;
        report["tolerance"] = a.tol;
        if (!(residual <= a.tol)) {
            code = exit_property_failure;
        }
    }

    if (factors && !a.factors_out.empty()) {
        io::write_file_atomic(a.factors_out, io::dump(io::to_json(*factors)));
    }
    report["pass"] = code == exit_pass;

    if (a.cfg.format == "pretty") {
        std::ostringstream s;
        s << "mode " << a.mode << '\n';
        if (report.contains("report")) {
            for (const Json& b : report["report"]["blocks"]) {
                s << "  block [" << b["start"].get<std::size_t>() << ", " << b["end"].get<std::size_t>()
                  << "]  new columns " << b["new_columns"].get<std::size_t>() << '\n';
            }
            s << "representable " << (report["report"]["representable"].get<bool>() ? "yes" : "no") << '\n';
        }
        if (report.contains("residual")) {
            s << "residual " << fixed(report["residual"].get<double>()) << '\n';
        }
        emit(a.cfg, s.str(), out);
    } else {
        emit(a.cfg, io::dump(report), out);
    }
    return code;
}

// ---------------------------------------------------------------- extract

struct ExtractArgs {
    RunConfig cfg;
    std::string matrix_path;
    std::size_t state_dim = 0;
};

int cmd_extract(const ExtractArgs& a, std::ostream& out)
{
    if (a.state_dim == 0) {
        throw Error(Errc::invalid_argument, "extract needs --N >= 1");
    }
    const LowerTriangularMatrix m = io::load_matrix(a.matrix_path);
    const GeneralSssRepresentation rep = extract_sss(m, a.state_dim, a.cfg.eps);
    Json report;
    report["T"] = m.size();
    report["N"] = a.state_dim;
    report["semiseparable_rank"] = semiseparable_rank(m, a.cfg.eps);
    report["ranks"] = rep.ranks;
    report["relative_residual"] = relative_error(materialize_sss(rep).dense(), m.dense());

    if (a.cfg.out.empty()) {
        Json j;
        j["report"] = std::move(report);
        j["representation"] = io::to_json(rep);
        out << io::dump(j);
    } else {
        io::write_file_atomic(a.cfg.out, io::dump(io::to_json(rep)));
        out << io::dump(report);
    }
    return exit_pass;
}

// ---------------------------------------------------------------- counterexample

struct CounterexampleArgs {
    RunConfig cfg;
    std::string kind;
    std::size_t steps = 5;
    std::size_t state_dim = 2;
};

std::string table(const CounterexampleReport& r)
{
    std::ostringstream s;
    s << r.name << "  (T=" << r.steps << ")\n" << "claim: " << r.claim << '\n';
    for (const auto& [key, value] : r.measurements) {
        s << "  " << std::left << std::setw(42) << key << std::setprecision(12) << value << '\n';
    }
    s << "applicable: " << (r.applicable ? "yes" : "no") << '\n'
      << "verdict: " << (r.verdict ? "PASS" : "FAIL") << '\n';
    return s.str();
}

int cmd_counterexample(const CounterexampleArgs& a, std::ostream& out)
{
    const CounterexampleReport report = a.kind == "softmax" ? softmax_counterexample(a.steps)
                                                             : verify_non_dualizable(a.steps, a.state_dim);
    emit(a.cfg, a.cfg.format == "json" ? io::dump(io::to_json(report)) : table(report), out);
    if (!report.applicable) {
        return exit_precondition;
    }
    return report.verdict ? exit_pass : exit_property_failure;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
    RunConfig cfg;
    std::string path = "ssd";
    std::vector<std::string> grid;
    std::string summary_path;
    bool timing = false;
    std::size_t workers = 0;
};

std::vector<std::size_t> parse_axis(const std::string& values)
{
    std::vector<std::size_t> out;
    std::stringstream s(values);
    std::string item;
    while (std::getline(s, item, ',')) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(item, &used);
            if (used != item.size() || v <= 0) {
                throw std::invalid_argument(item);
            }
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw Error(Errc::parse_error, "grid values must be positive integers: '" + item + "'");
        }
    }
    return out;
}

bench::ScalingGrid parse_grid(const std::vector<std::string>& specs)
{
    bench::ScalingGrid grid{{64}, {4}, {2}};
    for (const std::string& spec : specs) {
        std::stringstream s(spec);
        std::string axis;
        while (std::getline(s, axis, ';')) {
            const auto eq = axis.find('=');
            if (eq == std::string::npos) {
                throw Error(Errc::parse_error, "grid axis must look like T=64,128,256");
            }
            const std::string name = axis.substr(0, eq);
            std::vector<std::size_t> values = parse_axis(axis.substr(eq + 1));
            if (name == "T") {
                grid.steps = std::move(values);
            } else if (name == "N") {
                grid.state_dims = std::move(values);
            } else if (name == "d") {
                grid.channels = std::move(values);
            } else {
                throw Error(Errc::parse_error, "unknown grid axis '" + name + "'");
            }
        }
    }
    return grid;
}

int cmd_bench(const BenchArgs& a, std::ostream& out)
{
    const std::uint64_t seed = require_seed(a.cfg, "bench");
    const bench::ExecutionPath path = bench::parse_path(a.path);
    const bench::ScalingResult result = bench::scaling_experiment(parse_grid(a.grid), path, seed);
    Json summary = io::scaling_summary(result);

    if (a.timing) {
        Json timings = Json::array();
        for (const bench::FlopReport& row : result.rows) {
            const bench::FlopReport timed = bench::count_flops(path, row.dims, seed, row.schedule, true);
            Json t;
            t["T"] = row.dims.steps;
            t["N"] = row.dims.state_dim;
            t["d"] = row.dims.channels;
            t["wall_seconds"] = *timed.wall_seconds;
            timings.push_back(std::move(t));
        }
        summary["timings"] = std::move(timings);
        if (path == bench::ExecutionPath::ssd && a.workers > 0) {
            const bench::FlopReport& last = result.rows.back();
            const std::size_t workers =
                cap_workers(std::min(a.workers, last.dims.state_dim * last.dims.channels));
            const bench::SpeedupProbe probe = bench::parallel_speedup_probe(last.dims, workers, seed);
            Json p;
            p["workers"] = probe.workers;
            p["sequential_seconds"] = probe.sequential_seconds;
            p["parallel_seconds"] = probe.parallel_seconds;
            p["speedup"] = probe.speedup;
            p["max_relative_difference"] = probe.max_relative_difference;
            p["equivalent"] = probe.equivalent;
            summary["speedup_probe"] = std::move(p);
        }
    }

    bool pass = summary["slopes_within_bounds"].get<bool>();
    if (summary.contains("all_within_3NTd_5NTd")) {
        pass = pass && summary["all_within_3NTd_5NTd"].get<bool>();
    }

    if (a.cfg.format == "csv") {
        emit(a.cfg, io::scaling_to_csv(result), out);
        if (!a.summary_path.empty()) {
            io::write_file_atomic(a.summary_path, io::dump(summary));
        } else if (!a.cfg.out.empty()) {
            out << io::dump(summary);
        }
    } else if (a.cfg.format == "pretty") {
        std::ostringstream s;
        s << std::left << std::setw(8) << "T" << std::setw(6) << "N" << std::setw(6) << "d"
          << std::setw(16) << "multiply_adds" << "peak_live\n";
        for (const bench::FlopReport& r : result.rows) {
            s << std::setw(8) << r.dims.steps << std::setw(6) << r.dims.state_dim << std::setw(6)
              << r.dims.channels << std::setw(16) << r.multiply_adds << r.peak_live_elements << '\n';
        }
        s << io::dump(summary);
        emit(a.cfg, s.str(), out);
    } else {
        Json j = summary;
        Json rows = Json::array();
        for (const bench::FlopReport& r : result.rows) {
            rows.push_back(io::to_json(r));
        }
        j["rows"] = std::move(rows);
        emit(a.cfg, io::dump(j), out);
    }
    return pass ? exit_pass : exit_property_failure;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Structured state-space duality lab"};
    app.set_config("--config", "", "Read options from a TOML or INI file");
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Write a random or named instance");
    gen_cmd->add_option("kind", gen.kind, "Instance kind")
        ->required()
        ->check(CLI::IsMember({"ssm", "sequence", "kernel", "one-ss", "sss", "non-dualizable", "identity"}));
    gen_cmd->add_option("--T", gen.steps, "Sequence length")->required();
    gen_cmd->add_option("--N", gen.state_dim, "State dimension");
    gen_cmd->add_option("--d", gen.channels, "Channels");
    gen_cmd->add_option("--a-min", gen.gain_min, "Smallest gain magnitude");
    gen_cmd->add_option("--a-max", gen.gain_max, "Largest gain magnitude");
    gen_cmd->add_flag("--unsigned", gen.unsigned_gains, "Keep every gain positive");
    gen_cmd->add_flag("--scalar-identity", gen.scalar_identity, "Share one gain across all modes");
    add_common(*gen_cmd, gen.cfg, "json", {"json", "csv"});

    ForwardArgs fwd;
    auto* fwd_cmd = app.add_subcommand("forward", "Run a diagonal SSM along one or all execution paths");
    fwd_cmd->add_option("--ssm", fwd.ssm_path, "Model JSON");
    fwd_cmd->add_option("--x", fwd.x_path, "Input sequence (.csv or JSON)");
    fwd_cmd->add_option("--path", fwd.path, "Execution path")
        ->check(CLI::IsMember({"recurrence", "ssd", "materialized", "all"}));
    fwd_cmd->add_option("--T", fwd.steps, "Random model: sequence length");
    fwd_cmd->add_option("--N", fwd.state_dim, "Random model: state dimension");
    fwd_cmd->add_option("--d", fwd.channels, "Random input: channels");
    fwd_cmd->add_option("--a-max", fwd.gain_max, "Random model: largest gain magnitude");
    fwd_cmd->add_option("--workers", fwd.workers, "Threads for the ssd path");
    add_common(*fwd_cmd, fwd.cfg, "json", {"json", "csv", "pretty"});

    CheckDualArgs dual;
    auto* dual_cmd = app.add_subcommand("check-dual", "Decide or construct 1-SS masked attention duals");
    dual_cmd->add_option("--mode", dual.mode, "Which duality to check")
        ->check(CLI::IsMember({"scalar-identity", "full-rank", "representability"}));
    dual_cmd->add_option("--matrix", dual.matrix_path, "Lower-triangular matrix (.csv or JSON)");
    dual_cmd->add_option("--ssm", dual.ssm_path, "Model JSON");
    dual_cmd->add_option("--N", dual.state_dim, "Attention width");
    dual_cmd->add_option("--factors-out", dual.factors_out, "Where to write constructed factors");
    dual_cmd->add_option("--tol", dual.tol, "Relative residual allowed for constructed factors");
    add_common(*dual_cmd, dual.cfg, "json", {"json", "pretty"});

    ExtractArgs ext;
    auto* ext_cmd = app.add_subcommand("extract", "Extract a general SSS representation");
    ext_cmd->add_option("--matrix", ext.matrix_path, "Lower-triangular matrix (.csv or JSON)")->required();
    ext_cmd->add_option("--N", ext.state_dim, "State dimension")->required();
    add_common(*ext_cmd, ext.cfg, "json", {"json"});

    CounterexampleArgs cex;
    auto* cex_cmd = app.add_subcommand("counterexample", "Reproduce an impossibility example");
    cex_cmd->add_option("kind", cex.kind, "softmax or non-dualizable")
        ->required()
        ->check(CLI::IsMember({"softmax", "non-dualizable"}));
    cex_cmd->add_option("--T", cex.steps, "Size");
    cex_cmd->add_option("--N", cex.state_dim, "Attention width (non-dualizable)");
    add_common(*cex_cmd, cex.cfg, "pretty", {"pretty", "json"});

    BenchArgs bn;
    auto* bench_cmd = app.add_subcommand("bench", "Count operations over a grid of sizes");
    bench_cmd->add_option("--path", bn.path, "Execution path")
        ->check(CLI::IsMember({"recurrence", "ssd", "materialized"}));
    bench_cmd->add_option("--grid", bn.grid, "Axis values such as T=64,128,256 (repeatable, ';' separated)");
    bench_cmd->add_option("--summary", bn.summary_path, "JSON summary path for csv output");
    bench_cmd->add_flag("--timing", bn.timing, "Add wall times (not reproducible)");
    bench_cmd->add_option("--workers", bn.workers, "Worker count for the speedup probe (with --timing)");
    add_common(*bench_cmd, bn.cfg, "csv", {"csv", "json", "pretty"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_pass : exit_input_error;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen, out);
        if (*fwd_cmd) return cmd_forward(fwd, out);
        if (*dual_cmd) return cmd_check_dual(dual, out);
        if (*ext_cmd) return cmd_extract(ext, out);
        if (*cex_cmd) return cmd_counterexample(cex, out);
        if (*bench_cmd) return cmd_bench(bn, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }
    return exit_input_error;
}

}  // namespace ssd::cli
