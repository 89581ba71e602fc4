#include "nqp/cli.hpp"

#include <bit>
#include <cmath>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "nqp/errors.hpp"
#include "nqp/generate.hpp"
#include "nqp/instance_io.hpp"
#include "nqp/reservoir.hpp"
#include "nqp/solvers.hpp"
#include "nqp/validate.hpp"
#include "nqp/verify.hpp"

namespace nqp::cli {

namespace {

std::uint64_t splitmix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t c)
{
    return splitmix(splitmix(splitmix(base ^ splitmix(a)) ^ b) ^ c);
}

std::size_t bit_length(Int v)
{
    const auto mag = v < 0 ? 0 - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
    return static_cast<std::size_t>(std::bit_width(mag));
}

std::string format_objective(Wide v) { return to_string(v); }
std::string format_objective(double v) { return format_real(v); }

void print_assignment(std::ostream& out, std::span<const Int> w)
{
    out << "ASSIGNMENT";
    for (Int v : w) out << ' ' << v;
    out << '\n';
}

struct SolveArgs {
    std::string file;
    std::string solver = "local";
    std::string inner = "local";
    std::uint64_t seed = 0;
    std::uint64_t budget = SolverBudget{}.max_evaluations;
    std::size_t starts = 16;
    std::size_t threads = 0;
    double t0 = AnnealSchedule{}.t_initial;
    double t1 = AnnealSchedule{}.t_final;
    std::uint64_t steps = AnnealSchedule{}.steps;
    std::uint64_t moves = AnnealSchedule{}.moves_per_step;

    AnnealSchedule schedule() const { return {t0, t1, steps, moves}; }
};

template <class T>
int solve_command(const Instance<T>& inst, const SolveArgs& args, std::ostream& out)
{
    SolverBudget budget;
    budget.max_evaluations = args.budget;
    SolveResult<T> result;
    if (args.solver == "brute") {
        result = solve_brute_force(inst, budget);
    } else if (args.solver == "local") {
        LocalSearchOptions options;
        options.budget = budget;
        result = solve_local_search(inst, random_assignment(inst, args.seed), args.seed, options);
    } else if (args.solver == "anneal") {
        result = solve_anneal(inst, args.schedule(), args.seed);
    } else {
        MultiStartOptions options;
        options.starts = args.starts;
        options.inner = args.inner == "anneal" ? InnerSolver::anneal : InnerSolver::local_search;
        options.schedule = args.schedule();
        options.local.budget = budget;
        options.threads = args.threads;
        result = solve_multi_start(inst, args.seed, options);
    }
    out << "OBJECTIVE " << format_objective(result.best.objective) << '\n';
    print_assignment(out, result.best.w);
    out << "EVALUATIONS " << result.evaluations << '\n';
    out << "ITERATIONS " << result.iterations << '\n';
    out << "OPTIMAL " << (result.optimal_proven ? "proven" : "unproven") << '\n';
    if (result.seed) out << "SEED " << *result.seed << '\n';
    return ExitCode::ok;
}

template <class T>
int validate_command(const Instance<T>& inst, std::ostream& out)
{
    const auto report = validate_instance(inst);
    for (const auto& v : report.violations)
        out << (v.severity == Severity::error ? "ERROR " : "WARNING ") << v.message << '\n';
    out << "VALID " << (report.ok() ? "yes" : "no") << '\n';
    return report.ok() ? ExitCode::ok : ExitCode::invalid_input;
}

IntInstance require_int(const AnyInstance& inst, const std::string& what)
{
    if (!std::holds_alternative<IntInstance>(inst)) throw InvalidInstance(what + " must be an exact-integer instance");
    return std::get<IntInstance>(inst);
}

struct ReduceArgs {
    std::string file;
    std::string set;
    std::string out_path;
    bool allow_indefinite = false;
    bool exhaustive = false;
    std::uint64_t budget = SolverBudget{}.max_evaluations;
};

int reduce_command(const ReduceArgs& args, std::ostream& out)
{
    const auto ubqp = require_int(read_instance_file(args.file), "UBQP input");
    ReductionOptions options;
    options.allow_indefinite = args.allow_indefinite;
    const auto reduction = reduce_ubqp_to_unqp(ubqp, parse_level_list(args.set), options);
    const auto text = serialize_instance(reduction.instance, reduction.certificate);
    if (args.out_path.empty()) {
        out << text;
    } else {
        write_text_file(args.out_path, text);
        out << certificate_block(reduction.certificate);
        out << "WROTE " << args.out_path << '\n';
    }
    return ExitCode::ok;
}

int verify_command(const ReduceArgs& args, std::ostream& out)
{
    const auto ubqp = require_int(read_instance_file(args.file), "UBQP input");
    ReductionOptions options;
    options.allow_indefinite = args.allow_indefinite;
    SolverBudget budget;
    budget.max_evaluations = args.budget;
    const auto check = check_reduction(ubqp, parse_level_list(args.set), args.exhaustive, budget, options);
    const auto& cert = check.reduction.certificate;
    out << "M " << (cert.penalty ? to_string(cert.penalty->m) : std::string("0")) << '\n';
    out << "UBQP_OPTIMUM " << to_string(check.ubqp_optimum) << '\n';
    out << "UNQP_OPTIMUM " << to_string(check.unqp_optimum) << '\n';
    out << "MINIMIZERS " << check.ubqp_minimizers << ' ' << check.unqp_minimizers << '\n';
    out << "SOUNDNESS " << (check.sound && check.values_agree ? "ok" : "FAILED") << '\n';
    if (check.exhaustive) {
        out << "IDENTITY " << (check.identity_holds ? "ok" : "FAILED") << '\n';
        out << "SEPARATION " << (check.separated ? "ok" : "FAILED") << '\n';
        out << "PENALTY " << (check.penalty_dichotomy ? "ok" : "FAILED") << '\n';
    }
    for (const auto& f : check.failures) out << "FAILURE " << f << '\n';
    return check.passed() ? ExitCode::ok : ExitCode::invariant_violation;
}

struct DemoArgs {
    std::size_t neurons = 30;
    std::size_t length = 500;
    std::size_t washout = 50;
    std::string task = "delay:2";
    std::string set = "-1,0,1";
    double ridge = 1e-2;
    std::string solver = "multi";
    std::uint64_t seed = 0;
    std::size_t starts = 256;
    double spectral_radius = 0.9;
    double input_scale = 0.5;
    double density = 0.1;
    std::uint64_t budget = SolverBudget{}.max_evaluations;
};

int demo_command(const DemoArgs& args, std::ostream& out)
{
    using namespace reservoir;
    Task task;
    if (args.task == "sine") {
        task = noisy_sine_task(args.length, args.seed);
    } else if (args.task.rfind("delay:", 0) == 0) {
        const auto delay = std::stoul(args.task.substr(6));
        task = delay_recall_task(args.length, delay, args.seed);
    } else {
        throw InvalidInstance("unknown task '" + args.task + "' (expected delay:<tau> or sine)");
    }

    const EsnParams esn = make_esn({args.neurons, 1, args.seed, args.spectral_radius, args.input_scale, args.density});
    DiscreteTrainingOptions options;
    options.ridge = args.ridge;
    options.seed = args.seed;
    options.budget.max_evaluations = args.budget;
    options.multi.starts = args.starts;
    if (args.solver == "brute")
        options.solver = DiscreteSolver::brute_force;
    else if (args.solver == "local")
        options.solver = DiscreteSolver::local_search;
    else if (args.solver == "anneal")
        options.solver = DiscreteSolver::anneal;
    else
        options.solver = DiscreteSolver::multi_start;

    const auto readout = train_discrete_readout(esn, task.u, task.y, args.washout, parse_level_list(args.set), options);
    out << "NMSE continuous " << format_real(readout.continuous.nmse) << '\n';
    out << "NMSE discrete " << format_real(readout.discrete.nmse) << '\n';
    out << "GAP " << format_real(readout.gap) << '\n';
    out << "OBJECTIVE " << format_real(readout.discrete_objective) << '\n';
    std::vector<Int> w;
    for (Eigen::Index i = 0; i < readout.discrete.w_out.size(); ++i) w.push_back(static_cast<Int>(readout.discrete.w_out(i)));
    print_assignment(out, w);
    out << "SCALE " << format_real(readout.state_scale) << '\n';
    return ExitCode::ok;
}

struct BenchArgs {
    std::string dims = "2,4,6,8";
    std::string levels = "2,3,5";
    std::size_t trials = 10;
    std::uint64_t seed = 0;
    Int entry_bound = 5;
    std::size_t starts = 16;
};

std::vector<std::size_t> parse_counts(const std::string& text)
{
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(std::stoul(item));
    return out;
}

int bench_command(const BenchArgs& args, std::ostream& out)
{
    bool all_sound = true;
    out << std::left << std::setw(8) << "BENCH" << std::setw(4) << "N" << std::setw(4) << "n" << std::setw(8)
        << "trials" << std::setw(7) << "sound" << std::setw(9) << "ls_hits" << std::setw(25) << "max_rel_gap"
        << "max_coeff_bits" << '\n';
    for (std::size_t n : parse_counts(args.dims)) {
        for (std::size_t levels : parse_counts(args.levels)) {
            std::size_t sound = 0;
            std::size_t hits = 0;
            double max_gap = 0.0;
            std::size_t max_bits = 0;
            for (std::size_t t = 0; t < args.trials; ++t) {
                const std::uint64_t s = derive_seed(args.seed, n, levels, t);
                const auto ubqp = generate_random_instance(n, LevelSet({0, 1}), s, args.entry_bound);
                const auto level_set = generate_random_level_set(levels, -10, 10, splitmix(s));
                const auto check = check_reduction(ubqp, level_set, false);
                if (check.passed()) ++sound;
                all_sound = all_sound && check.passed();

                const auto& reduced = check.reduction.instance;
                for (Int v : reduced.q) max_bits = std::max(max_bits, bit_length(v));
                for (Int v : reduced.c) max_bits = std::max(max_bits, bit_length(v));

                MultiStartOptions ms;
                ms.starts = args.starts;
                ms.threads = 1;
                const auto heur = solve_multi_start(reduced, s, ms);
                if (heur.best.objective == check.unqp_optimum) ++hits;
                const double opt = static_cast<double>(check.unqp_optimum);
                const double gap = (static_cast<double>(heur.best.objective) - opt) / std::max(1.0, std::abs(opt));
                max_gap = std::max(max_gap, gap);
            }
            out << std::setw(8) << "BENCH" << std::setw(4) << n << std::setw(4) << levels << std::setw(8) << args.trials
                << std::setw(7) << sound << std::setw(9) << hits << std::setw(24) << format_real(max_gap) << ' ' << max_bits
                << '\n';
        }
    }
    return all_sound ? ExitCode::ok : ExitCode::invariant_violation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Solver toolkit for unconstrained n-ary quadratic programming", "nqp"};
    app.require_subcommand(1);

    std::string validate_file;
    auto* validate = app.add_subcommand("validate", "Check an instance file against its invariants");
    validate->add_option("file", validate_file, "instance file")->required();

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Minimize an instance");
    solve->add_option("file", solve_args.file, "instance file")->required();
    solve->add_option("--solver", solve_args.solver)->check(CLI::IsMember({"brute", "local", "anneal", "multi"}));
    solve->add_option("--inner", solve_args.inner, "inner solver for multi")->check(CLI::IsMember({"local", "anneal"}));
    solve->add_option("--seed", solve_args.seed);
    solve->add_option("--budget", solve_args.budget, "maximum objective evaluations");
    solve->add_option("--starts", solve_args.starts);
    solve->add_option("--threads", solve_args.threads);
    solve->add_option("--t0", solve_args.t0);
    solve->add_option("--t1", solve_args.t1);
    solve->add_option("--steps", solve_args.steps);
    solve->add_option("--moves", solve_args.moves);

    ReduceArgs reduce_args;
    auto* reduce = app.add_subcommand("reduce", "Reduce a UBQP instance to an n-ary instance over --set");
    reduce->add_option("file", reduce_args.file, "UBQP instance over {0,1}")->required();
    reduce->add_option("--set", reduce_args.set, "levels, e.g. \"0,1,2\"")->required();
    reduce->add_option("--out", reduce_args.out_path, "output file (stdout if omitted)");
    reduce->add_flag("--allow-indefinite", reduce_args.allow_indefinite);

    ReduceArgs verify_args;
    auto* verify = app.add_subcommand("verify-reduction", "Reduce and brute-force both sides");
    verify->add_option("file", verify_args.file, "UBQP instance over {0,1}")->required();
    verify->add_option("--set", verify_args.set)->required();
    verify->add_flag("--exhaustive", verify_args.exhaustive);
    verify->add_flag("--allow-indefinite", verify_args.allow_indefinite);
    verify->add_option("--budget", verify_args.budget);

    DemoArgs demo_args;
    auto* demo = app.add_subcommand("rc-demo", "Train continuous and discrete readouts of an echo state network");
    demo->add_option("--neurons", demo_args.neurons);
    demo->add_option("--length", demo_args.length);
    demo->add_option("--washout", demo_args.washout);
    demo->add_option("--task", demo_args.task, "delay:<tau> or sine");
    demo->add_option("--set", demo_args.set);
    demo->add_option("--ridge", demo_args.ridge);
    demo->add_option("--solver", demo_args.solver)->check(CLI::IsMember({"brute", "local", "anneal", "multi"}));
    demo->add_option("--seed", demo_args.seed);
    demo->add_option("--starts", demo_args.starts);
    demo->add_option("--spectral-radius", demo_args.spectral_radius);
    demo->add_option("--input-scale", demo_args.input_scale);
    demo->add_option("--density", demo_args.density);
    demo->add_option("--budget", demo_args.budget);

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Reduction soundness and heuristic gap sweep");
    bench->add_option("--dims", bench_args.dims);
    bench->add_option("--levels", bench_args.levels);
    bench->add_option("--trials", bench_args.trials);
    bench->add_option("--seed", bench_args.seed);
    bench->add_option("--entry-bound", bench_args.entry_bound);
    bench->add_option("--starts", bench_args.starts);

    std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ExitCode::ok : ExitCode::invalid_input;
    }

    try {
        if (*validate) {
            return std::visit([&](const auto& inst) { return validate_command(inst, out); },
                              read_instance_file(validate_file));
        }
        if (*solve) {
            return std::visit([&](const auto& inst) { return solve_command(inst, solve_args, out); },
                              read_instance_file(solve_args.file));
        }
        if (*reduce) return reduce_command(reduce_args, out);
        if (*verify) return verify_command(verify_args, out);
        if (*demo) return demo_command(demo_args, out);
        if (*bench) return bench_command(bench_args, out);
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return ExitCode::budget_exceeded;
    } catch (const NotBinary& e) {
        err << "soundness failure: " << e.what() << '\n';
        return ExitCode::invariant_violation;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << '\n';
        return ExitCode::invariant_violation;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::invalid_input;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::invalid_input;
    }
    return ExitCode::ok;
}

}  // namespace nqp::cli
