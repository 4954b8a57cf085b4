// Command-line front end: embed, oos, landmark-embed, gradcheck.
// Exit codes: 0 success, 1 usage, 2 data problem, 3 numeric failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "tsne/embedding_kernel.hpp"
#include "tsne/errors.hpp"
#include "tsne/gradient.hpp"
#include "tsne/input_affinity.hpp"
#include "tsne/io.hpp"
#include "tsne/kernel_map.hpp"
#include "tsne/landmark.hpp"
#include "tsne/optimizer.hpp"
#include "tsne/oracle.hpp"
#include "tsne/rng.hpp"
#include "tsne/types.hpp"

namespace fs = std::filesystem;
using namespace tsne;

namespace {

// ---------------------------------------------------------------------------
// Shared option bundles
// ---------------------------------------------------------------------------

struct InputOpts {
    std::string input;
    std::string label_column;
    bool demo = false;
};

void add_input_opts(CLI::App* cmd, InputOpts& o) {
    auto* in = cmd->add_option("--input", o.input, "input CSV (header row required)");
    auto* demo = cmd->add_flag("--demo", o.demo, "use the bundled two-cluster sample");
    in->excludes(demo);
    demo->excludes(in);
    cmd->add_option("--label-column", o.label_column,
                    "name of a non-numeric label column (colors the plot)");
}

Dataset load_input(const InputOpts& o) {
    if (o.demo) return demo_dataset();
    // Thrown from inside the subcommand callback, so it surfaces as an
    // ordinary usage error (exit 1).
    if (o.input.empty()) throw CLI::RequiredError("--input or --demo");
    return load_csv(o.input, o.label_column);
}

struct OptimOpts {
    std::string variant = "tsne";
    std::size_t dims = 2;
    double perplexity = 30.0;
    double sigma2 = 1.0;
    double lr = 0.0;
    int max_iters = 160;
    std::uint64_t seed = 0;
    double exaggeration_factor = 4.0;
    int exaggeration_iters = 0;
    double jitter_std = 0.0;
    int jitter_iters = 0;
    bool no_momentum = false;
    int dof = 1;
    double tol = 0.0;

    CLI::Option *perplexity_opt = nullptr, *sigma2_opt = nullptr, *lr_opt = nullptr,
                *exf_opt = nullptr, *exi_opt = nullptr, *jstd_opt = nullptr,
                *jit_opt = nullptr, *dof_opt = nullptr;
};

void add_optim_opts(CLI::App* cmd, OptimOpts& o, bool landmark_mode) {
    cmd->add_option("--variant", o.variant, "sne | ssne | tsne | tsne-gdof")
        ->check(CLI::IsMember({"sne", "ssne", "tsne", "tsne-gdof"}))
        ->capture_default_str();
    cmd->add_option("--dims", o.dims, "embedding dimensionality")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    if (!landmark_mode) {
        o.perplexity_opt =
            cmd->add_option("--perplexity", o.perplexity,
                            "per-point bandwidth search target (default 30 when given bare)")
                ->expected(0, 1)
                ->check(CLI::PositiveNumber);
        o.sigma2_opt = cmd->add_option("--sigma2", o.sigma2,
                                       "fixed bandwidth sigma^2 for every point")
                           ->check(CLI::PositiveNumber)
                           ->capture_default_str();
        o.perplexity_opt->excludes(o.sigma2_opt);
        o.sigma2_opt->excludes(o.perplexity_opt);
    }
    o.lr_opt = cmd->add_option("--lr", o.lr,
                               "learning rate (default 0.1 for sne, 100 otherwise)");
    cmd->add_option("--max-iters", o.max_iters, "gradient descent iterations")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    o.exf_opt = cmd->add_option("--exaggeration-factor", o.exaggeration_factor,
                                "early exaggeration multiplier");
    o.exi_opt = cmd->add_option("--exaggeration-iters", o.exaggeration_iters,
                                "iterations under early exaggeration");
    o.jstd_opt = cmd->add_option("--jitter-std", o.jitter_std, "jitter noise std");
    o.jit_opt = cmd->add_option("--jitter-iters", o.jitter_iters, "iterations with jitter");
    cmd->add_flag("--no-momentum", o.no_momentum, "disable momentum");
    o.dof_opt = cmd->add_option("--dof", o.dof,
                                "fix the degrees of freedom (tsne-gdof); "
                                "omit for the adaptive unit-step schedule")
                    ->check(CLI::Range(1, 1000000));
    cmd->add_option("--tol", o.tol, "stop when the gradient infinity norm falls below this")
        ->capture_default_str();
}

VariantSpec make_variant(const OptimOpts& o) {
    VariantSpec vs;
    vs.method = variant_from_name(o.variant);
    if (vs.method == Variant::TsneGeneralDof) {
        if (o.dof_opt && o.dof_opt->count()) {
            vs.dof = o.dof;
            vs.adaptive_dof = false;
        } else {
            vs.adaptive_dof = true;
        }
    } else if (o.dof_opt && o.dof_opt->count()) {
        throw DataError("--dof only applies to --variant tsne-gdof");
    }
    return vs;
}

OptimizerConfig make_config(const OptimOpts& o, const VariantSpec& vs) {
    OptimizerConfig cfg = default_config(vs);
    if (o.lr_opt->count()) cfg.learning_rate = o.lr;
    cfg.max_iters = o.max_iters;
    cfg.seed = o.seed;
    if (o.exf_opt->count()) cfg.exaggeration_factor = o.exaggeration_factor;
    if (o.exi_opt->count()) cfg.exaggeration_iters = o.exaggeration_iters;
    if (o.jstd_opt->count()) cfg.jitter_std = o.jitter_std;
    if (o.jit_opt->count()) cfg.jitter_iters = o.jitter_iters;
    if (o.no_momentum) cfg.use_momentum = false;
    cfg.convergence_tol = o.tol;
    return cfg;
}

BandwidthSpec make_bandwidth(const OptimOpts& o) {
    if (o.perplexity_opt && o.perplexity_opt->count()) {
        // Bare --perplexity (no value) falls back to the conventional 30.
        const auto& rs = o.perplexity_opt->results();
        double target = (rs.empty() || rs.front().empty()) ? 30.0 : o.perplexity;
        return BandwidthSpec::perplexity(target);
    }
    return BandwidthSpec::fixed(o.sigma2);
}

// ---------------------------------------------------------------------------
// Output helpers
// ---------------------------------------------------------------------------

std::vector<SvgPoint> embedding_points(const Matrix& emb, const std::vector<std::string>& labels,
                                       SvgPoint::Style style) {
    std::vector<SvgPoint> pts(emb.rows());
    for (std::size_t i = 0; i < emb.rows(); ++i) {
        pts[i].x = emb(i, 0);
        pts[i].y = emb.cols() > 1 ? emb(i, 1) : 0.0;
        pts[i].label = labels.empty() ? "" : labels[i];
        pts[i].style = style;
    }
    return pts;
}

std::string out_path(const std::string& dir, const char* name) {
    fs::create_directories(dir);
    return (fs::path(dir) / name).string();
}

// ---------------------------------------------------------------------------
// embed
// ---------------------------------------------------------------------------

struct EmbedArgs {
    InputOpts in;
    OptimOpts opt;
    std::string out_dir = ".";
};

void run_embed(const EmbedArgs& a) {
    Dataset ds = load_input(a.in);
    VariantSpec vs = make_variant(a.opt);
    OptimizerConfig cfg = make_config(a.opt, vs);
    BandwidthSpec bw = make_bandwidth(a.opt);

    RunResult res = run_data(ds.data, vs, bw, cfg, a.opt.dims);

    if (a.in.demo)
        write_dataset_csv(out_path(a.out_dir, "demo_data.csv"), ds.data, ds.feature_names,
                          ds.labels, ds.label_name);
    write_embedding_csv(out_path(a.out_dir, "embedding.csv"), res.embedding);
    write_trace_json(out_path(a.out_dir, "trace.json"), res.trace);
    write_scatter_svg(out_path(a.out_dir, "scatter.svg"),
                      embedding_points(res.embedding, ds.labels, SvgPoint::Solid));

    std::printf("embedded %zu points with %s into %zu dims (%zu iterations%s)\n",
                ds.data.rows(), variant_name(vs.method), a.opt.dims, res.trace.size(),
                res.trace.empty()
                    ? ""
                    : (", final cost " + format_double(res.trace.back().cost)).c_str());
}

// ---------------------------------------------------------------------------
// oos
// ---------------------------------------------------------------------------

struct OosArgs {
    std::string train_input, train_embedding, input, label_column;
    double gamma = 0.5;
    std::string out_dir = ".";
};

void run_oos(const OosArgs& a) {
    Dataset train = load_csv(a.train_input, a.label_column);
    Dataset train_emb = load_csv(a.train_embedding);
    Dataset test = load_csv(a.input, a.label_column);
    if (train_emb.data.rows() != train.data.rows())
        throw DataError("training embedding has " + std::to_string(train_emb.data.rows()) +
                        " rows but training data has " + std::to_string(train.data.rows()));

    KernelMap map = fit(train.data, train_emb.data, a.gamma);
    if (map.rank_deficient)
        std::fprintf(stderr,
                     "warning: kernel matrix is rank-deficient; "
                     "coefficients are the minimum-norm solution\n");
    Matrix placed = transform(map, test.data);

    write_embedding_csv(out_path(a.out_dir, "embedding.csv"), placed);
    std::vector<SvgPoint> pts =
        embedding_points(train_emb.data, train.labels, SvgPoint::Solid);
    std::vector<SvgPoint> test_pts = embedding_points(placed, test.labels, SvgPoint::Hollow);
    pts.insert(pts.end(), test_pts.begin(), test_pts.end());
    write_scatter_svg(out_path(a.out_dir, "scatter.svg"), pts);

    std::printf("placed %zu points through a kernel map fitted on %zu training points\n",
                placed.rows(), train.data.rows());
}

// ---------------------------------------------------------------------------
// landmark-embed
// ---------------------------------------------------------------------------

struct LandmarkArgs {
    InputOpts in;
    OptimOpts opt;
    LandmarkParams params;
    std::string out_dir = ".";
};

void run_landmark(const LandmarkArgs& a) {
    Dataset ds = load_input(a.in);
    VariantSpec vs = make_variant(a.opt);
    OptimizerConfig cfg = make_config(a.opt, vs);

    LandmarkResult res = landmark_embed(ds.data, a.params, vs, cfg, a.opt.dims);
    if (res.rank_deficient)
        std::fprintf(stderr,
                     "warning: kernel matrix is rank-deficient; "
                     "coefficients are the minimum-norm solution\n");

    if (a.in.demo)
        write_dataset_csv(out_path(a.out_dir, "demo_data.csv"), ds.data, ds.feature_names,
                          ds.labels, ds.label_name);
    write_embedding_csv(out_path(a.out_dir, "embedding.csv"), res.full_embedding);
    write_trace_json(out_path(a.out_dir, "trace.json"), res.trace);

    // landmark_embedding.csv keeps the original row index of each landmark.
    {
        std::string path = out_path(a.out_dir, "landmark_embedding.csv");
        std::FILE* f = std::fopen(path.c_str(), "w");
        if (!f) throw DataError("cannot write '" + path + "'");
        std::fprintf(f, "index");
        for (std::size_t l = 0; l < res.landmark_embedding.cols(); ++l)
            std::fprintf(f, ",y%zu", l + 1);
        std::fprintf(f, "\n");
        for (std::size_t i = 0; i < res.landmarks.size(); ++i) {
            std::fprintf(f, "%zu", res.landmarks[i]);
            for (std::size_t l = 0; l < res.landmark_embedding.cols(); ++l)
                std::fprintf(f, ",%s", format_double(res.landmark_embedding(i, l)).c_str());
            std::fprintf(f, "\n");
        }
        std::fclose(f);
    }

    std::vector<char> is_landmark(ds.data.rows(), 0);
    for (std::size_t idx : res.landmarks) is_landmark[idx] = 1;
    std::vector<SvgPoint> pts =
        embedding_points(res.full_embedding, ds.labels, SvgPoint::Solid);
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (is_landmark[i]) pts[i].style = SvgPoint::Emphasized;
    write_scatter_svg(out_path(a.out_dir, "scatter.svg"), pts);

    std::printf("embedded %zu landmarks (of %zu points) with %s; %zu iterations\n",
                res.landmarks.size(), ds.data.rows(), variant_name(vs.method),
                res.trace.size());
}

// ---------------------------------------------------------------------------
// gradcheck
// ---------------------------------------------------------------------------

struct GradcheckArgs {
    std::string variant; // empty -> all four
    std::size_t n = 10;
    std::size_t dims = 2;
    std::uint64_t seed = 0;
    int dof = 2;
    double threshold = 1e-4;
    double step = 1e-5;
    bool corrupt = false;
};

bool gradcheck_variant(const GradcheckArgs& a, Variant method) {
    VariantSpec vs;
    vs.method = method;
    vs.dof = method == Variant::TsneGeneralDof ? a.dof : 1;

    // One deterministic random instance: Gaussian data for p, a spread-out
    // Gaussian embedding to differentiate at.
    Pcg32 rng(a.seed);
    Matrix data(a.n, 3);
    for (std::size_t i = 0; i < data.size(); ++i) data.data()[i] = rng.next_gaussian();
    ProbabilityMatrix cond = conditional_affinities(data, BandwidthSpec::fixed(1.0));
    ProbabilityMatrix p = method == Variant::Sne ? std::move(cond) : joint_symmetric(cond);
    Matrix y(a.n, a.dims);
    for (std::size_t i = 0; i < y.size(); ++i) y.data()[i] = rng.next_gaussian();

    ProbabilityMatrix q = embedding_affinities(y, vs);
    Matrix analytic = gradient(y, p.values(), q.values(), vs);
    if (a.corrupt)
        for (std::size_t i = 0; i < analytic.size(); ++i) analytic.data()[i] *= 1.1;

    Matrix numeric = oracle::fd_gradient(
        [&](const Matrix& yy) {
            return safe_kl_cost(p.values(), embedding_affinities(yy, vs).values());
        },
        y, a.step);
    oracle::GradCheck rep = oracle::compare_gradients(analytic, numeric);

    bool pass = rep.max_rel_err < a.threshold;
    std::printf("gradcheck %-9s max rel err %.3e at (%zu, %zu) vs threshold %.1e  %s\n",
                variant_name(method), rep.max_rel_err, rep.worst_row, rep.worst_col,
                a.threshold, pass ? "PASS" : "FAIL");

    if (method == Variant::TsneGeneralDof) {
        double ga = grad_dof(y, p.values(), q.values(), vs.dof);
        if (a.corrupt) ga *= 1.1;
        const double dstep = 1e-4;
        double cp = oracle::naive_kl(p.values(), oracle::naive_gdof_affinities(y, vs.dof + dstep));
        double cm = oracle::naive_kl(p.values(), oracle::naive_gdof_affinities(y, vs.dof - dstep));
        double fd = (cp - cm) / (2.0 * dstep);
        double residual = std::abs(ga - fd);
        bool sign_ok = std::abs(fd) <= 1e-6 || (ga > 0) == (fd > 0);
        std::printf("gradcheck %-9s dof-gradient analytic %.6e, finite-diff %.6e, "
                    "residual %.3e, sign %s\n",
                    variant_name(method), ga, fd, residual, sign_ok ? "agrees" : "DISAGREES");
        pass = pass && sign_ok;
    }
    return pass;
}

void run_gradcheck(const GradcheckArgs& a) {
    std::vector<Variant> methods;
    if (a.variant.empty())
        methods = {Variant::Sne, Variant::SymmetricSne, Variant::Tsne, Variant::TsneGeneralDof};
    else
        methods = {variant_from_name(a.variant)};

    std::size_t failures = 0;
    for (Variant m : methods)
        if (!gradcheck_variant(a, m)) ++failures;
    if (failures)
        throw NumericError(std::to_string(failures) + " gradient check(s) failed");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochastic neighbor embedding toolkit"};
    app.require_subcommand(1);

    EmbedArgs embed_args;
    auto* embed = app.add_subcommand("embed", "embed a dataset by gradient descent");
    add_input_opts(embed, embed_args.in);
    add_optim_opts(embed, embed_args.opt, /*landmark_mode=*/false);
    embed->add_option("--out-dir", embed_args.out_dir, "output directory")
        ->capture_default_str();
    embed->callback([&embed_args]() { run_embed(embed_args); });

    OosArgs oos_args;
    auto* oos = app.add_subcommand("oos", "place new points into an existing embedding");
    oos->add_option("--train-input", oos_args.train_input, "training data CSV")->required();
    oos->add_option("--train-embedding", oos_args.train_embedding,
                    "embedding CSV produced for the training data")
        ->required();
    oos->add_option("--input", oos_args.input, "new points CSV")->required();
    oos->add_option("--label-column", oos_args.label_column, "label column name");
    oos->add_option("--gamma", oos_args.gamma, "kernel width factor")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    oos->add_option("--out-dir", oos_args.out_dir, "output directory")->capture_default_str();
    oos->callback([&oos_args]() { run_oos(oos_args); });

    LandmarkArgs lm_args;
    auto* lm = app.add_subcommand("landmark-embed",
                                  "embed a landmark subset, place the rest by kernel map");
    add_input_opts(lm, lm_args.in);
    add_optim_opts(lm, lm_args.opt, /*landmark_mode=*/true);
    lm->add_option("--landmarks", lm_args.params.landmarks, "number of landmarks (m)")
        ->required()
        ->check(CLI::PositiveNumber);
    lm->add_option("--knn", lm_args.params.knn, "neighbors per node in the walk graph")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    lm->add_option("--walks", lm_args.params.walks, "random walks per landmark")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    lm->add_option("--gamma", lm_args.params.gamma, "kernel width factor")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    lm->add_option("--out-dir", lm_args.out_dir, "output directory")->capture_default_str();
    lm->callback([&lm_args]() { run_landmark(lm_args); });

    GradcheckArgs gc_args;
    auto* gc = app.add_subcommand("gradcheck",
                                  "compare analytic gradients against finite differences");
    gc->add_option("--variant", gc_args.variant, "check one variant (default: all four)")
        ->check(CLI::IsMember({"sne", "ssne", "tsne", "tsne-gdof"}));
    gc->add_option("--n", gc_args.n, "instance size")->check(CLI::Range(2, 50))
        ->capture_default_str();
    gc->add_option("--dims", gc_args.dims, "embedding dimensionality")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    gc->add_option("--seed", gc_args.seed, "RNG seed")->capture_default_str();
    gc->add_option("--dof", gc_args.dof, "degrees of freedom for tsne-gdof")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    gc->add_option("--threshold", gc_args.threshold, "max allowed relative error")
        ->capture_default_str();
    gc->add_option("--step", gc_args.step, "finite-difference step")->capture_default_str();
    gc->add_flag("--corrupt", gc_args.corrupt)->group(""); // negative-control test hook
    gc->callback([&gc_args]() { run_gradcheck(gc_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const NumericError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
