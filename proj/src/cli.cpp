#include "herzkit/cli.hpp"

#include "herzkit/atoms.hpp"
#include "herzkit/errors.hpp"
#include "herzkit/io.hpp"
#include "herzkit/littlewood_paley.hpp"
#include "herzkit/maximal.hpp"
#include "herzkit/parallel.hpp"
#include "herzkit/singular.hpp"
#include "herzkit/weights.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace herzkit {

namespace fs = std::filesystem;

namespace {

Json vec_json(std::span<const double> v)
{
    Json j = Json::array();
    for (double x : v)
        j.push_back(number_json(x));
    return j;
}

Grid make_grid(const JobConfig& cfg)
{
    std::vector<double> half = cfg.L;
    if (half.size() == 1)
        half.assign(cfg.grid.size(), half[0]);
    if (half.size() != cfg.grid.size())
        fail(ErrorKind::parse, "--L needs one value or one per axis");
    return Grid(cfg.grid, half);
}

AnisotropyVector anisotropy(const JobConfig& cfg, std::size_t n)
{
    if (cfg.a.empty())
        return AnisotropyVector::isotropic(n);
    if (cfg.a.size() != n)
        fail(ErrorKind::shape, "--a has " + std::to_string(cfg.a.size()) + " entries for a " + std::to_string(n) +
                                   "-dimensional grid");
    return AnisotropyVector(cfg.a);
}

ExponentVector exponents(const JobConfig& cfg, std::size_t n)
{
    if (cfg.q.empty())
        return ExponentVector::uniform(n, 2.0);
    if (cfg.q.size() == 1)
        return ExponentVector::uniform(n, cfg.q[0]);
    if (cfg.q.size() != n)
        fail(ErrorKind::shape, "--q needs one value or one per axis");
    return ExponentVector(cfg.q);
}

HerzParams herz_params(const JobConfig& cfg, std::size_t n)
{
    HerzParams hp;
    hp.alpha = cfg.alpha;
    hp.p = cfg.p;
    hp.q = exponents(cfg, n);
    hp.anisotropy = anisotropy(cfg, n);
    hp.homogeneous = !cfg.nonhomogeneous;
    hp.window = DyadicWindow{cfg.k_min, cfg.k_max};
    hp.validate();
    return hp;
}

Json herz_params_json(const HerzParams& hp)
{
    Json j;
    j["alpha"] = hp.alpha;
    j["p"] = number_json(hp.p);
    j["q"] = vec_json(hp.q.exponents());
    j["a"] = vec_json(hp.anisotropy.exponents());
    j["homogeneous"] = hp.homogeneous;
    j["k_min"] = hp.window.k_min;
    j["k_max"] = hp.window.k_max;
    return j;
}

SampledFunction load_input(const JobConfig& cfg)
{
    if (!cfg.input.empty() && !cfg.builtin.empty())
        fail(ErrorKind::parse, "give either --input or --builtin, not both");
    if (!cfg.input.empty())
        return read_function(cfg.input);
    if (cfg.builtin.empty())
        fail(ErrorKind::parse, "no input: use --input FILE or --builtin NAME");
    const Grid grid = make_grid(cfg);
    const AnisotropyVector a = anisotropy(cfg, grid.dim());
    return builtin_function(cfg.builtin, grid, cfg.builtin_params, &a);
}

Json source_json(const JobConfig& cfg)
{
    Json j;
    if (!cfg.input.empty()) {
        j["file"] = cfg.input;
    } else {
        j["builtin"] = cfg.builtin;
        Json params = Json::object();
        for (const auto& [k, v] : cfg.builtin_params)
            params[k] = v;
        j["params"] = params;
    }
    return j;
}

Json base_report(const JobConfig& cfg, const SampledFunction& f)
{
    Json r;
    r["schema"] = 1;
    r["command"] = cfg.command;
    r["input"] = source_json(cfg);
    r["grid"] = grid_to_json(f.grid());
    return r;
}

Json function_summary(const SampledFunction& f, const ExponentVector& q)
{
    Json j;
    j["max_abs"] = f.max_abs();
    j["mixed_norm"] = mixed_lebesgue_norm(f, q);
    j["integral"] = quadrature_integral(f);
    return j;
}

void emit(const JobConfig& cfg, const Json& report, std::ostream& out)
{
    const std::string text = report.dump(2) + "\n";
    if (cfg.output.empty())
        out << text;
    else
        write_atomic(cfg.output, text);
}

std::string value_format(const JobConfig& cfg, const fs::path& path)
{
    const auto ext = path.extension().string();
    if (ext == ".csv")
        return "csv";
    if (ext == ".json")
        return "json";
    return cfg.format;
}

// Writes a grid-valued result if --values was given; returns its path for the report.
Json write_values(const JobConfig& cfg, const SampledFunction& f)
{
    if (cfg.values.empty())
        return nullptr;
    const fs::path path(cfg.values);
    const std::string fmt = value_format(cfg, path);
    if (fmt == "csv")
        write_atomic(path, to_csv(f));
    else if (fmt == "json")
        write_atomic(path, to_json(f).dump() + "\n");
    else
        fail(ErrorKind::parse, "unknown format '" + fmt + "'");
    return cfg.values;
}

std::string fmt17(double x)
{
    std::ostringstream ss;
    ss.precision(17);
    ss << x;
    return ss.str();
}

BallFamily family_for(const JobConfig& cfg, const Grid& grid)
{
    double r_max = cfg.r_max;
    if (r_max <= 0.0) {
        r_max = grid.half_width(0);
        for (std::size_t i = 1; i < grid.dim(); ++i)
            r_max = std::min(r_max, grid.half_width(i));
        r_max *= 0.5;
    }
    return BallFamily::dyadic(grid, r_max, cfg.per_octave, cfg.stride);
}

fs::path sibling(const fs::path& report, const std::string& suffix)
{
    fs::path p = report;
    p.replace_filename(report.stem().string() + suffix);
    return p;
}

int cmd_norm(const JobConfig& cfg, std::ostream& out)
{
    const auto f = load_input(cfg);
    const auto q = exponents(cfg, f.grid().dim());
    const double value = mixed_lebesgue_norm(f, q);
    Json r = base_report(cfg, f);
    r["params"] = {{"q", vec_json(q.exponents())}};
    r["result"] = {{"norm", number_json(value)}};
    if (cfg.output.empty()) {
        out << fmt17(value) << "\n";
    } else {
        emit(cfg, r, out);
        out << fmt17(value) << "\n";
    }
    return exit_ok;
}

int cmd_herz(const JobConfig& cfg, std::ostream& out)
{
    const auto f = load_input(cfg);
    const auto hp = herz_params(cfg, f.grid().dim());
    const auto rep = herz_norm_report(f, hp, cfg.truncation);
    Json r = base_report(cfg, f);
    r["params"] = herz_params_json(hp);
    Json terms = Json::array();
    for (std::size_t i = 0; i < rep.ks.size(); ++i)
        terms.push_back({{"k", rep.ks[i]}, {"term", rep.terms[i]}});
    r["result"] = {{"norm", number_json(rep.norm)}, {"terms", terms}};
    r["truncation"] = {{"fraction", rep.truncation_fraction},
                       {"threshold", cfg.truncation},
                       {"warning", rep.truncation_warning},
                       {"strict", cfg.strict}};
    emit(cfg, r, out);
    if (!cfg.output.empty())
        out << fmt17(rep.norm) << "\n";
    return cfg.strict && rep.truncation_warning ? exit_truncation : exit_ok;
}

int cmd_maximal(const JobConfig& cfg, std::ostream& out)
{
    const auto f = load_input(cfg);
    const auto family = family_for(cfg, f.grid());
    const auto q = exponents(cfg, f.grid().dim());
    const auto mf = cfg.fractional_maximal ? fractional_maximal(f, cfg.order, family) : hl_maximal(f, family);
    Json r = base_report(cfg, f);
    r["params"] = {{"family", family.describe()}, {"fractional", cfg.fractional_maximal}, {"order", cfg.order}};
    r["result"] = {{"input", function_summary(f, q)}, {"output", function_summary(mf, q)}};
    r["values"] = write_values(cfg, mf.with_label("maximal"));
    emit(cfg, r, out);
    return exit_ok;
}

int cmd_fractional(const JobConfig& cfg, std::ostream& out)
{
    const auto f = load_input(cfg);
    const auto q = exponents(cfg, f.grid().dim());
    const auto g = fractional_integral(f, cfg.order);
    Json r = base_report(cfg, f);
    r["params"] = {{"order", cfg.order}};
    Json center = g[f.grid().center_index()];
    r["result"] = {{"input", function_summary(f, q)}, {"output", function_summary(g, q)}, {"value_at_origin", center}};
    r["values"] = write_values(cfg, g.with_label("fractional_integral"));
    emit(cfg, r, out);
    return exit_ok;
}

int cmd_cz(const JobConfig& cfg, std::ostream& out)
{
    const auto f = load_input(cfg);
    if (f.grid().dim() != 1)
        fail(ErrorKind::capability, "the built-in singular kernel is the 1-dimensional Hilbert kernel");
    const auto q = exponents(cfg, 1);
    const auto kernel = StandardKernel::hilbert();
    Json r = base_report(cfg, f);
    r["params"] = {{"kernel", kernel.name()}, {"A", kernel.size_constant()}, {"delta", kernel.delta()}};
    SampledFunction g = f;
    if (cfg.commutator.empty()) {
        g = cz_apply(kernel, f);
    } else {
        const BuiltinParams none;
        const auto b = builtin_function(cfg.commutator, f.grid(), none);
        g = commutator_apply(b, OperatorHandle(kernel), f);
        r["params"]["commutator_symbol"] = cfg.commutator;
    }
    r["result"] = {{"input", function_summary(f, q)}, {"output", function_summary(g, q)}};
    r["values"] = write_values(cfg, g.with_label("cz"));
    emit(cfg, r, out);
    return exit_ok;
}

int cmd_lp(const JobConfig& cfg, std::ostream& out)
{
    const auto f = load_input(cfg);
    const auto q = exponents(cfg, f.grid().dim());
    auto kernel = LPKernel::mexican_hat(f.grid().dim());
    kernel.j_min = cfg.j_min;
    kernel.j_max = cfg.j_max;
    if (kernel.j_min > kernel.j_max)
        fail(ErrorKind::domain, "--jmin exceeds --jmax");
    SampledFunction g = f;
    if (cfg.lp_kind == "g")
        g = g_function(f, kernel);
    else if (cfg.lp_kind == "S")
        g = lusin_area(f, kernel, cfg.aperture);
    else if (cfg.lp_kind == "gstar")
        g = g_star(f, kernel, cfg.lambda);
    else
        fail(ErrorKind::parse, "--lp-kind must be g, S or gstar");
    Json r = base_report(cfg, f);
    r["params"] = {{"kernel", kernel.name},       {"kind", cfg.lp_kind}, {"j_min", kernel.j_min},
                   {"j_max", kernel.j_max},       {"aperture", cfg.aperture}, {"lambda", cfg.lambda}};
    r["result"] = {{"input", function_summary(f, q)}, {"output", function_summary(g, q)}};
    r["values"] = write_values(cfg, g.with_label(cfg.lp_kind));
    emit(cfg, r, out);
    return exit_ok;
}

Json residual_json(const SampledFunction& f, const SampledFunction& synth, const HerzParams& hp)
{
    const SampledFunction diff = f - synth;
    Json j;
    j["max_abs"] = diff.max_abs();
    j["mixed_norm"] = mixed_lebesgue_norm(diff, hp.q);
    j["relative_mixed_norm"] = f.is_zero() ? 0.0 : j["mixed_norm"].get<double>() / mixed_lebesgue_norm(f, hp.q);
    return j;
}

void write_piece(const fs::path& path, const SampledFunction& f)
{
    write_atomic(path, to_json(f).dump() + "\n");
}

int cmd_decompose(const JobConfig& cfg, std::ostream& out)
{
    const auto f = load_input(cfg);
    const auto hp = herz_params(cfg, f.grid().dim());
    const bool files = !cfg.output.empty();
    const fs::path report_path = cfg.output;
    Json r = base_report(cfg, f);
    r["kind"] = cfg.kind;
    r["params"] = herz_params_json(hp);
    auto ref = [&](const std::string& suffix, const SampledFunction& g) -> Json {
        if (!files)
            return nullptr;
        const fs::path p = sibling(report_path, suffix);
        write_piece(p, g);
        return p.filename().string();
    };
    int status = exit_ok;
    if (cfg.kind == "block") {
        const auto d = block_decompose(f, hp);
        Json blocks = Json::array();
        double sum = 0.0;
        for (std::size_t i = 0; i < d.ks.size(); ++i) {
            blocks.push_back({{"k", d.ks[i]},
                              {"lambda", d.lambdas[i]},
                              {"file", ref(".block_" + std::to_string(d.ks[i]) + ".json", d.blocks[i])}});
            sum += std::isinf(hp.p) ? 0.0 : std::pow(d.lambdas[i], hp.p);
        }
        r["blocks"] = blocks;
        r["lambda_p_sum"] = sum;
        r["herz_norm"] = number_json(herz_norm(f, hp));
        r["remainder"] = ref(".remainder.json", d.remainder);
        r["source"] = ref(".source.json", f);
        r["residual_report"] = residual_json(f, block_synthesize(d), hp);
    } else if (cfg.kind == "atomic") {
        const auto w = SchwartzWindow::gaussian();
        const auto d = atomic_decompose(f, hp, w, cfg.truncation);
        auto family = [&](const std::vector<AtomicPiece>& pieces, const std::string& tag, Json& lambdas, Json& refs) {
            lambdas = Json::array();
            refs = Json::array();
            for (std::size_t i = 0; i < pieces.size(); ++i) {
                lambdas.push_back(pieces[i].lambda);
                refs.push_back({{"ball_index", pieces[i].ball_index},
                                {"file", ref("." + tag + "_" + std::to_string(i) + ".json", pieces[i].atom)}});
            }
        };
        Json l1, a1, l2, a2;
        family(d.family1, "atom1", l1, a1);
        family(d.family2, "atom2", l2, a2);
        r["lambdas1"] = l1;
        r["atoms1"] = a1;
        r["lambdas2"] = l2;
        r["atoms2"] = a2;
        r["constants"] = {{"c1", d.c1}, {"c2", d.c2}};
        r["lambda_p_sums"] = {{"family1", d.lambda_sum1}, {"family2", d.lambda_sum2}};
        const double hh = herz_hardy_norm(f, hp, w);
        r["herz_hardy_norm"] = hh;
        r["sum_to_norm_ratio"] = hh > 0.0 ? (d.lambda_sum1 + d.lambda_sum2) / std::pow(hh, hp.p) : 0.0;
        r["remainder"] = ref(".remainder.json", d.remainder);
        r["source"] = ref(".source.json", f);
        Json rr = residual_json(f, synthesize(d), hp);
        rr["remainder_mixed_norm"] = mixed_lebesgue_norm(d.remainder, hp.q);
        r["residual_report"] = rr;
        r["warnings"] = d.warnings;
        if (cfg.strict && !d.warnings.empty())
            status = exit_truncation;
    } else {
        fail(ErrorKind::parse, "--kind must be block or atomic");
    }
    emit(cfg, r, out);
    return status;
}

int cmd_synthesize(const JobConfig& cfg, std::ostream& out)
{
    if (cfg.input.empty())
        fail(ErrorKind::parse, "synthesize needs --input REPORT.json from decompose");
    const fs::path report_path(cfg.input);
    Json dec;
    {
        std::ifstream in(report_path);
        if (!in)
            fail(ErrorKind::io, "cannot open " + report_path.string());
        try {
            dec = Json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorKind::parse, std::string("invalid decomposition report: ") + e.what());
        }
    }
    auto load = [&](const Json& name) {
        if (!name.is_string())
            fail(ErrorKind::parse, "decomposition report was written without piece files");
        return read_function(report_path.parent_path() / name.get<std::string>());
    };
    try {
        SampledFunction sum = load(dec.at("remainder"));
        const std::string kind = dec.at("kind").get<std::string>();
        if (kind == "block") {
            for (const auto& b : dec.at("blocks"))
                sum += b.at("lambda").get<double>() * load(b.at("file"));
        } else {
            for (const auto& [ls, as] : {std::pair{"lambdas1", "atoms1"}, std::pair{"lambdas2", "atoms2"}}) {
                const auto& lam = dec.at(ls);
                const auto& atoms = dec.at(as);
                for (std::size_t i = 0; i < lam.size(); ++i)
                    sum += lam[i].get<double>() * load(atoms[i].at("file"));
            }
        }
        const auto source = load(dec.at("source"));
        const auto& pj = dec.at("params");
        HerzParams hp;
        hp.q = ExponentVector(pj.at("q").get<std::vector<double>>());
        Json r;
        r["schema"] = 1;
        r["command"] = cfg.command;
        r["input"] = {{"file", cfg.input}};
        r["grid"] = grid_to_json(sum.grid());
        r["kind"] = kind;
        r["residual_report"] = residual_json(source, sum, hp);
        r["values"] = write_values(cfg, sum.with_label("synthesis"));
        emit(cfg, r, out);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::parse, std::string("malformed decomposition report: ") + e.what());
    }
    return exit_ok;
}

int cmd_atoms(const JobConfig& cfg, std::ostream& out)
{
    const Grid grid = make_grid(cfg);
    const auto hp = herz_params(cfg, grid.dim());
    const auto& a = hp.anisotropy;
    const int s = cfg.s >= 0 ? cfg.s : minimal_moment_order(hp.alpha, hp.q, a);
    const double v = a.homogeneous_dimension();
    const double eps_floor = std::max<double>(s, (v / a.min_exponent()) * (hp.alpha + hp.q.weighted_reciprocal_sum(a) - 1.0));
    const double eps = cfg.epsilon > 0.0 ? cfg.epsilon : eps_floor + 0.25;
    const auto mspec = MoleculeSpec::make(hp.alpha, hp.q, s, eps, a);
    const auto w = SchwartzWindow::gaussian();
    if (cfg.ks.empty())
        fail(ErrorKind::parse, "--ks needs at least one ball index");

    Json list = Json::array();
    bool all_ok = true;
    double r_min = infinity, r_max = 0.0, hh_max = 0.0;
    for (int i = 0; i < cfg.count; ++i) {
        const int k = cfg.ks[static_cast<std::size_t>(i) % cfg.ks.size()];
        const AtomSpec spec{hp.alpha, hp.q, s, k, false};
        const auto atom = random_atom(grid, spec, a, cfg.seed + static_cast<std::uint64_t>(i));
        const auto ar = atom_check(atom, spec, a);
        const auto mr = molecule_check(atom, mspec, a);
        const double hh = herz_hardy_norm(atom, hp, w);
        all_ok = all_ok && ar.passed() && mr.passed();
        r_min = std::min(r_min, mr.R);
        r_max = std::max(r_max, mr.R);
        hh_max = std::max(hh_max, hh);
        list.push_back({{"k", k},
                        {"seed", cfg.seed + static_cast<std::uint64_t>(i)},
                        {"support_ok", ar.support_ok},
                        {"size_ok", ar.size_ok},
                        {"moments_ok", ar.moments_ok},
                        {"size_ratio", ar.size_ratio},
                        {"moment_ratio", ar.moment_ratio},
                        {"R", mr.R},
                        {"herz_hardy_norm", hh}});
    }
    Json r;
    r["schema"] = 1;
    r["command"] = cfg.command;
    r["grid"] = grid_to_json(grid);
    r["params"] = herz_params_json(hp);
    r["params"]["s"] = s;
    r["params"]["epsilon"] = eps;
    r["params"]["seed"] = cfg.seed;
    r["tolerances"] = {{"size", default_size_tol}, {"moment_factor", moment_tol_factor}};
    r["atoms"] = list;
    r["summary"] = {{"all_pass", all_ok},
                    {"R_min", r_min},
                    {"R_max", r_max},
                    {"R_spread", r_min > 0.0 ? r_max / r_min : infinity},
                    {"herz_hardy_max", hh_max}};
    emit(cfg, r, out);
    return all_ok ? exit_ok : exit_check_failed;
}

Json verify_rubio(const JobConfig& cfg, bool& pass)
{
    const Grid grid = make_grid(cfg);
    const auto hp = herz_params(cfg, grid.dim());
    const auto family = family_for(cfg, grid);
    const auto battery = random_bump_battery(grid, static_cast<std::size_t>(cfg.count), cfg.seed, 4.0 * grid.min_spacing());
    const NormFunction norm = [&](const SampledFunction& g) { return herz_norm(g, hp); };
    double B = 0.0;
    if (cfg.B == "auto") {
        B = estimate_maximal_bound(battery, family, norm, 2);
    } else {
        try {
            B = std::stod(cfg.B);
        } catch (const std::exception&) {
            fail(ErrorKind::parse, "--B must be 'auto' or a number");
        }
        if (!(B >= 1.0))
            fail(ErrorKind::domain, "--B must be at least 1");
    }
    std::size_t r1 = 0, r3 = 0;
    double r2_max = 0.0;
    for (const auto& h : battery) {
        const auto it = maximal_iterates(h, cfg.K + 1, family);
        const auto rk = rubio_from_iterates(it, B, cfg.K);
        const auto rk1 = rubio_from_iterates(it, B, cfg.K + 1);
        const auto mrk = hl_maximal(rk, family);
        for (std::size_t i = 0; i < h.size(); ++i) {
            if (h[i] > rk[i] * (1.0 + 1e-12))
                ++r1;
            if (mrk[i] > 2.0 * B * rk1[i] * (1.0 + 1e-12))
                ++r3;
        }
        const double nh = norm(h);
        if (nh > 0.0)
            r2_max = std::max(r2_max, norm(rk) / nh);
    }
    pass = r1 == 0 && r3 == 0 && r2_max <= 2.0;
    return {{"B", B},
            {"K", cfg.K},
            {"battery", battery.size()},
            {"family", family.describe()},
            {"norm", herz_params_json(hp)},
            {"R1_violations", r1},
            {"R2_max_ratio", r2_max},
            {"R2_bound", 2.0},
            {"R3_violations", r3},
            {"pass", pass}};
}

Json verify_quasinorm(const JobConfig& cfg, bool& pass)
{
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t violations = 0;
    double worst = 0.0;
    const int cases = std::max(1, cfg.count);
    for (int c = 0; c < cases; ++c) {
        const std::size_t n = 1 + static_cast<std::size_t>(u(rng) * 3.0) % 3;
        std::vector<double> av(n), x(n);
        for (std::size_t i = 0; i < n; ++i) {
            av[i] = 1.0 + 2.0 * u(rng);
            x[i] = (2.0 * u(rng) - 1.0) * std::exp2(6.0 * u(rng) - 3.0);
        }
        const AnisotropyVector a(av);
        const double t = std::exp2(8.0 * u(rng) - 4.0);
        const double err = std::abs(quasi_norm(dilate(t, a, x), a) - t * quasi_norm(x, a));
        worst = std::max(worst, err / t);
        if (err > 1e-10 * t)
            ++violations;
    }
    pass = violations == 0;
    return {{"cases", cases}, {"homogeneity_violations", violations}, {"max_relative_error", worst}, {"pass", pass}};
}

Json verify_blocks(const JobConfig& cfg, bool& pass)
{
    const Grid grid = make_grid(cfg);
    const auto hp = herz_params(cfg, grid.dim());
    const auto battery = random_bump_battery(grid, static_cast<std::size_t>(cfg.count), cfg.seed, 4.0 * grid.min_spacing());
    double worst_point = 0.0, worst_sum = 0.0;
    for (const auto& f : battery) {
        const auto d = block_decompose(f, hp);
        const auto g = block_synthesize(d);
        worst_point = std::max(worst_point, (f - g).max_abs() / std::max(f.max_abs(), 1e-300));
        if (!std::isinf(hp.p)) {
            double s = 0.0;
            for (double l : d.lambdas)
                s += std::pow(l, hp.p);
            const double np = std::pow(herz_norm(f, hp), hp.p);
            if (np > 0.0)
                worst_sum = std::max(worst_sum, std::abs(s - np) / np);
        }
    }
    pass = worst_point <= 1e-14 && worst_sum <= 1e-9;
    return {{"battery", battery.size()},
            {"max_pointwise_relative", worst_point},
            {"max_lambda_sum_relative", worst_sum},
            {"pass", pass}};
}

int cmd_verify(const JobConfig& cfg, std::ostream& out)
{
    bool pass = false;
    Json r;
    r["schema"] = 1;
    r["command"] = cfg.command;
    r["suite"] = cfg.suite;
    r["seed"] = cfg.seed;
    if (cfg.suite == "rubio")
        r["result"] = verify_rubio(cfg, pass);
    else if (cfg.suite == "quasinorm")
        r["result"] = verify_quasinorm(cfg, pass);
    else if (cfg.suite == "blocks")
        r["result"] = verify_blocks(cfg, pass);
    else
        fail(ErrorKind::parse, "unknown suite '" + cfg.suite + "' (rubio, quasinorm, blocks)");
    emit(cfg, r, out);
    return pass ? exit_ok : exit_check_failed;
}

int exit_for(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::parse:
    case ErrorKind::io:
        return exit_parse;
    default:
        return exit_precondition;
    }
}

void report_error(std::ostream& err, std::string_view category, const std::string& message)
{
    Json j;
    j["schema"] = 1;
    j["error"] = {{"category", category}, {"message", message}};
    err << j.dump() << "\n";
}

std::vector<int> parse_grid(const std::string& s)
{
    std::vector<int> points;
    std::string_view rest(s);
    while (true) {
        const auto x = rest.find('x');
        const std::string part(rest.substr(0, x));
        try {
            std::size_t used = 0;
            points.push_back(std::stoi(part, &used));
            if (used != part.size())
                throw std::invalid_argument(part);
        } catch (const std::exception&) {
            fail(ErrorKind::parse, "--grid expects N or NxM, got '" + s + "'");
        }
        if (x == std::string_view::npos)
            break;
        rest.remove_prefix(x + 1);
    }
    return points;
}

}  // namespace

int run(const JobConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        set_thread_count(std::max(1u, cfg.threads));
        if (cfg.command == "norm")
            return cmd_norm(cfg, out);
        if (cfg.command == "herz")
            return cmd_herz(cfg, out);
        if (cfg.command == "maximal")
            return cmd_maximal(cfg, out);
        if (cfg.command == "fractional")
            return cmd_fractional(cfg, out);
        if (cfg.command == "cz")
            return cmd_cz(cfg, out);
        if (cfg.command == "lp")
            return cmd_lp(cfg, out);
        if (cfg.command == "decompose")
            return cmd_decompose(cfg, out);
        if (cfg.command == "synthesize")
            return cmd_synthesize(cfg, out);
        if (cfg.command == "atoms")
            return cmd_atoms(cfg, out);
        if (cfg.command == "verify")
            return cmd_verify(cfg, out);
        fail(ErrorKind::parse, "unknown command '" + cfg.command + "'");
    } catch (const Error& e) {
        report_error(err, to_string(e.kind()), e.what());
        return exit_for(e.kind());
    }
}

int run_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    JobConfig cfg;
    CLI::App app{"herzkit: anisotropic mixed-norm Herz space toolkit", "herzkit"};
    app.set_config("--config", "", "key = value file; explicit flags take precedence");
    app.add_option("command", cfg.command, "norm | herz | maximal | fractional | cz | lp | decompose | synthesize | atoms | verify")
        ->required();

    std::string grid_text;
    std::vector<std::string> bparams;
    app.add_option("--input", cfg.input, "input function (.csv or .json), or decomposition report for synthesize");
    app.add_option("--builtin", cfg.builtin, "gauss | box | annulus | log | power | mexhat");
    app.add_option("--bparam", bparams, "builtin parameter key=value (repeatable)");
    app.add_option("--grid", grid_text, "points per axis, N or NxM");
    app.add_option("--L", cfg.L, "half width (one value or one per axis)")->delimiter(',');
    app.add_option("--a", cfg.a, "anisotropy exponents")->delimiter(',');
    app.add_option("--q", cfg.q, "mixed-norm exponents (inf allowed)")->delimiter(',');
    app.add_option("--alpha", cfg.alpha, "Herz smoothness index");
    app.add_option("--p", cfg.p, "Herz outer exponent");
    app.add_flag("--nonhomogeneous", cfg.nonhomogeneous, "use the non-homogeneous annulus family");
    app.add_option("--kmin", cfg.k_min, "lowest dyadic index");
    app.add_option("--kmax", cfg.k_max, "highest dyadic index");
    app.add_option("--output", cfg.output, "report path (default stdout)");
    app.add_option("--values", cfg.values, "write the grid-valued result here");
    app.add_option("--format", cfg.format, "json | csv for --values without extension");
    app.add_flag("--strict", cfg.strict, "truncation or construction warnings exit with status 4");
    app.add_option("--truncation", cfg.truncation, "relative tail threshold");
    app.add_option("--threads", cfg.threads, "worker threads");
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--rmax", cfg.r_max, "largest ball radius of the maximal family");
    app.add_option("--per-octave", cfg.per_octave, "radii per octave");
    app.add_option("--stride", cfg.stride, "center stride for radii above one cell");
    app.add_option("--order", cfg.order, "order of I_alpha or of the fractional maximal function");
    app.add_flag("--fractional", cfg.fractional_maximal, "maximal: use the fractional maximal function");
    app.add_option("--commutator", cfg.commutator, "cz: builtin symbol b for [b, T]");
    app.add_option("--lp-kind", cfg.lp_kind, "g | S | gstar");
    app.add_option("--aperture", cfg.aperture, "cone aperture for S");
    app.add_option("--lambda", cfg.lambda, "g* exponent");
    app.add_option("--jmin", cfg.j_min, "smallest scale exponent");
    app.add_option("--jmax", cfg.j_max, "largest scale exponent");
    app.add_option("--kind", cfg.kind, "decompose: block | atomic");
    app.add_option("--count", cfg.count, "battery size");
    app.add_option("--s", cfg.s, "atom moment order (default: minimal admissible)");
    app.add_option("--ks", cfg.ks, "atom ball indices")->delimiter(',');
    app.add_option("--epsilon", cfg.epsilon, "molecule decay parameter");
    app.add_option("--suite", cfg.suite, "verify: rubio | quasinorm | blocks");
    app.add_option("--B", cfg.B, "verify rubio: maximal bound or 'auto'");
    app.add_option("--K", cfg.K, "verify rubio: iteration depth");

    try {
        app.parse(argc, argv);
        if (!grid_text.empty())
            cfg.grid = parse_grid(grid_text);
        for (const auto& kv : bparams) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                fail(ErrorKind::parse, "--bparam expects key=value, got '" + kv + "'");
            try {
                cfg.builtin_params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
            } catch (const std::exception&) {
                fail(ErrorKind::parse, "--bparam value is not a number: '" + kv + "'");
            }
        }
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        report_error(err, "parse", e.what());
        return exit_parse;
    } catch (const Error& e) {
        report_error(err, to_string(e.kind()), e.what());
        return exit_for(e.kind());
    }
    return run(cfg, out, err);
}

}  // namespace herzkit
