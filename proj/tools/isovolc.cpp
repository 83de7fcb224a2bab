// isovolc: structure, directions, crater walks and endomorphism rings on ordinary curves.
#include "isovolc/bench.hpp"
#include "isovolc/error.hpp"
#include "isovolc/io.hpp"
#include "isovolc/report.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace isovolc;

namespace {

struct Config {
    std::string p, a, b, a1, a2, a3, a4, a6, trace, j, ell, curve_file, modpoly, json_path;
    unsigned ext = 1;
    std::uint64_t seed = 1;
    bool slow = false;
    std::vector<std::string> grid;
};

constexpr unsigned kFastMaxDegree = 24;

Curve load_curve(const Config& c, Rng& rng)
{
    int forms = !c.curve_file.empty() + !c.j.empty() + (!c.a.empty() || !c.b.empty()) +
                (!c.a1.empty() || !c.a2.empty() || !c.a3.empty() || !c.a4.empty() || !c.a6.empty());
    if (forms != 1) raise(ErrorKind::BadInput, "give exactly one curve: --curve FILE, --j, --a/--b, or --a1..--a6");
    Curve E;
    if (!c.curve_file.empty()) {
        std::ifstream in(c.curve_file);
        if (!in) raise(ErrorKind::BadInput, "cannot read " + c.curve_file);
        std::stringstream ss;
        ss << in.rdbuf();
        E = parse_curve_text(ss.str(), rng);
    } else {
        if (c.p.empty()) raise(ErrorKind::BadInput, "--p is required");
        Field F = make_field(parse_integer(c.p));
        std::optional<Integer> t;
        if (!c.trace.empty()) t = parse_integer(c.trace);
        if (!c.j.empty()) {
            if (!t) raise(ErrorKind::BadInput, "--j needs --trace");
            E = curve_from_j(F, parse_elem(F, c.j), *t, rng);
        } else if (!c.a.empty() || !c.b.empty()) {
            E = build_curve(F, parse_elem(F, c.a.empty() ? "0" : c.a), parse_elem(F, c.b.empty() ? "0" : c.b), t, rng);
        } else {
            auto el = [&](const std::string& s) { return parse_elem(F, s.empty() ? "0" : s); };
            auto [A, B] = short_form(el(c.a1), el(c.a2), el(c.a3), el(c.a4), el(c.a6));
            E = build_curve(F, A, B, t, rng);
        }
    }
    if (c.ext > 1) E = base_change(E, c.ext, rng);
    return E;
}

Integer need_ell(const Config& c)
{
    if (c.ell.empty()) raise(ErrorKind::BadInput, "--ell is required");
    Integer ell = parse_integer(c.ell);
    if (ell < 2 || !is_probable_prime(ell)) raise(ErrorKind::NonPrime, "ell must be prime");
    return ell;
}

WorkingCurve load_working(const Config& c, const Curve& E, const Integer& ell, Rng& rng)
{
    const Integer& q = E.field()->order();
    if ((q - 1) % ell == 0 && E.order() % ell == 0) return working_curve(E, ell, 1, false, rng);
    TorsionDegree td = torsion_extension_degree(E, ell);
    if (td.r * E.field()->degree() > kFastMaxDegree && !c.slow)
        raise(ErrorKind::FieldTooLarge, "working field has degree " + std::to_string(td.r) + "; pass --slow to allow it");
    return working_curve(E, ell, td.r, td.use_twist, rng);
}

std::optional<ModPoly> load_mp(const Config& c, const Integer& ell, const Field& F, bool required)
{
    std::optional<std::filesystem::path> path;
    if (!c.modpoly.empty())
        path = c.modpoly;
    else
        path = bundled_modpoly(ell);
    if (!path) {
        if (required) raise(ErrorKind::NeedsModPoly, "no modular polynomial for this ell; pass --modpoly");
        return std::nullopt;
    }
    return load_modpoly(*path, ell, F);
}

void emit(const Config& c, const Json& j)
{
    std::cout << j.dump(2) << "\n";
    if (!c.json_path.empty()) {
        std::ofstream out(c.json_path);
        if (!out) raise(ErrorKind::BadInput, "cannot write " + c.json_path);
        out << j.dump(2) << "\n";
    }
}

Json header(const Curve& E, const Integer& ell)
{
    Json j;
    j["curve"] = curve_json(E);
    j["ell"] = int_json(ell);
    return j;
}

int cmd_structure(const Config& c)
{
    Rng rng(c.seed);
    Curve E = load_curve(c, rng);
    Integer ell = need_ell(c);
    WorkingCurve W = load_working(c, E, ell, rng);
    SylowStructure s = sylow_structure(W.curve, ell, rng);
    Json j = header(E, ell);
    j["structure"] = sylow_json(s, W, ell);
    emit(c, j);
    return 0;
}

int cmd_directions(const Config& c, bool level_only)
{
    Rng rng(c.seed);
    Curve E = load_curve(c, rng);
    Integer ell = need_ell(c);
    WorkingCurve W = load_working(c, E, ell, rng);
    SylowStructure s = sylow_structure(W.curve, ell, rng);
    DirectionReport rep = find_directions(W, s, ell, rng);
    Json j = header(E, ell);
    if (level_only) {
        j["level_invariant"] = rep.level_invariant;
        j["definitional_invariant"] = rep.definitional_invariant;
        j["level"] = *rep.level;
        j["height"] = rep.height;
        j["on_floor"] = rep.on_floor;
    } else {
        j["structure"] = sylow_json(s, W, ell);
        j["directions"] = directions_json(rep, W);
    }
    emit(c, j);
    return 0;
}

int cmd_crater(const Config& c)
{
    Rng rng(c.seed);
    Curve E = load_curve(c, rng);
    Integer ell = need_ell(c);
    if (!c.slow) {
        const Integer& q = E.field()->order();
        if (!((q - 1) % ell == 0 && E.order() % ell == 0)) {
            TorsionDegree td = torsion_extension_degree(E, ell);
            if (td.r > kFastMaxDegree)
                raise(ErrorKind::FieldTooLarge, "working field has degree " + std::to_string(td.r) + "; pass --slow");
        }
    }
    std::size_t idx = 0;
    std::vector<FieldElem> js = crater_walk(E, ell, rng, [&](const FieldElem& z) {
        std::cout << Json{{"index", idx++}, {"j", elem_json(z)}}.dump() << std::endl;
    });
    Json j = header(E, ell);
    j["length"] = js.size();
    Json arr = Json::array();
    for (auto& z : js) arr.push_back(elem_json(z));
    j["j_invariants"] = arr;
    std::cout << Json{{"length", js.size()}, {"closed", true}}.dump() << "\n";
    if (!c.json_path.empty()) {
        std::ofstream out(c.json_path);
        out << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_endo(const Config& c)
{
    Rng rng(c.seed);
    Curve E = load_curve(c, rng);
    Integer ell = need_ell(c);
    std::optional<ModPoly> mp = load_mp(c, ell, E.field(), false);
    EndoReport rep = endo_valuation(E, ell, mp ? &*mp : nullptr, rng);
    Json j = header(E, ell);
    j["endo"] = endo_json(rep);
    emit(c, j);
    return 0;
}

int cmd_oracle(const Config& c)
{
    Rng rng(c.seed);
    Curve E = load_curve(c, rng);
    Integer ell = need_ell(c);
    ModPoly mp = *load_mp(c, ell, E.field(), true);
    WorkingCurve W = load_working(c, E, ell, rng);
    SylowStructure s = sylow_structure(W.curve, ell, rng);
    DirectionReport rep = find_directions(W, s, ell, rng);
    Json ks = Json::array();
    unsigned mismatches = 0;
    for (auto& k : all_kernels(W, s, ell)) {
        Direction by_pairing = classify_kernel(rep, k.coord);
        Direction by_oracle = oracle_direction(W, k.gen, ell, mp, rng);
        mismatches += by_pairing != by_oracle;
        ks.push_back({{"coord", {int_json(k.coord.x), int_json(k.coord.y)}},
                      {"pairing", direction_name(by_pairing)},
                      {"oracle", direction_name(by_oracle)}});
    }
    Json j = header(E, ell);
    j["kernels"] = ks;
    j["mismatches"] = mismatches;
    emit(c, j);
    return mismatches ? 3 : 0;
}

int cmd_bench(const Config& c)
{
    Rng rng(c.seed);
    std::vector<BenchSpec> grid;
    for (auto& g : c.grid) grid.push_back(parse_bench_spec(g));
    if (grid.empty()) grid = default_bench_grid();
    Json rows = Json::array();
    std::printf("%5s %3s %3s %22s %6s %14s %14s %10s %10s %8s\n", "ell", "h", "r", "p", "steps", "pair mul/step",
                "class mul/step", "pair s", "class s", "ratio");
    for (auto& spec : grid) {
        BenchFamily fam = bench_family(spec, rng);
        auto t0 = std::chrono::steady_clock::now();
        Integer ell = spec.ell;
        std::optional<ModPoly> mp = load_mp(c, ell, fam.crater.field(), true);
        double load = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        BenchRow row = run_bench(spec, *mp, load, rng);
        std::printf("%5u %3u %3u %22s %6u %14.0f %14.0f %10.4f %10.4f %8.2f\n", spec.ell, spec.h, spec.r,
                    to_decimal(row.family.p).c_str(), row.pairing.steps, row.pairing.mul_per_step(),
                    row.classical.mul_per_step(), row.pairing.seconds, row.classical.seconds, row.ratio());
        auto method = [](const MethodCost& m) {
            return Json{{"steps", m.steps},           {"seconds", m.seconds},
                        {"base_mul", m.base_mul},     {"inversions", m.inversions},
                        {"mul_per_step", m.mul_per_step()}, {"reached_crater", m.reached_crater}};
        };
        rows.push_back({{"ell", spec.ell},
                        {"h", spec.h},
                        {"r", spec.r},
                        {"p", int_json(row.family.p)},
                        {"trace", int_json(row.family.t)},
                        {"d0", row.family.d0},
                        {"modpoly_load_seconds", row.modpoly_load_seconds},
                        {"pairing", method(row.pairing)},
                        {"classical", method(row.classical)},
                        {"ratio", row.ratio()}});
    }
    if (!c.json_path.empty()) {
        std::ofstream out(c.json_path);
        out << Json{{"rows", rows}}.dump(2) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Navigate ordinary isogeny volcanoes with Tate pairings"};
    app.require_subcommand(1);
    Config cfg;

    auto curve_opts = [&](CLI::App* sub) {
        sub->add_option("--curve", cfg.curve_file, "curve file: 'p r A B t' or 'p r a1 a2 a3 a4 a6 t'");
        sub->add_option("--p", cfg.p, "prime");
        sub->add_option("--ext", cfg.ext, "base-change the curve to this degree");
        sub->add_option("--a", cfg.a, "A in y^2 = x^3 + A x + B");
        sub->add_option("--b", cfg.b, "B");
        sub->add_option("--a1", cfg.a1);
        sub->add_option("--a2", cfg.a2);
        sub->add_option("--a3", cfg.a3);
        sub->add_option("--a4", cfg.a4);
        sub->add_option("--a6", cfg.a6);
        sub->add_option("--trace", cfg.trace, "trace of Frobenius (required when q >= 2^32)");
        sub->add_option("--j", cfg.j, "j-invariant; picks the curve or twist with --trace");
        sub->add_option("--ell", cfg.ell, "prime ell")->required();
    };
    auto common = [&](CLI::App* sub) {
        sub->add_option("--modpoly", cfg.modpoly, "modular polynomial file");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_flag("--slow", cfg.slow, "allow large working fields");
        sub->add_option("--json", cfg.json_path, "also write the report here");
    };

    std::vector<std::pair<CLI::App*, std::function<int()>>> cmds;
    auto add = [&](const char* name, const char* help, std::function<int()> fn, bool curve = true) {
        CLI::App* sub = app.add_subcommand(name, help);
        if (curve) curve_opts(sub);
        common(sub);
        cmds.emplace_back(sub, std::move(fn));
        return sub;
    };
    add("structure", "ell-Sylow structure (Algorithm 1)", [&] { return cmd_structure(cfg); });
    add("level", "level invariant and depth below the crater", [&] { return cmd_directions(cfg, true); });
    add("directions", "kernels of ascending/horizontal isogenies", [&] { return cmd_directions(cfg, false); });
    add("crater", "walk around the crater, one j-invariant per line", [&] { return cmd_crater(cfg); });
    add("endo", "ell-valuation of the endomorphism ring index", [&] { return cmd_endo(cfg); });
    add("oracle", "compare pairing directions with classical descents", [&] { return cmd_oracle(cfg); });
    CLI::App* bench = add("bench", "pairing vs classical ascent cost", [&] { return cmd_bench(cfg); }, false);
    bench->add_option("--grid", cfg.grid, "ell:h:r entries (default 3:6:1 5:6:1 7:6:1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        for (auto& [sub, fn] : cmds)
            if (sub->parsed()) return fn();
    } catch (const Error& e) {
        std::cerr << Json{{"error", std::string(kind_name(e.kind()))}, {"message", e.what()}}.dump() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << Json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
    return 2;
}
