// semind: command-line driver for the constructions and checks.
//
// Exit status: 0 every check passed, 1 a check failed, 2 usage error,
// 3 refused over --budget, 4 malformed input.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "semind/constructions.hpp"
#include "semind/covering.hpp"
#include "semind/entropy.hpp"
#include "semind/homcount.hpp"
#include "semind/lpsearch.hpp"
#include "semind/report.hpp"
#include "semind/verify.hpp"

using namespace semind;

namespace {

enum Exit : int { kPass = 0, kFail = 1, kUsage = 2, kBudget = 3, kMalformed = 4 };

struct Globals {
    std::uint64_t budget = 1'000'000'000;
    unsigned workers = 1;
    std::uint64_t seed = 1;
    std::string report;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fixed(double x) {
    std::ostringstream out;
    out << std::setprecision(12) << x;
    return out.str();
}

void require_budget(const std::string& what, const BigInt& need, std::uint64_t budget) {
    if (need > from_u64(budget)) throw BudgetExceeded(what, need.fits_ulong_p() ? need.get_ui() : UINT64_MAX, budget);
}

// ---------------------------------------------------------------------------

struct ConstructArgs {
    std::size_t k = 0;
    bool even = false;
    std::string fixture_name;
    std::string out;
};

int run_construct(const ConstructArgs& a, const Globals& g, Json& rep) {
    LabelledForest f;
    if (!a.fixture_name.empty()) {
        f = fixture(a.fixture_name);
    } else {
        if (a.k == 0) throw UsageError("construct: give --k K (K >= 1) or --fixture NAME");
        require_budget("construct: forest vertices", forest_size(sequences(a.k)), g.budget);
        f = a.even ? build_h_even(a.k) : build_h_odd(a.k);
    }
    write_ecg_file(a.out, f.graph);
    write_roles_file(a.out + ".roles", f);
    const auto p = cover_profile(f);
    std::cout << "wrote " << a.out << " and " << a.out << ".roles\n"
              << "vertices " << f.graph.num_vertices() << "\nedges " << f.graph.num_edges() << "\nspine "
              << f.spine_length << "\nmultiplicity "
              << (p.uniform_multiplicity ? std::to_string(*p.uniform_multiplicity) : std::string("none")) << '\n';
    rep["vertices"] = f.graph.num_vertices();
    rep["edges"] = f.graph.num_edges();
    rep["spine_length"] = f.spine_length;
    rep["multiplicity"] = p.uniform_multiplicity ? Json(*p.uniform_multiplicity) : Json(nullptr);
    return kPass;
}

// ---------------------------------------------------------------------------

struct PatternArgs {
    std::string pattern;
    std::size_t alt = 0;
    std::string host;
    std::string method = "auto";
};

EdgeColouredGraph load_pattern(const PatternArgs& a) {
    if (!a.pattern.empty() == (a.alt != 0)) throw UsageError("give exactly one of --pattern FILE or --alt L");
    return a.pattern.empty() ? alternating_path(a.alt) : read_ecg_file(a.pattern);
}

HomCount count_hom(const EdgeColouredGraph& h, const EdgeColouredGraph& host, const std::string& method,
                   std::uint64_t budget) {
    if (method == "brute") return hom_brute(h, host, budget);
    if (method == "forest") return hom_forest(h, host);
    return is_forest(h) ? hom_forest(h, host) : hom_brute(h, host, budget);
}

int run_hom(const PatternArgs& a, const Globals& g, Json& rep, bool density_only) {
    const auto h = load_pattern(a);
    const auto host = read_ecg_file(a.host);
    const HomCount hom = count_hom(h, host, a.method, g.budget);
    rep["hom"] = exact(hom);
    if (!density_only) std::cout << "hom " << hom << '\n';
    if (host.num_vertices() == 0) {
        if (density_only) throw InvalidInput("density: undefined for a host with no vertices");
        return kPass;
    }
    const Rational t = make_rational(hom, pow_int(host.num_vertices(), h.num_vertices()));
    rep["t"] = exact(t);
    std::cout << "t " << to_fraction_string(t) << '\n';
    if (density_only) std::cout << "t_approx " << fixed(to_double(t)) << '\n';
    return kPass;
}

// ---------------------------------------------------------------------------

struct CoveringArgs {
    std::size_t k_min = 1;
    std::size_t k_max = 0;
    std::size_t direct_max = kDefaultDirectMax;
};

// Sequential on purpose: the direct counts near direct_max need gigabytes each.
int run_verify_covering(const CoveringArgs& a, const Globals& g, Json& rep) {
    if (a.k_min == 0 || a.k_max < a.k_min) throw UsageError("verify-covering: need 1 <= --k-min <= --k-max");
    for (std::size_t k = a.k_min; k <= std::min(a.k_max, a.direct_max); ++k) {
        require_budget("verify-covering: forest vertices for a direct count at k=" + std::to_string(k),
                       forest_size(sequences(k)), g.budget);
    }
    bool all = true;
    Json rows = Json::array();
    for (std::size_t k = a.k_min; k <= a.k_max; ++k) {
        const auto r = verify_appendix(k, a.direct_max);
        std::cout << r.text();
        rows.push_back(to_json(r));
        all = all && r.pass;
    }
    rep["rows"] = rows;
    std::cout << (all ? "all covering checks passed\n" : "covering check FAILED\n");
    return all ? kPass : kFail;
}

// ---------------------------------------------------------------------------

struct IneqArgs {
    std::size_t k = 0;
    std::vector<std::string> hosts;
    std::string forest = "built";
    std::string forest_file;
    std::size_t max_n = 7;
    std::string which = "both";
};

LabelledForest load_forest(const std::string& name, const std::string& file, std::size_t k) {
    if (!file.empty()) return read_labelled_forest_files(file, file + ".roles");
    if (name == "built") return build_h_odd(k);
    return fixture(name);
}

int run_verify_ineq(const IneqArgs& a, const Globals& g, Json& rep) {
    if (a.k == 0) throw UsageError("verify-ineq: --k must be at least 1");
    std::vector<std::pair<std::string, EdgeColouredGraph>> corpus;
    if (a.hosts.size() == 4 && a.hosts[0] == "random" && a.hosts[2] == "seed") {
        const std::uint64_t count = std::stoull(a.hosts[1]);
        const std::uint64_t seed = std::stoull(a.hosts[3]);
        if (a.max_n == 0) throw UsageError("verify-ineq: --max-n must be at least 1");
        require_budget("verify-ineq: random hosts", from_u64(count), g.budget);
        std::mt19937_64 rng(seed);
        for (std::uint64_t i = 0; i < count; ++i) {
            const std::size_t n = 1 + rng() % a.max_n;
            corpus.push_back({"random#" + std::to_string(i), random_host(n, rng)});
        }
        rep["host_seed"] = seed;
    } else if (a.hosts.size() == 2 && a.hosts[0] == "exhaustive") {
        const std::size_t n = std::stoull(a.hosts[1]);
        const std::uint64_t total = host_count(n);
        require_budget("verify-ineq: hosts on " + std::to_string(n) + " vertices", from_u64(total), g.budget);
        for_each_host(n, 0, total, [&](std::uint64_t i, const EdgeColouredGraph& host) {
            corpus.push_back({"exhaustive#" + std::to_string(i), host});
        });
    } else {
        throw UsageError("verify-ineq: --hosts takes 'random N seed S' or 'exhaustive n'");
    }
    if (a.which != "both" && a.which != "ph" && a.which != "hp") throw UsageError("verify-ineq: --which is ph, hp or both");
    const auto h = load_forest(a.forest, a.forest_file, a.k);

    std::size_t checked = 0, failed = 0;
    Json records = Json::array();
    for (const auto& [label, host] : corpus) {
        std::vector<InequalityReport> rs;
        if (a.which != "hp") rs.push_back(check_eq_ph(h, a.k, host));
        if (a.which != "ph") rs.push_back(check_eq_hp(h, a.k, host));
        for (const auto& r : rs) {
            ++checked;
            Json j = to_json(r);
            j["host_label"] = label;
            records.push_back(std::move(j));
            if (!r.holds) {
                ++failed;
                std::cout << "VIOLATION " << r.name << ' ' << label << ' ' << r.host << '\n';
            }
        }
    }
    rep["records"] = records;
    std::cout << "forest " << (a.forest_file.empty() ? a.forest : a.forest_file) << " edges " << h.graph.num_edges()
              << "\nhosts " << corpus.size() << "\nchecks " << checked << "\nviolations " << failed << '\n';
    return failed == 0 ? kPass : kFail;
}

// ---------------------------------------------------------------------------

struct BoundArgs {
    std::size_t k = 0;
    bool odd = false;
    bool even = false;
    std::size_t exhaustive = 0;
    std::vector<std::size_t> tightness;
    bool heuristic = false;
    std::size_t restarts = 64;
};

int run_bound_check(const BoundArgs& a, const Globals& g, Json& rep) {
    if (a.k == 0) throw UsageError("bound-check: --pattern-k must be at least 1");
    if (a.odd == a.even) throw UsageError("bound-check: give exactly one of --odd or --even");
    if ((a.exhaustive != 0) == !a.tightness.empty()) throw UsageError("bound-check: give exactly one of --exhaustive n or --tightness LIST");
    const auto pattern = alternating_path(a.odd ? 2 * a.k + 1 : 2 * a.k);
    const Rational bound = a.odd ? odd_path_bound(a.k) : even_path_bound(a.k);
    rep["pattern_edges"] = pattern.num_edges();
    rep["bound"] = exact(bound);
    std::cout << "pattern P" << pattern.num_edges() << " bound " << to_fraction_string(bound) << '\n';
    if (a.exhaustive != 0) {
        const auto r = exhaustive_max(pattern, a.exhaustive,
                                      {.workers = g.workers, .budget = g.budget, .allow_heuristic = a.heuristic,
                                       .seed = g.seed, .restarts = a.restarts});
        const bool holds = r.max <= bound;
        rep["result"] = to_json(r);
        rep["holds"] = holds;
        std::cout << (r.heuristic ? "heuristic " : "exhaustive ") << "n " << a.exhaustive << " hosts "
                  << r.hosts_examined << "\nmax " << to_fraction_string(r.max) << " (" << fixed(to_double(r.max))
                  << ")\nargmax index " << r.argmax_index << '\n'
                  << to_ecg_string(r.argmax) << (holds ? "bound holds\n" : "bound VIOLATED\n");
        return holds ? kPass : kFail;
    }
    if (!a.odd) throw UsageError("bound-check: --tightness uses the odd circulant family; pass --odd");
    const auto curve = tightness_curve(a.k, a.tightness);
    Json points = Json::array();
    bool holds = true;
    for (const auto& pt : curve) {
        points.push_back(to_json(pt));
        if (!pt.t) {
            std::cout << "n " << pt.n << ' ' << pt.note << '\n';
            continue;
        }
        holds = holds && sgn(*pt.gap) >= 0;
        std::cout << "n " << pt.n << " red_degree " << pt.residues.size() << " t " << to_fraction_string(*pt.t)
                  << " gap " << fixed(to_double(*pt.gap)) << '\n';
    }
    rep["curve"] = points;
    rep["holds"] = holds;
    std::cout << (holds ? "bound holds\n" : "bound VIOLATED\n");
    return holds ? kPass : kFail;
}

// ---------------------------------------------------------------------------

struct LpArgs {
    std::size_t k = 0;
    std::string extra;
    std::string out;
};

int run_lp_search(const LpArgs& a, const Globals& g, Json& rep) {
    if (a.k == 0) throw UsageError("lp-search: --k must be at least 1");
    std::vector<LpRow> extra;
    if (!a.extra.empty()) {
        std::ifstream in(a.extra);
        if (!in) throw InvalidInput("cannot open " + a.extra);
        extra = parse_extra_rows(in, a.k);
    }
    const auto sol = solve_feasible(build_constraints(a.k, extra));
    rep["pivots"] = sol.pivots;
    if (sol.status != LpStatus::Feasible) {
        rep["status"] = "infeasible";
        std::cout << "infeasible after " << sol.pivots << " pivots\n";
        return kFail;
    }
    rep["status"] = "feasible";
    const auto scaled = scale_solution(sol, a.k);
    const std::string table = solution_table(scaled);
    std::cout << table;
    {
        std::ofstream out(a.out + ".table");
        if (!out) throw InvalidInput("cannot write " + a.out + ".table");
        out << table;
    }
    rep["triple"] = to_json(scaled.triple);
    rep["t"] = exact(scaled.t);
    require_budget("lp-search: forest vertices", forest_size(scaled.triple), g.budget);
    const auto forest = synthesize_forest(a.k, scaled.triple);
    write_ecg_file(a.out, forest.graph);
    write_roles_file(a.out + ".roles", forest);
    const auto check = check_synthesized(a.k, scaled.triple, forest.graph.num_vertices());
    rep["synthesis"] = to_json(check);
    const bool ok = check.uniform_multiplicity && *check.uniform_multiplicity == scaled.t + 1;
    std::cout << "wrote " << a.out << ", " << a.out << ".roles and " << a.out << ".table\nvertices "
              << forest.graph.num_vertices() << "\nmultiplicity "
              << (check.uniform_multiplicity ? check.uniform_multiplicity->get_str() : std::string("none")) << '\n'
              << (ok ? "uniform cover\n" : "cover NOT uniform\n");
    return ok ? kPass : kFail;
}

// ---------------------------------------------------------------------------

struct EntropyArgs {
    std::string fixture_name;
    std::string host;
    std::uint64_t glue_guard = kDefaultHomGuard;
};

int run_entropy_check(const EntropyArgs& a, const Globals&, Json& rep) {
    constexpr double kTol = 1e-9;
    const auto h = fixture(a.fixture_name);
    const auto g = read_ecg_file(a.host);
    const auto p = alternating_path(h.spine_length);
    const auto profile = cover_profile(h);
    if (!profile.uniform_multiplicity) throw InvalidInput("entropy-check: fixture covering is not uniform");
    const HomCount hp = hom_forest(p, g);
    rep["hom_path"] = exact(hp);
    if (sgn(hp) == 0) {
        std::cout << "hom(P, host) = 0; no distribution to check\n";
        rep["pass"] = true;
        return kPass;
    }
    const double log_hom = log2_big(hp);
    const double formula = path_entropy_formula(p, g);
    const double closed = closed_form_entropy(h, p, g);
    const double expected = static_cast<double>(*profile.uniform_multiplicity) * log_hom;
    bool ok = std::abs(formula - log_hom) <= kTol && std::abs(closed - expected) <= kTol;
    std::cout << "log2 hom(P) " << fixed(log_hom) << "\npath formula " << fixed(formula) << "\nclosed form "
              << fixed(closed) << "\nmultiplicity * log2 hom(P) " << fixed(expected) << '\n';
    rep["log2_hom_path"] = log_hom;
    rep["path_formula"] = formula;
    rep["closed_form"] = closed;
    const std::uint64_t states = saturating_pow(g.num_vertices(), h.graph.num_vertices());
    if (states <= a.glue_guard) {
        const auto d = glued_distribution(h, p, g, a.glue_guard);
        const bool support = support_is_homomorphic(d, h.graph, g);
        const double glued = entropy(d);
        ok = ok && support && std::abs(glued - closed) <= kTol;
        std::cout << "glued entropy " << fixed(glued) << "\nglued support " << d.table().size() << " assignments, "
                  << (support ? "all homomorphisms" : "NOT all homomorphisms") << '\n';
        rep["glued_entropy"] = glued;
        rep["glued_support"] = d.table().size();
        rep["support_homomorphic"] = support;
    } else {
        std::cout << "glued distribution skipped: " << states << " assignments exceed --glue-guard\n";
        rep["glued_entropy"] = nullptr;
    }
    rep["pass"] = ok;
    std::cout << (ok ? "entropy checks passed\n" : "entropy check FAILED\n");
    return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Alternating-path densities: constructions, covering checks and exact verification."};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand
    Globals g;
    app.add_option("--budget", g.budget, "Work cap (hosts, maps, forest vertices)")->check(CLI::PositiveNumber);
    app.add_option("--workers", g.workers, "Threads for exhaustive sweeps")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "Seed for randomised searches");
    app.add_option("--report", g.report, "Write a JSON report here");

    ConstructArgs construct;
    auto* c_construct = app.add_subcommand("construct", "Build a forest and write .ecg plus .roles");
    c_construct->add_option("--k", construct.k, "Spine parameter");
    c_construct->add_flag("--even", construct.even, "Build the even-length variant");
    c_construct->add_option("--fixture", construct.fixture_name, "H3_small, H3_large or H5");
    c_construct->add_option("--out", construct.out, "Output .ecg path")->required();

    PatternArgs hom, dens;
    auto* c_hom = app.add_subcommand("hom", "Count homomorphisms");
    auto* c_density = app.add_subcommand("density", "Exact homomorphism density");
    for (auto [cmd, args] : {std::pair{c_hom, &hom}, std::pair{c_density, &dens}}) {
        cmd->add_option("--pattern", args->pattern, "Pattern .ecg");
        cmd->add_option("--alt", args->alt, "Use the alternating path with this many edges");
        cmd->add_option("--host", args->host, "Host .ecg")->required();
        cmd->add_option("--method", args->method, "auto, brute or forest")
            ->check(CLI::IsMember({"auto", "brute", "forest"}));
    }

    CoveringArgs cover;
    auto* c_cover = app.add_subcommand("verify-covering", "Cover sums and multiplicities for k in a range");
    c_cover->add_option("--k-max", cover.k_max)->required();
    c_cover->add_option("--k-min", cover.k_min);
    c_cover->add_option("--direct-max", cover.direct_max, "Largest k counted on the built forest");

    IneqArgs ineq;
    auto* c_ineq = app.add_subcommand("verify-ineq", "Path/forest inequalities on a host corpus");
    c_ineq->add_option("--k", ineq.k)->required();
    c_ineq->add_option("--hosts", ineq.hosts, "'random N seed S' or 'exhaustive n'")->required()->expected(2, 4);
    c_ineq->add_option("--forest", ineq.forest, "built or a fixture name");
    c_ineq->add_option("--forest-file", ineq.forest_file, ".ecg with a .roles sidecar");
    c_ineq->add_option("--max-n", ineq.max_n, "Largest random host");
    c_ineq->add_option("--which", ineq.which, "ph, hp or both");

    BoundArgs bound;
    auto* c_bound = app.add_subcommand("bound-check", "Maximum density of an alternating path against its bound");
    c_bound->add_option("--pattern-k", bound.k)->required();
    c_bound->add_flag("--odd", bound.odd, "Path with 2k+1 edges");
    c_bound->add_flag("--even", bound.even, "Path with 2k edges");
    c_bound->add_option("--exhaustive", bound.exhaustive, "All hosts on n vertices");
    c_bound->add_option("--tightness", bound.tightness, "Circulant sizes")->delimiter(',');
    c_bound->add_flag("--heuristic", bound.heuristic, "Fall back to local search over budget");
    c_bound->add_option("--restarts", bound.restarts);

    LpArgs lp;
    auto* c_lp = app.add_subcommand("lp-search", "Solve for a sequence triple and synthesise its forest");
    c_lp->add_option("--k", lp.k)->required();
    c_lp->add_option("--extra", lp.extra, "File of extra rows");
    c_lp->add_option("--out", lp.out, "Output .ecg path")->required();

    EntropyArgs ent;
    auto* c_ent = app.add_subcommand("entropy-check", "Entropy identities for a fixture on a host");
    c_ent->add_option("--fixture", ent.fixture_name)->required();
    c_ent->add_option("--host", ent.host)->required();
    c_ent->add_option("--glue-guard", ent.glue_guard, "Largest n^v(h) for the glued distribution");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    }

    Json rep;
    int status = kFail;
    auto* cmd = app.get_subcommands().front();
    rep["command"] = cmd->get_name();
    rep["seed"] = g.seed;
    rep["budget"] = g.budget;
    try {
        if (cmd == c_construct) status = run_construct(construct, g, rep);
        if (cmd == c_hom) status = run_hom(hom, g, rep, false);
        if (cmd == c_density) status = run_hom(dens, g, rep, true);
        if (cmd == c_cover) status = run_verify_covering(cover, g, rep);
        if (cmd == c_ineq) status = run_verify_ineq(ineq, g, rep);
        if (cmd == c_bound) status = run_bound_check(bound, g, rep);
        if (cmd == c_lp) status = run_lp_search(lp, g, rep);
        if (cmd == c_ent) status = run_entropy_check(ent, g, rep);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "refused: " << e.what() << '\n';
        status = kBudget;
        rep["refused"] = e.what();
    } catch (const std::invalid_argument& e) {
        std::cerr << "malformed input: " << e.what() << '\n';
        return kMalformed;
    } catch (const std::out_of_range& e) {
        std::cerr << "malformed input: " << e.what() << '\n';
        return kMalformed;
    }
    rep["exit_status"] = status;
    if (!g.report.empty()) write_json_file(g.report, rep);
    return status;
}
