// Command-line front end: maps subcommands onto the library and renders
// results as human text, canonical structured files, or CSV.

#include <CLI11.hpp>

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gbell/error.hpp"
#include "gbell/inequalities.hpp"
#include "gbell/io.hpp"
#include "gbell/quantifiers.hpp"
#include "gbell/quantum.hpp"
#include "gbell/verify.hpp"

namespace {

using namespace gbell;

enum class Format { text, structured, csv };

struct CliConfig {
    std::uint64_t budget = 1'000'000;
    double tol = 1e-12;
    int threads = 1;
    std::string format = "text";
    bool long_run = false;
    std::uint64_t seed = 1;

    Format fmt() const {
        if (format == "text") return Format::text;
        if (format == "structured") return Format::structured;
        if (format == "csv") return Format::csv;
        throw ParseError("unknown format '" + format + "' (text|structured|csv)");
    }
    EnumerateOptions enum_opts() const {
        EnumerateOptions o;
        o.budget = budget;
        o.threads = threads;
        return o;
    }
};

// Per-command result in all three renditions; main() picks one.
struct Output {
    std::string text;
    std::string structured;
    std::string csv;

    const std::string& pick(Format f) const {
        switch (f) {
        case Format::text: return text;
        case Format::structured: return structured;
        default: return csv;
        }
    }
};

void emit(const Output& out, const CliConfig& cfg, const std::string& out_path) {
    const std::string& body = out.pick(cfg.fmt());
    if (!out_path.empty())
        io::write_text_file(out_path, body);
    else
        std::cout << body;
}

std::string describe_scenario(const Scenario& s, const std::string& name) {
    std::string t = name + ": " + std::to_string(s.measurement_count()) + " measurements, " +
                    std::to_string(s.context_count()) + " contexts, " +
                    std::to_string(s.dim()) + " coordinates\n";
    for (int ci = 0; ci < s.context_count(); ++ci) {
        t += "  context " + std::to_string(ci) + ":";
        for (int m : s.context(ci)) t += " " + s.label(m);
        t += "\n";
    }
    return t;
}

std::string scenario_csv(const Scenario& s) {
    std::string csv = "context,measurements\n";
    for (int ci = 0; ci < s.context_count(); ++ci) {
        csv += std::to_string(ci) + ",";
        const auto& c = s.context(ci);
        for (size_t i = 0; i < c.size(); ++i) csv += (i ? "*" : "") + s.label(c[i]);
        csv += "\n";
    }
    return csv;
}

std::string vertices_csv(const VPolytope& v) {
    std::string csv;
    for (const auto& row : v.vertices) {
        for (size_t i = 0; i < row.size(); ++i) csv += (i ? "," : "") + rat_to_string(row[i]);
        csv += "\n";
    }
    return csv;
}

std::string certificate_text(const char* name, const FractionCertificate& c) {
    std::string t = std::string(name) + " = " + rat_to_string(c.value) + " (" +
                    std::to_string(c.classical_part.size()) + " classical vertices, free part " +
                    (c.free_part ? "present" : "absent") + ")\n";
    return t;
}

// ---------------------------------------------------------------- scenario --

int cmd_scenario(const CliConfig& cfg, const std::string& ref, const std::string& out_path) {
    Output out;
    if (io::is_bell_ref(ref)) {
        const BellScenario bs = io::bell_from_ref(ref);
        out.text = describe_scenario(bs.alice(), "alice") + describe_scenario(bs.bob(), "bob") +
                   describe_scenario(bs.joint(), "joint");
        out.structured = io::write_bell_scenario(bs);
        out.csv = scenario_csv(bs.joint());
    } else {
        const Scenario s = io::scenario_from_ref(ref);
        out.text = describe_scenario(s, ref);
        out.structured = io::write_scenario(s);
        out.csv = scenario_csv(s);
    }
    emit(out, cfg, out_path);
    return 0;
}

// ---------------------------------------------------------------- vertices --

int cmd_vertices(const CliConfig& cfg, const std::string& ref, const std::string& out_path,
                 const std::string& porta_prefix) {
    HPolytope h;
    std::optional<BellScenario> bs;
    if (io::is_bell_ref(ref)) {
        bs = io::bell_from_ref(ref);
        h = nsnd_hrep(*bs);
    } else {
        h = nd_hrep(io::scenario_from_ref(ref));
    }
    const VPolytope v = enumerate_vertices(h, cfg.enum_opts());

    Output out;
    out.text = ref + ": " + std::to_string(v.count()) + " vertices in dimension " +
               std::to_string(v.dim) + "\n";
    if (bs) {
        const verify::VertexClassification c = verify::classify_vertices(*bs, v);
        out.text += "local: " + std::to_string(c.local_count) +
                    ", nonlocal: " + std::to_string(v.count() - c.local_count) +
                    ", contextual Bob marginal: " + std::to_string(c.marginal_contextual_count) +
                    ", nonlocal-and-contextual: " + std::to_string(c.conflict_count) + "\n";
    }
    out.structured = io::write_vrep(v);
    out.csv = vertices_csv(v);

    if (!porta_prefix.empty()) {
        io::write_text_file(porta_prefix + ".ieq", io::write_hrep(h));
        io::write_text_file(porta_prefix + ".ext", io::write_vrep(v));
        out.text += "wrote " + porta_prefix + ".ieq and " + porta_prefix + ".ext\n";
    }
    emit(out, cfg, out_path);
    return 0;
}

// --------------------------------------------------------------- fractions --

int cmd_fractions(const CliConfig& cfg, const std::string& behavior_path,
                  const std::string& out_path) {
    const std::string text = io::read_text_file(behavior_path);
    const Behavior b = io::read_behavior(text);

    Output out;
    out.csv = "fraction,value\n";
    // A composed scenario is recognizable from the stored reference line.
    const auto pos = text.find("scenario ");
    const auto eol = text.find('\n', pos);
    const std::string ref = text.substr(pos + 9, eol - pos - 9);

    if (io::is_bell_ref(ref)) {
        const BellScenario bs = io::bell_from_ref(ref);
        const TradeoffQuantifiers t = check_quantifier_tradeoff(bs, b, cfg.enum_opts());
        out.text = certificate_text("nonlocal fraction", t.nonlocal) +
                   certificate_text("contextual fraction (Bob marginal)", t.contextual) +
                   certificate_text("nonclassical fraction", t.nonclassical) +
                   std::string("trade-off (nonlocal + contextual <= nonclassical): ") +
                   (t.holds ? "holds" : "fails") + "\n";
        out.structured = io::write_certificate(t.nonlocal) + io::write_certificate(t.contextual) +
                         io::write_certificate(t.nonclassical);
        out.csv += "nonlocal," + rat_to_string(t.nonlocal.value) + "\n";
        out.csv += "contextual," + rat_to_string(t.contextual.value) + "\n";
        out.csv += "nonclassical," + rat_to_string(t.nonclassical.value) + "\n";
        out.csv += std::string("tradeoff-holds,") + (t.holds ? "1" : "0") + "\n";
    } else {
        const FractionCertificate c = contextual_fraction(b);
        out.text = certificate_text("contextual fraction", c);
        out.structured = io::write_certificate(c);
        out.csv += "contextual," + rat_to_string(c.value) + "\n";
    }
    emit(out, cfg, out_path);
    return 0;
}

// -------------------------------------------------------------------- ineq --

struct IneqArgs {
    std::string family;
    std::string scenario_ref;
    std::string from_file;
    std::string evaluate_file;
    bool lift = false;
    bool maximize = false;
    bool normalize = false;
};

// Families defined on a single-party scenario.
std::optional<Inequality> build_single_party(const std::string& f, const ScenarioPtr& sc) {
    if (f.rfind("cycle:", 0) == 0) {
        std::vector<int> gamma;
        for (char c : f.substr(6)) {
            if (c != '+' && c != '-') throw ParseError("cycle signs must be +/-");
            gamma.push_back(c == '+' ? 1 : -1);
        }
        return ncycle_nc(sc, gamma);
    }
    if (f == "kcbs") return kcbs(sc);
    if (f == "square-grid") return pm_noncontextuality(sc);
    return std::nullopt;
}

Inequality build_inequality(const IneqArgs& a) {
    if (!a.from_file.empty()) return io::read_inequality(io::read_text_file(a.from_file));
    if (a.family.empty())
        throw ParseError("ineq needs --family or --from");
    const std::string& f = a.family;

    const auto need_ref = [&]() -> const std::string& {
        if (a.scenario_ref.empty()) throw ParseError("--family " + f + " needs --scenario");
        return a.scenario_ref;
    };
    if (a.lift) {
        const BellScenario bs = io::bell_from_ref(need_ref());
        const auto bob = build_single_party(f, bs.bob_ptr());
        if (!bob) throw ParseError("--lift applies to single-party families only");
        return lift_bob(bs, *bob);
    }
    if (f.rfind("cycle:", 0) == 0)
        return *build_single_party(f, share(io::scenario_from_ref(need_ref())));
    if (f == "kcbs") {
        const std::string ref = a.scenario_ref.empty() ? "ncycle:5" : a.scenario_ref;
        return *build_single_party(f, share(io::scenario_from_ref(ref)));
    }
    if (f == "square-grid") {
        const std::string ref = a.scenario_ref.empty() ? "pm" : a.scenario_ref;
        return *build_single_party(f, share(io::scenario_from_ref(ref)));
    }
    if (f.rfind("chsh:", 0) == 0) {
        const auto comma = f.find(',');
        if (comma == std::string::npos) throw ParseError("expected chsh:<i>,<j>");
        const int i = std::stoi(f.substr(5, comma - 5));
        const int j = std::stoi(f.substr(comma + 1));
        return chsh_usual(io::bell_from_ref(need_ref()), i, j);
    }
    if (f == "product-pairs") return chsh_product_pairs(io::bell_from_ref(need_ref()));
    if (f == "product-mixed") return chsh_product_mixed(io::bell_from_ref(need_ref()));
    if (f == "chained") return chained(io::bell_from_ref(need_ref()));
    if (f == "pentagon-classicality") {
        const std::string ref = a.scenario_ref.empty() ? "alice:2/ncycle:5" : a.scenario_ref;
        return classicality_pentagon(io::bell_from_ref(ref));
    }
    throw ParseError("unknown family '" + f +
                     "' (cycle:<signs>|kcbs|chsh:<i>,<j>|product-pairs|product-mixed|"
                     "chained|square-grid|pentagon-classicality)");
}

// The scenario reference the inequality's coordinates live on.
std::string ineq_ref(const IneqArgs& a) {
    if (!a.scenario_ref.empty()) return a.scenario_ref;
    if (a.family == "kcbs") return "ncycle:5";
    if (a.family == "square-grid") return "pm";
    if (a.family == "pentagon-classicality") return "alice:2/ncycle:5";
    return "";
}

int cmd_ineq(const CliConfig& cfg, const IneqArgs& a, const std::string& out_path) {
    const Inequality iq = build_inequality(a);
    const std::string ref = ineq_ref(a);

    Output out;
    out.text = "label: " + iq.label + "\nbound: " + rat_to_string(iq.bound) + "\nterms: " +
               std::to_string(iq.terms.size()) + "\n";
    for (const auto& [subset, coeff] : iq.terms) {
        out.text += "  " + rat_to_string(coeff) + " *";
        for (int m : subset) out.text += " " + iq.scenario->label(m);
        out.text += "\n";
    }
    out.structured = ref.empty() ? "" : io::write_inequality(iq, ref);
    out.csv = "term,coeff\n";
    for (const auto& [subset, coeff] : iq.terms) {
        std::string key;
        for (size_t i = 0; i < subset.size(); ++i)
            key += (i ? "*" : "") + iq.scenario->label(subset[i]);
        out.csv += key + "," + rat_to_string(coeff) + "\n";
    }

    if (!a.evaluate_file.empty()) {
        const Behavior b = io::read_behavior(io::read_text_file(a.evaluate_file));
        const Rat v = iq.evaluate(b);
        out.text += "value: " + rat_to_string(v) + " (" +
                    (v <= iq.bound ? "satisfied" : "violated") + ")\n";
        out.csv += "value," + rat_to_string(v) + "\n";
        out.structured += "value " + rat_to_string(v) + "\n";
    }

    if (a.maximize || a.normalize) {
        if (ref.empty()) throw ParseError("--maximize/--normalize need --scenario");
        const HPolytope h = io::is_bell_ref(ref) ? nsnd_hrep(io::bell_from_ref(ref))
                                                 : nd_hrep(io::scenario_from_ref(ref));
        if (a.maximize) {
            const LpResult r = maximize_linear(h, iq.compile());
            out.text += "ambient maximum: " + rat_to_string(r.value) + "\n";
            out.csv += "ambient-maximum," + rat_to_string(r.value) + "\n";
            out.structured += "ambient-maximum " + rat_to_string(r.value) + "\n";
        }
        if (a.normalize) {
            const NormalizedInequality n = normalize(iq, h);
            out.text += "normalized: (value - " + rat_to_string(iq.bound) + ") / " +
                        rat_to_string(n.ambient_max - iq.bound) + "\n";
            out.csv += "normalization-denominator," + rat_to_string(n.ambient_max - iq.bound) +
                       "\n";
            out.structured +=
                "normalization-denominator " + rat_to_string(n.ambient_max - iq.bound) + "\n";
        }
    }
    emit(out, cfg, out_path);
    return 0;
}

// ------------------------------------------------------------------ verify --

struct VerifyArgs {
    std::string check;
    int n = 0; // 0 = the check's default range
    std::string family = "product-pairs";
    int samples = 100;
};

std::vector<verify::CheckReport> run_verify(const CliConfig& cfg, const VerifyArgs& a) {
    using namespace gbell::verify;
    std::vector<CheckReport> reps;
    const auto range = [&](int lo, int hi) {
        std::vector<int> ns;
        if (a.n != 0)
            ns.push_back(a.n);
        else
            for (int n = lo; n <= hi; ++n) ns.push_back(n);
        return ns;
    };

    if (a.check == "vertex-exclusion" || a.check == "marginal-factorization") {
        const int n = a.n == 0 ? 3 : a.n;
        if (n >= 5 && !cfg.long_run)
            throw ParseError("n >= 5 enumerates a very large polytope; pass --long to confirm");
        const BellScenario bs = BellScenario::make(alice_side(2), n_cycle(n));
        const VPolytope verts = nsnd_vertices(bs, cfg.enum_opts());
        if (a.check == "vertex-exclusion")
            reps.push_back(check_vertex_exclusion(bs, verts, 16, cfg.seed));
        else
            reps.push_back(check_marginal_factorization(bs, verts));
    } else if (a.check == "pair-mixtures") {
        for (int n : range(3, 6)) reps.push_back(check_pair_mixtures(n));
    } else if (a.check == "cycle-maximizers") {
        for (int n : range(3, 6)) reps.push_back(check_cycle_maximizers(n));
    } else if (a.check == "max-violation") {
        ViolationFamily fam;
        if (a.family == "product-pairs")
            fam = ViolationFamily::product_pairs;
        else if (a.family == "product-mixed")
            fam = ViolationFamily::product_mixed;
        else if (a.family == "chained")
            fam = ViolationFamily::chained_walk;
        else
            throw ParseError("unknown family '" + a.family +
                             "' (product-pairs|product-mixed|chained)");
        const bool chained_fam = fam == ViolationFamily::chained_walk;
        const int n = a.n == 0 ? (chained_fam ? 3 : 4) : a.n;
        const BellScenario bs =
            BellScenario::make(alice_side(chained_fam ? n : 2), n_cycle(n));
        reps.push_back(check_max_violation(bs, fam, nullptr, cfg.enum_opts()));
    } else if (a.check == "grid-counterexample") {
        reps.push_back(square_grid_counterexample().report);
    } else if (a.check == "monogamy") {
        reps.push_back(check_monogamy());
    } else if (a.check == "fraction-tradeoff") {
        const int n = a.n == 0 ? 3 : a.n;
        if (n >= 5 && !cfg.long_run)
            throw ParseError("n >= 5 enumerates a very large polytope; pass --long to confirm");
        const BellScenario bs = BellScenario::make(alice_side(2), n_cycle(n));
        const VPolytope verts = nsnd_vertices(bs, cfg.enum_opts());
        reps.push_back(check_fraction_tradeoff_samples(bs, verts, a.samples, cfg.seed));
    } else if (a.check == "vertex-oracle") {
        for (int n : range(3, 6)) reps.push_back(check_cycle_vertex_oracle(n));
    } else if (a.check == "quantum-demo") {
        reps.push_back(check_quantum_demo());
    } else {
        throw ParseError("unknown check '" + a.check +
                         "' (vertex-exclusion|pair-mixtures|cycle-maximizers|"
                         "marginal-factorization|max-violation|grid-counterexample|monogamy|"
                         "fraction-tradeoff|vertex-oracle|quantum-demo)");
    }
    return reps;
}

int cmd_verify(const CliConfig& cfg, const VerifyArgs& a, const std::string& out_path) {
    const std::vector<verify::CheckReport> reps = run_verify(cfg, a);
    Output out;
    out.csv = "check,result\n";
    bool all_pass = true;
    for (const auto& r : reps) {
        out.text += verify::format_report(r);
        out.structured += io::write_report(r);
        out.csv += r.name + "," + (r.pass ? "PASS" : "FAIL") + "\n";
        all_pass = all_pass && r.pass;
    }
    emit(out, cfg, out_path);
    return all_pass ? 0 : 1;
}

// ----------------------------------------------------------------- quantum --

int cmd_quantum_demo(const CliConfig& cfg, const std::string& out_path,
                     const std::string& emit_behavior_path) {
    const verify::CheckReport r = verify::check_quantum_demo();
    Output out;
    out.text = verify::format_report(r);
    out.structured = io::write_report(r);
    out.csv = "check,result\n" + r.name + std::string(",") + (r.pass ? "PASS" : "FAIL") + "\n";

    if (!emit_behavior_path.empty()) {
        const quantum::PentagonSetup s = quantum::pentagon_setup();
        const quantum::FloatBehavior fb =
            quantum::behavior_from_state(s.scenario, s.state, {s.alice}, s.bob);
        const quantum::RationalizedBehavior rb =
            quantum::rationalize_behavior(s.scenario, fb, cfg.tol);
        io::write_text_file(emit_behavior_path,
                            io::write_behavior(rb.behavior, "alice:1/ncycle:5"));
        out.text += "wrote " + emit_behavior_path + "\n";
    }
    emit(out, cfg, out_path);
    return r.pass ? 0 : 1;
}

int cmd_quantum_sweep(const CliConfig& cfg, int points, const std::string& out_path) {
    if (points < 2) throw ParseError("--points must be at least 2");
    const quantum::PentagonSetup s = quantum::pentagon_setup();
    const quantum::Mat mixed =
        quantum::Mat::Identity(s.state.rows(), s.state.cols()) / double(s.state.rows());

    // Noise sweep: state(w) = w * pentagon-state + (1-w) * maximally-mixed.
    std::string csv = "weight,conditional_edge_sum,classicality_value,nsnd_residual\n";
    std::string text;
    for (int i = 0; i < points; ++i) {
        const double w = double(i) / double(points - 1);
        const quantum::Mat state = w * s.state + (1.0 - w) * mixed;
        const quantum::FloatBehavior fb =
            quantum::behavior_from_state(s.scenario, state, {s.alice}, s.bob);
        const std::string row = io::format_float(w) + "," +
                                io::format_float(quantum::conditional_edge_sum(fb, 1)) + "," +
                                io::format_float(quantum::classicality_value(fb)) + "," +
                                io::format_float(quantum::nsnd_residual(s.scenario, fb));
        csv += row + "\n";
        text += row + "\n";
    }
    Output out;
    out.text = "weight,conditional_edge_sum,classicality_value,nsnd_residual\n" + text;
    out.structured = csv;
    out.csv = csv;
    emit(out, cfg, out_path);
    return 0;
}

// Settings land in cfg in three passes before CLI11 parses argv, giving the
// precedence flags > environment > config file > defaults.
void apply_setting(CliConfig& cfg, const std::string& key, const std::string& value,
                   const std::string& source) {
    try {
        if (key == "budget")
            cfg.budget = std::stoull(value);
        else if (key == "tol")
            cfg.tol = std::stod(value);
        else if (key == "threads")
            cfg.threads = std::stoi(value);
        else if (key == "format")
            cfg.format = value;
        else if (key == "long")
            cfg.long_run = value == "1" || value == "true" || value == "on";
        else if (key == "seed")
            cfg.seed = std::stoull(value);
        else
            throw ParseError("unknown setting '" + key + "' in " + source);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("bad value '" + value + "' for '" + key + "' in " + source);
    }
}

void apply_config_file(CliConfig& cfg, const std::string& path) {
    std::istringstream is(io::read_text_file(path));
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw ParseError("config line without '=' in " + path);
            continue;
        }
        const auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), path);
    }
}

void apply_environment(CliConfig& cfg) {
    for (const char* key : {"budget", "tol", "threads", "format", "long", "seed"}) {
        std::string env = "GBELL_";
        for (const char* p = key; *p; ++p) env += static_cast<char>(std::toupper(*p));
        if (const char* v = std::getenv(env.c_str()); v != nullptr && *v != '\0')
            apply_setting(cfg, key, v, "environment variable " + env);
    }
}

// The config file path itself obeys flag > environment.
std::string config_path_from(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) return argv[i + 1];
        if (a.rfind("--config=", 0) == 0) return a.substr(9);
    }
    if (const char* v = std::getenv("GBELL_CONFIG"); v != nullptr && *v != '\0') return v;
    return {};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic toolkit for bipartite contextuality scenarios"};
    app.require_subcommand(1);

    CliConfig cfg;
    try {
        const std::string config_path = config_path_from(argc, argv);
        if (!config_path.empty()) apply_config_file(cfg, config_path);
        apply_environment(cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::string config_path_opt;
    app.add_option("--config", config_path_opt, "configuration file (key=value lines)");
    app.add_option("--budget", cfg.budget, "enumeration budget (max intermediate rays)")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol", cfg.tol, "rationalization tolerance, in (0, 1e-3]");
    app.add_option("--threads", cfg.threads, "enumeration worker threads (0 = all cores)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--format", cfg.format, "output format: text|structured|csv");
    app.add_flag("--long", cfg.long_run, "allow hours-scale computations");
    app.add_option("--seed", cfg.seed, "PRNG seed for sampled checks");

    std::string out_path;
    app.add_option("--out", out_path, "write output to this file instead of stdout");

    // scenario
    auto* sc = app.add_subcommand("scenario", "emit a scenario definition")->fallthrough();
    std::string sc_ref;
    sc->add_option("ref", sc_ref, "ncycle:<n> | alice:<m> | pm | <alice>/<bob>")->required();

    // vertices
    auto* vx = app.add_subcommand("vertices", "enumerate polytope vertices")->fallthrough();
    std::string vx_ref, vx_porta;
    vx->add_option("ref", vx_ref, "scenario reference")->required();
    vx->add_option("--export-porta", vx_porta, "write <prefix>.ieq and <prefix>.ext");

    // fractions
    auto* fr = app.add_subcommand("fractions", "fraction quantifiers of a behavior file")->fallthrough();
    std::string fr_behavior;
    fr->add_option("--behavior", fr_behavior, "behavior file")->required();

    // ineq
    auto* iq = app.add_subcommand("ineq", "construct, evaluate, normalize, maximize")->fallthrough();
    IneqArgs ia;
    iq->add_option("--family", ia.family, "inequality family");
    iq->add_option("--scenario", ia.scenario_ref, "scenario reference");
    iq->add_option("--from", ia.from_file, "read an inequality file");
    iq->add_option("--evaluate", ia.evaluate_file, "evaluate on a behavior file");
    iq->add_flag("--lift", ia.lift, "lift a single-party family onto a composed scenario");
    iq->add_flag("--maximize", ia.maximize, "LP maximum over the ambient polytope");
    iq->add_flag("--normalize", ia.normalize, "affine normalization over the ambient polytope");

    // verify
    auto* vf = app.add_subcommand("verify", "run a named consistency check")->fallthrough();
    VerifyArgs va;
    vf->add_option("check", va.check, "check name")->required();
    vf->add_option("--n", va.n, "cycle size (0 = check-specific default)");
    vf->add_option("--family", va.family, "max-violation family");
    vf->add_option("--samples", va.samples, "sample count for sampled checks")
        ->check(CLI::PositiveNumber);

    // quantum
    auto* qu = app.add_subcommand("quantum", "quantum-model demonstrations")->fallthrough();
    qu->require_subcommand(1);
    auto* qd = qu->add_subcommand("demo", "pentagon construction end to end")->fallthrough();
    std::string qd_emit;
    qd->add_option("--emit-behavior", qd_emit, "write the rationalized behavior file");
    auto* qs = qu->add_subcommand("sweep", "noise sweep with plot data")->fallthrough();
    int qs_points = 21;
    qs->add_option("--points", qs_points, "number of sweep points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        cfg.fmt(); // validate --format before any work
        if (*sc) return cmd_scenario(cfg, sc_ref, out_path);
        if (*vx) return cmd_vertices(cfg, vx_ref, out_path, vx_porta);
        if (*fr) return cmd_fractions(cfg, fr_behavior, out_path);
        if (*iq) return cmd_ineq(cfg, ia, out_path);
        if (*vf) return cmd_verify(cfg, va, out_path);
        if (*qu) {
            if (*qd) return cmd_quantum_demo(cfg, out_path, qd_emit);
            if (*qs) return cmd_quantum_sweep(cfg, qs_points, out_path);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
