#include "gbell/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gbell/error.hpp"

namespace gbell::io {

namespace {

// Splits a line into whitespace-separated tokens.
std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

// Line-oriented reader over a structured text file.
class Lines {
public:
    explicit Lines(const std::string& text) : is_(text) {}

    // Next nonempty line's tokens; empty vector at end of input.
    std::vector<std::string> next() {
        std::string line;
        while (std::getline(is_, line)) {
            auto t = tokens_of(line);
            if (!t.empty()) return t;
        }
        return {};
    }

private:
    std::istringstream is_;
};

void expect_header(Lines& in, const std::string& kind) {
    auto t = in.next();
    if (t.size() != 2 || t[0] != "format_version" || t[1] != "1")
        throw ParseError("expected 'format_version 1' header");
    t = in.next();
    if (t.size() != 2 || t[0] != "kind" || t[1] != kind)
        throw ParseError("expected 'kind " + kind + "'");
}

void check_label_serializable(const std::string& label) {
    if (label.empty()) throw ParseError("empty measurement label is not serializable");
    for (char c : label)
        if (std::isspace(static_cast<unsigned char>(c)))
            throw ParseError("measurement label '" + label + "' contains whitespace");
}

void write_scenario_body(std::ostringstream& os, const Scenario& s,
                         const std::string& measurement_key, const std::string& context_key) {
    for (const auto& l : s.labels()) {
        check_label_serializable(l);
        os << measurement_key << " " << l << "\n";
    }
    for (int ci = 0; ci < s.context_count(); ++ci) {
        os << context_key;
        for (int m : s.context(ci)) os << " " << s.label(m);
        os << "\n";
    }
}

int require_id(const Scenario& s, const std::string& label) {
    const int id = s.measurement_id(label);
    if (id < 0) throw ParseError("unknown measurement label '" + label + "'");
    return id;
}

// Resolves context label lists against a label vector that has not been
// turned into a Scenario yet.
std::vector<std::vector<int>> resolve_contexts(
    const std::vector<std::string>& labels,
    const std::vector<std::vector<std::string>>& contexts) {
    std::vector<std::vector<int>> ids;
    for (const auto& c : contexts) {
        std::vector<int> row;
        for (const auto& l : c) {
            const auto it = std::find(labels.begin(), labels.end(), l);
            if (it == labels.end()) throw ParseError("unknown measurement label '" + l + "'");
            row.push_back(static_cast<int>(it - labels.begin()));
        }
        ids.push_back(std::move(row));
    }
    return ids;
}

Rat parse_rat(const std::string& s) {
    try {
        return rat_from_string(s);
    } catch (const Error&) {
        throw ParseError("malformed rational '" + s + "'");
    }
}

int parse_int(const std::string& s) {
    try {
        size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size()) throw ParseError("");
        return v;
    } catch (const std::exception&) {
        throw ParseError("malformed integer '" + s + "'");
    }
}

std::string outcome_string(const Scenario& s, int ci, int t) {
    std::string out;
    for (int pos = 0; pos < s.context_size(ci); ++pos)
        out += s.outcome(ci, t, pos) == 1 ? '+' : '-';
    return out;
}

int tuple_from_string(const Scenario& s, int ci, const std::string& word) {
    const int k = s.context_size(ci);
    if (static_cast<int>(word.size()) != k)
        throw ParseError("outcome string '" + word + "' has wrong length for context");
    int t = 0;
    for (int pos = 0; pos < k; ++pos) {
        const char c = word[static_cast<size_t>(pos)];
        if (c != '+' && c != '-') throw ParseError("outcome string '" + word + "' is not +/-");
        if (c == '-') t |= 1 << (k - 1 - pos);
    }
    return t;
}

void write_rat_row(std::ostringstream& os, const std::vector<Rat>& row) {
    for (size_t i = 0; i < row.size(); ++i) {
        if (i) os << " ";
        os << rat_to_string(row[i]);
    }
}

const char* kind_name(FractionKind k) {
    switch (k) {
    case FractionKind::contextual: return "contextual";
    case FractionKind::nonlocal: return "nonlocal";
    default: return "nonclassical";
    }
}

} // namespace

// --- registry ---------------------------------------------------------------

bool is_bell_ref(const std::string& ref) { return ref.find('/') != std::string::npos; }

Scenario scenario_from_ref(const std::string& ref) {
    if (ref == "pm") return peres_mermin();
    const auto colon = ref.find(':');
    if (colon != std::string::npos) {
        const std::string head = ref.substr(0, colon);
        const int arg = parse_int(ref.substr(colon + 1));
        if (head == "ncycle") return n_cycle(arg);
        if (head == "alice") return alice_side(arg);
    }
    throw ParseError("unknown scenario reference '" + ref +
                     "' (expected ncycle:<n>, alice:<m>, or pm)");
}

BellScenario bell_from_ref(const std::string& ref) {
    const auto slash = ref.find('/');
    if (slash == std::string::npos)
        throw ParseError("'" + ref + "' is not a composed scenario reference (missing '/')");
    return BellScenario::make(scenario_from_ref(ref.substr(0, slash)),
                              scenario_from_ref(ref.substr(slash + 1)));
}

ScenarioPtr coordinates_from_ref(const std::string& ref) {
    if (is_bell_ref(ref)) return bell_from_ref(ref).joint_ptr();
    return share(scenario_from_ref(ref));
}

// --- scenario files -----------------------------------------------------------

std::string write_scenario(const Scenario& s) {
    std::ostringstream os;
    os << "format_version 1\nkind scenario\n";
    write_scenario_body(os, s, "measurement", "context");
    os << "end\n";
    return os.str();
}

Scenario read_scenario(const std::string& text) {
    Lines in(text);
    expect_header(in, "scenario");
    std::vector<std::string> labels;
    std::vector<std::vector<std::string>> contexts;
    for (auto t = in.next(); !t.empty(); t = in.next()) {
        if (t[0] == "end") return Scenario::make(labels, resolve_contexts(labels, contexts));
        if (t[0] == "measurement" && t.size() == 2)
            labels.push_back(t[1]);
        else if (t[0] == "context" && t.size() >= 2)
            contexts.emplace_back(t.begin() + 1, t.end());
        else
            throw ParseError("unexpected scenario line starting with '" + t[0] + "'");
    }
    throw ParseError("scenario file ended without 'end'");
}

std::string write_bell_scenario(const BellScenario& bs) {
    std::ostringstream os;
    os << "format_version 1\nkind bell-scenario\n";
    write_scenario_body(os, bs.alice(), "alice-measurement", "alice-context");
    write_scenario_body(os, bs.bob(), "bob-measurement", "bob-context");
    os << "end\n";
    return os.str();
}

BellScenario read_bell_scenario(const std::string& text) {
    Lines in(text);
    expect_header(in, "bell-scenario");
    std::vector<std::string> alabels, blabels;
    std::vector<std::vector<std::string>> acontexts, bcontexts;
    for (auto t = in.next(); !t.empty(); t = in.next()) {
        if (t[0] == "end")
            return BellScenario::make(
                Scenario::make(alabels, resolve_contexts(alabels, acontexts)),
                Scenario::make(blabels, resolve_contexts(blabels, bcontexts)));
        if (t[0] == "alice-measurement" && t.size() == 2)
            alabels.push_back(t[1]);
        else if (t[0] == "bob-measurement" && t.size() == 2)
            blabels.push_back(t[1]);
        else if (t[0] == "alice-context" && t.size() >= 2)
            acontexts.emplace_back(t.begin() + 1, t.end());
        else if (t[0] == "bob-context" && t.size() >= 2)
            bcontexts.emplace_back(t.begin() + 1, t.end());
        else
            throw ParseError("unexpected bell-scenario line starting with '" + t[0] + "'");
    }
    throw ParseError("bell-scenario file ended without 'end'");
}

// --- behavior files --------------------------------------------------------------

std::string write_behavior(const Behavior& b, const std::string& scenario_ref) {
    const Scenario& s = *b.scenario;
    std::ostringstream os;
    os << "format_version 1\nkind behavior\nscenario " << scenario_ref << "\n";
    for (int ci = 0; ci < s.context_count(); ++ci) {
        os << "context " << ci << "\n";
        for (int t = 0; t < s.tuple_count(ci); ++t)
            os << "outcome " << outcome_string(s, ci, t) << " " << rat_to_string(b.at(ci, t))
               << "\n";
    }
    os << "end\n";
    return os.str();
}

Behavior read_behavior(const std::string& text) {
    Lines in(text);
    expect_header(in, "behavior");
    auto t = in.next();
    if (t.size() != 2 || t[0] != "scenario")
        throw ParseError("behavior file must name its scenario reference");
    const ScenarioPtr sc = coordinates_from_ref(t[1]);

    std::vector<Rat> entries(static_cast<size_t>(sc->dim()));
    std::vector<bool> seen(entries.size(), false);
    int ci = -1;
    for (t = in.next(); !t.empty(); t = in.next()) {
        if (t[0] == "end") {
            for (size_t i = 0; i < seen.size(); ++i)
                if (!seen[i]) throw ParseError("behavior file misses coordinates");
            return behavior_from_table(sc, std::move(entries));
        }
        if (t[0] == "context" && t.size() == 2) {
            ci = parse_int(t[1]);
            if (ci < 0 || ci >= sc->context_count())
                throw ParseError("context index " + t[1] + " out of range");
        } else if (t[0] == "outcome" && t.size() == 3) {
            if (ci < 0) throw ParseError("outcome line before any context line");
            const int tup = tuple_from_string(*sc, ci, t[1]);
            const size_t idx = static_cast<size_t>(sc->index(ci, tup));
            if (seen[idx]) throw ParseError("duplicate outcome '" + t[1] + "' in context");
            seen[idx] = true;
            entries[idx] = parse_rat(t[2]);
        } else {
            throw ParseError("unexpected behavior line starting with '" + t[0] + "'");
        }
    }
    throw ParseError("behavior file ended without 'end'");
}

// --- inequality files ---------------------------------------------------------------

std::string write_inequality(const Inequality& iq, const std::string& scenario_ref) {
    const Scenario& s = *iq.scenario;
    std::ostringstream os;
    os << "format_version 1\nkind inequality\nscenario " << scenario_ref << "\nlabel "
       << iq.label << "\nbound " << rat_to_string(iq.bound) << "\nflipped "
       << (iq.display_flipped ? 1 : 0) << "\n";
    for (const auto& [subset, coeff] : iq.terms) {
        os << "term " << rat_to_string(coeff);
        for (int m : subset) {
            check_label_serializable(s.label(m));
            os << " " << s.label(m);
        }
        os << "\n";
    }
    os << "end\n";
    return os.str();
}

Inequality read_inequality(const std::string& text) {
    Lines in(text);
    expect_header(in, "inequality");
    ScenarioPtr sc;
    std::string label;
    bool have_bound = false, flipped = false;
    Rat bound;
    CorrelatorSpec terms;
    for (auto t = in.next(); !t.empty(); t = in.next()) {
        if (t[0] == "end") {
            if (!sc) throw ParseError("inequality file must name its scenario reference");
            if (!have_bound) throw ParseError("inequality file must state a bound");
            return make_inequality(sc, std::move(terms), bound, label, flipped);
        }
        if (t[0] == "scenario" && t.size() == 2) {
            sc = coordinates_from_ref(t[1]);
        } else if (t[0] == "label") {
            label = t.size() > 1 ? t[1] : "";
            for (size_t i = 2; i < t.size(); ++i) label += " " + t[i];
        } else if (t[0] == "bound" && t.size() == 2) {
            bound = parse_rat(t[1]);
            have_bound = true;
        } else if (t[0] == "flipped" && t.size() == 2) {
            flipped = parse_int(t[1]) != 0;
        } else if (t[0] == "term" && t.size() >= 3) {
            if (!sc) throw ParseError("term line before the scenario reference");
            std::vector<int> subset;
            for (size_t i = 2; i < t.size(); ++i) subset.push_back(require_id(*sc, t[i]));
            std::sort(subset.begin(), subset.end());
            if (!terms.emplace(std::move(subset), parse_rat(t[1])).second)
                throw ParseError("duplicate correlator term in inequality file");
        } else {
            throw ParseError("unexpected inequality line starting with '" + t[0] + "'");
        }
    }
    throw ParseError("inequality file ended without 'end'");
}

// --- certificates ------------------------------------------------------------------

std::string write_certificate(const FractionCertificate& c) {
    std::ostringstream os;
    os << "format_version 1\nkind certificate\nfraction " << kind_name(c.kind) << "\nvalue "
       << rat_to_string(c.value) << "\napproximation-radius " << format_float(c.approximation_radius)
       << "\nweights " << c.classical_part.size() << "\n";
    for (const auto& wv : c.classical_part) {
        os << "weight " << rat_to_string(wv.weight) << " : ";
        write_rat_row(os, wv.point);
        os << "\n";
    }
    if (c.free_part) {
        os << "free-part ";
        write_rat_row(os, c.free_part->p);
        os << "\n";
    }
    os << "end\n";
    return os.str();
}

// --- reports -----------------------------------------------------------------------

std::string write_report(const verify::CheckReport& r) {
    std::ostringstream os;
    os << "format_version 1\nkind report\nname " << r.name << "\n";
    for (const auto& l : r.lines) os << "line " << l << "\n";
    os << "result " << (r.pass ? "PASS" : "FAIL") << "\nend\n";
    return os.str();
}

// --- polytope interchange ------------------------------------------------------------

std::string write_hrep(const HPolytope& h) {
    std::ostringstream os;
    os << "DIM " << h.dim << "\n";
    os << "INEQ " << h.ineq_count() << "\n";
    for (int r = 0; r < h.ineq_count(); ++r) {
        write_rat_row(os, h.ineq_coeffs[static_cast<size_t>(r)]);
        os << " <= " << rat_to_string(h.ineq_bounds[static_cast<size_t>(r)]) << "\n";
    }
    os << "EQ " << h.eq_count() << "\n";
    for (int r = 0; r < h.eq_count(); ++r) {
        write_rat_row(os, h.eq_coeffs[static_cast<size_t>(r)]);
        os << " = " << rat_to_string(h.eq_values[static_cast<size_t>(r)]) << "\n";
    }
    os << "END\n";
    return os.str();
}

HPolytope read_hrep(const std::string& text) {
    Lines in(text);
    auto t = in.next();
    if (t.size() != 2 || t[0] != "DIM") throw ParseError("expected 'DIM <n>' header");
    HPolytope h;
    h.dim = parse_int(t[1]);
    if (h.dim <= 0) throw ParseError("DIM must be positive");

    t = in.next();
    if (t.size() != 2 || t[0] != "INEQ") throw ParseError("expected 'INEQ <count>'");
    const int ni = parse_int(t[1]);
    for (int r = 0; r < ni; ++r) {
        t = in.next();
        if (static_cast<int>(t.size()) != h.dim + 2 ||
            t[static_cast<size_t>(h.dim)] != "<=")
            throw ParseError("inequality row must be <dim> coefficients, '<=', bound");
        std::vector<Rat> row;
        for (int c = 0; c < h.dim; ++c) row.push_back(parse_rat(t[static_cast<size_t>(c)]));
        h.ineq_coeffs.push_back(std::move(row));
        h.ineq_bounds.push_back(parse_rat(t.back()));
    }

    t = in.next();
    if (t.size() != 2 || t[0] != "EQ") throw ParseError("expected 'EQ <count>'");
    const int ne = parse_int(t[1]);
    for (int r = 0; r < ne; ++r) {
        t = in.next();
        if (static_cast<int>(t.size()) != h.dim + 2 || t[static_cast<size_t>(h.dim)] != "=")
            throw ParseError("equality row must be <dim> coefficients, '=', value");
        std::vector<Rat> row;
        for (int c = 0; c < h.dim; ++c) row.push_back(parse_rat(t[static_cast<size_t>(c)]));
        h.eq_coeffs.push_back(std::move(row));
        h.eq_values.push_back(parse_rat(t.back()));
    }
    t = in.next();
    if (t.size() != 1 || t[0] != "END") throw ParseError("expected 'END'");
    return h;
}

std::string write_vrep(const VPolytope& v) {
    std::ostringstream os;
    os << "DIM " << v.dim << "\n";
    os << "VERTICES " << v.count() << "\n";
    for (const auto& row : v.vertices) {
        write_rat_row(os, row);
        os << "\n";
    }
    os << "END\n";
    return os.str();
}

VPolytope read_vrep(const std::string& text) {
    Lines in(text);
    auto t = in.next();
    if (t.size() != 2 || t[0] != "DIM") throw ParseError("expected 'DIM <n>' header");
    VPolytope v;
    v.dim = parse_int(t[1]);
    if (v.dim <= 0) throw ParseError("DIM must be positive");
    t = in.next();
    if (t.size() != 2 || t[0] != "VERTICES") throw ParseError("expected 'VERTICES <count>'");
    const int n = parse_int(t[1]);
    for (int r = 0; r < n; ++r) {
        t = in.next();
        if (static_cast<int>(t.size()) != v.dim)
            throw ParseError("vertex row must have exactly <dim> coordinates");
        std::vector<Rat> row;
        for (const auto& w : t) row.push_back(parse_rat(w));
        v.vertices.push_back(std::move(row));
    }
    t = in.next();
    if (t.size() != 1 || t[0] != "END") throw ParseError("expected 'END'");
    return v;
}

// --- CSV ------------------------------------------------------------------------------

std::string correlator_csv(const Behavior& b) {
    const Scenario& s = *b.scenario;
    std::ostringstream os;
    os << "term,value\n";
    for (const auto& [subset, value] : extract_correlators(b)) {
        if (subset.empty()) continue;
        for (size_t i = 0; i < subset.size(); ++i)
            os << (i ? "*" : "") << s.label(subset[i]);
        os << "," << rat_to_string(value) << "\n";
    }
    return os.str();
}

// --- helpers -----------------------------------------------------------------------------

std::string format_float(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open file '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot write file '" + path + "'");
    f << content;
}

} // namespace gbell::io
