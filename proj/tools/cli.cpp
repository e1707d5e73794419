#include "cli.hpp"

#include "setvar/chainrules.hpp"
#include "setvar/inclusion.hpp"
#include "setvar/limits.hpp"
#include "setvar/oracle.hpp"
#include "setvar/textio.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>

namespace setvar::cli {

namespace {

struct Config {
    std::string scenario, map, g, f, path;
    std::vector<std::string> point, dir, x0, xN, Ns, delta;
    int N = 0;
    std::string kind = "limiting";
    std::string mode;
    std::uint64_t seed = 1;
    std::size_t budget = default_piece_budget;
    std::string format = "text";
    int samples = 1000;
    bool filtered = false;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr int ok = 0, negative = 1, input_error = 2;

std::vector<std::string> split_tokens(const std::vector<std::string>& raw) {
    std::vector<std::string> out;
    for (const std::string& s : raw) {
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) out.push_back(item);
    }
    return out;
}

Vec numbers(const std::vector<std::string>& raw, const std::string& flag, std::optional<int> expect = std::nullopt) {
    Vec v;
    for (const std::string& s : split_tokens(raw)) v.push_back(parse_rat(s));
    if (expect && static_cast<int>(v.size()) != *expect)
        throw InputError(flag + " expects " + std::to_string(*expect) + " numbers, got " + std::to_string(v.size()));
    return v;
}

std::vector<int> integers(const std::vector<std::string>& raw, const std::string& flag) {
    std::vector<int> out;
    for (const std::string& s : split_tokens(raw)) {
        Rat r = parse_rat(s);
        if (r.get_den() != 1 || r <= 0) throw InputError(flag + " expects positive integers");
        out.push_back(static_cast<int>(r.get_num().get_si()));
    }
    if (out.empty()) throw InputError(flag + " is required");
    return out;
}

void require(const std::string& value, const std::string& flag) {
    if (value.empty()) throw InputError(flag + " is required");
}

// "file" or "file:NAME"
SetMap load_map(const std::string& spec, Document* doc_out = nullptr) {
    std::string file = spec, name;
    auto colon = spec.rfind(':');
    if (colon != std::string::npos && colon + 1 < spec.size() && spec.find('/', colon) == std::string::npos) {
        file = spec.substr(0, colon);
        name = spec.substr(colon + 1);
    }
    Document doc = load_document(file);
    if (doc_out) *doc_out = doc;
    return name.empty() ? doc.single_map() : doc.map_named(name);
}

std::string interval_text(const Polyhedron& p, bool decimal) {
    auto num = [&](const Rat& r) { return decimal ? to_decimal(r) : to_string(r); };
    std::optional<Rat> lo, hi;
    for (const Vec& v : p.vertices()) {
        if (!lo || v[0] < *lo) lo = v[0];
        if (!hi || v[0] > *hi) hi = v[0];
    }
    bool up = !p.lines().empty(), down = !p.lines().empty();
    for (const Vec& r : p.rays()) (sgn(r[0]) > 0 ? up : down) = true;
    std::string left = down ? "(-inf" : "[" + num(*lo);
    std::string right = up ? "inf)" : num(*hi) + "]";
    if (!up && !down && *lo == *hi) return "{" + num(*lo) + "}";
    return left + ", " + right;
}

std::string set_text(const PolyUnion& u, bool decimal = false) {
    if (u.is_empty()) return "empty";
    if (u.dim() != 1) return u.serialize(true);
    std::string out;
    for (const Polyhedron& p : u.pieces()) out += (out.empty() ? "" : " u ") + interval_text(p, decimal);
    return out;
}

void print_set(std::ostream& out, const std::string& label, const PolyUnion& u) {
    if (u.dim() == 1 || u.is_empty()) {
        out << label << " " << set_text(u) << "\n";
        if (u.dim() == 1 && !u.is_empty() && set_text(u) != set_text(u, true))
            out << label << "-decimal " << set_text(u, true) << "\n";
    } else {
        out << label << "\n" << u.serialize(true);
    }
}

std::string yes(bool b) { return b ? "yes" : "no"; }

int cmd_reach(const Config& c, std::ostream& out) {
    require(c.scenario, "--scenario");
    Document doc = load_document(c.scenario);
    DiscreteInclusion di = inclusion_from(doc, c.N > 0 ? std::optional<int>(c.N) : std::nullopt);
    Vec x0 = numbers(c.x0, "--x0", di.n);
    PolyUnion r = reachable(di, x0, c.budget);
    if (c.format == "csv") {
        out << "piece,lo,hi,lo_decimal,hi_decimal\n";
        if (di.n == 1)
            for (std::size_t i = 0; i < r.size(); ++i) {
                const Polyhedron& p = r.pieces()[i];
                if (!p.is_bounded()) throw GeometryError("unbounded set");
                Rat lo = p.vertices().front()[0], hi = lo;
                for (const Vec& v : p.vertices()) {
                    lo = std::min(lo, v[0]);
                    hi = std::max(hi, v[0]);
                }
                out << i << "," << to_string(lo) << "," << to_string(hi) << "," << to_decimal(lo) << "," << to_decimal(hi)
                    << "\n";
            }
    } else {
        out << "N " << di.N << "\n";
        out << "dt " << to_string(di.dt) << "\n";
        out << "pieces " << r.size() << "\n";
        print_set(out, "reachable", r);
    }
    return r.is_empty() ? negative : ok;
}

int cmd_coderiv(const Config& c, std::ostream& out) {
    CoderivKind kind = parse_kind(c.kind);
    if (!c.scenario.empty()) {
        Document doc = load_document(c.scenario);
        DiscreteInclusion di = inclusion_from(doc, c.N > 0 ? std::optional<int>(c.N) : std::nullopt);
        Vec x0 = numbers(c.x0, "--x0", di.n), xN = numbers(c.xN, "--xN", di.n);
        PathSet ps = c.mode.empty() ? enumerate_paths_auto(di, x0, xN, c.budget)
                                    : enumerate_paths(di, x0, xN, parse_path_mode(c.mode), 256, c.seed, c.budget);
        if (ps.paths.empty()) {
            out << "paths 0\nendpoint is not reachable\n";
            return negative;
        }
        PathCones cones = coderiv_reachable(di, ps);
        SetMap direct = direct_coderiv_reachable(di, x0, xN, c.budget);
        bool sound = cones.cone.graph.includes(direct.graph);
        out << "paths " << ps.paths.size() << "\n";
        out << "exhaustive " << yes(ps.exhaustive) << "\n";
        out << "path-union (p_N, p_0)\n" << cones.cone.graph.serialize(true);
        out << "direct (p_N, p_0)\n" << direct.graph.serialize(true);
        out << "direct-in-union " << yes(sound) << "\n";
        if (!c.dir.empty()) {
            Vec u = numbers(c.dir, "--dir", di.n);
            print_set(out, "union-value", eval(cones.cone, u));
            print_set(out, "direct-value", eval(direct, u));
        }
        return sound || !ps.exhaustive ? ok : negative;
    }
    require(c.map, "--map");
    SetMap s = load_map(c.map);
    Vec pt = numbers(c.point, "--point", s.n + s.m);
    Vec x(pt.begin(), pt.begin() + s.n), y(pt.begin() + s.n, pt.end());
    CoderivAtPoint d = coderivative(s, x, y, kind);
    out << "kind " << to_string(kind) << "\n";
    out << "graph (u, v)\n" << d.as_map().graph.serialize(true);
    if (!c.dir.empty()) print_set(out, "value", coderiv_apply(d, numbers(c.dir, "--dir", s.m)));
    return ok;
}

int cmd_chain(const Config& c, std::ostream& out) {
    require(c.g, "--g");
    require(c.f, "--f");
    CoderivKind kind = parse_kind(c.kind);
    SetMap g = load_map(c.g), f = load_map(c.f);
    Vec pt = numbers(c.point, "--point", g.n + f.m);
    Vec x(pt.begin(), pt.begin() + g.n), z(pt.begin() + g.n, pt.end());
    ChainVerdict v = chain_upper(f, g, x, z, kind, ChainVariant::co_outer);
    out << "kind " << to_string(kind) << "\n";
    out << "intermediate-points " << v.ybars.size() << "\n";
    for (std::size_t i = 0; i < v.ybars.size(); ++i)
        out << "ybar " << to_string(v.ybars[i]) << " cq " << (v.cq[i].ok ? "ok" : "fails")
            << (v.cq[i].witness ? " witness " + to_string(*v.cq[i].witness) : "") << "\n";
    out << "locally-bounded " << yes(v.locally_bounded) << "\n";
    out << "certified " << yes(v.certified) << "\n";
    const bool co = kind == CoderivKind::convexified;
    out << "LHS " << (co ? "co D*(F∘G)" : "D*(F∘G)") << "\n" << v.lhs.graph.serialize(true);
    out << "RHS " << (co ? "co D*G ∘ D*F" : "D*G ∘ D*F") << "\n" << v.rhs.graph.serialize(true);
    out << "relation LHS " << symbol(v.relation) << " RHS\n";
    if (co) {
        ChainVerdict both = chain_upper(f, g, x, z, kind, ChainVariant::co_both);
        out << "RHS2 co D*G ∘ co D*F\n" << both.rhs.graph.serialize(true);
        out << "relation RHS " << symbol(compare(v.rhs.graph, both.rhs.graph)) << " RHS2\n";
    }
    bool upper = v.relation == Relation::equal || v.relation == Relation::strict_subset;
    int code = upper ? ok : negative;
    if (!c.dir.empty()) {
        Vec r = numbers(c.dir, "--dir", f.m);
        PolyUnion lhs = eval(v.lhs, r);
        print_set(out, "LHS-value", lhs);
        print_set(out, "RHS-value", eval(v.rhs, r));
        if (c.filtered) {
            PolyUnion filt = wp_filtered_chain(f, g, x, z, r);
            print_set(out, "filtered-value", filt);
            bool contains = filt.includes(lhs);
            out << "filtered-contains-LHS " << yes(contains) << "\n";
            if (!contains) code = negative;
        }
    } else if (c.filtered) {
        throw InputError("--filtered needs --dir");
    }
    return code;
}

MinMaxAffine objective_of(const Document& doc) {
    if (doc.objectives.empty()) throw InputError("the scenario file has no objective block");
    return doc.objectives.front().second;
}

int cmd_certify(const Config& c, std::ostream& out) {
    require(c.scenario, "--scenario");
    require(c.path, "--path");
    Document doc = load_document(c.scenario);
    Document pdoc = load_document(c.path);
    if (pdoc.paths.empty()) throw InputError("the path file has no path block");
    const Path& path = pdoc.paths.front();
    DiscreteInclusion di = inclusion_from(doc, static_cast<int>(path.size()) - 1);
    MinMaxAffine phi = objective_of(doc);
    if (!is_feasible(di, path)) throw InputError("path is not feasible");
    Certificate cert = certify_path(di, path, phi);
    if (!cert.found) {
        out << "refutation " << cert.reason << "\n";
        return negative;
    }
    for (std::size_t k = 0; k < cert.costates.size(); ++k) out << "costate " << k << " " << to_string(cert.costates[k]) << "\n";
    out << "transversality " << to_string(cert.transversality) << "\n";
    bool constant = std::all_of(cert.costates.begin(), cert.costates.end(),
                                [&](const Vec& p) { return p == cert.costates.front(); });
    if (constant) out << "p ≡ " << to_string(cert.costates.front()) << "\n";
    out << "verified " << yes(verify_certificate(di, cert, phi)) << "\n";
    return ok;
}

int cmd_subdiff(const Config& c, std::ostream& out) {
    if (!c.scenario.empty()) {
        Document doc = load_document(c.scenario);
        DiscreteInclusion di = inclusion_from(doc, c.N > 0 ? std::optional<int>(c.N) : std::nullopt);
        Vec x0 = numbers(c.x0, "--x0", di.n);
        InclusionSubdiff s = subdiff_upper(di, objective_of(doc), x0, c.budget);
        out << "value " << to_string(s.value) << "\n";
        print_set(out, "argmin", s.argmin);
        out << "endpoints " << s.endpoints.size() << "\n";
        print_set(out, "estimate", s.estimate);
        out << "exact " << yes(s.exact) << "\n";
        out << "exhaustive " << yes(s.exhaustive) << "\n";
        return ok;
    }
    require(c.map, "--map");
    Document doc;
    SetMap g = load_map(c.map, &doc);
    Vec x = numbers(c.x0, "--x0", g.n);
    CoderivKind kind = parse_kind(c.kind);
    MarginalMode mode = kind == CoderivKind::convexified ? MarginalMode::clarke : MarginalMode::limiting;
    MarginalEstimate e = marginal_subdiff(objective_of(doc), g, x, mode);
    out << "value " << to_string(e.value) << "\n";
    print_set(out, "argmin", e.argmin);
    print_set(out, "estimate", e.estimate);
    out << "certified " << yes(e.certified) << "\n";
    return ok;
}

int cmd_converge(const Config& c, std::ostream& out) {
    require(c.scenario, "--scenario");
    Document doc = load_document(c.scenario);
    DiscreteInclusion di = inclusion_from(doc);
    Vec x0 = numbers(c.x0, "--x0", di.n);
    ConvergenceTable t = hausdorff_convergence(di, integers(c.Ns, "--Ns"), x0, doc.reference, c.budget);
    if (c.format == "csv") {
        out << "N,distance_exact,distance_decimal,exact,reference\n";
        for (const ConvergenceRow& r : t.rows)
            out << r.N << "," << (r.distance.rational ? to_string(*r.distance.rational) : "") << ","
                << to_decimal(Rat(r.distance.value)) << "," << yes(r.distance.exact) << "," << (t.proxy ? "PROXY" : "given")
                << "\n";
        return ok;
    }
    out << "reference " << (t.proxy ? "PROXY (largest N)" : "given") << "\n";
    print_set(out, "reference-set", t.reference);
    out << "N\tdistance\texact\n";
    for (const ConvergenceRow& r : t.rows) {
        std::string d = r.distance.rational ? to_decimal(*r.distance.rational) : to_decimal(Rat(r.distance.value));
        out << r.N << "\t" << d << "\t" << (r.distance.exact ? "exact" : "lower-bound") << "\n";
    }
    out << "strictly-decreasing " << yes(t.strictly_decreasing) << "\n";
    return ok;
}

int cmd_pi(const Config& c, std::ostream& out) {
    require(c.scenario, "--scenario");
    Document doc = load_document(c.scenario);
    DiscreteInclusion di = inclusion_from(doc, c.N > 0 ? std::optional<int>(c.N) : std::nullopt);
    Vec x = numbers(c.x0, "--x0", di.n), y = numbers(c.xN, "--xN", di.n), v = numbers(c.dir, "--dir", di.n);
    if (c.Ns.empty()) {
        PiResult pi = adjoint_reachable_pi(di, x, y, v, c.budget);
        out << "paths " << pi.paths << "\n";
        out << "exhaustive " << yes(pi.exhaustive) << "\n";
        print_set(out, "pi", pi.set);
        return ok;
    }
    std::vector<Rat> deltas;
    for (const std::string& s : split_tokens(c.delta)) deltas.push_back(parse_rat(s));
    if (deltas.empty()) deltas.push_back(Rat(0));
    PiStability st = pi_stability(di, x, y, v, integers(c.Ns, "--Ns"), deltas, 8, c.seed, c.budget);
    out << "N\tdelta\thull\tsnap2\texhaustive\n";
    for (const PiCell& cell : st.cells)
        out << cell.N << "\t" << to_string(cell.delta) << "\t" << set_text(PolyUnion(cell.hull)) << "\t"
            << to_string(cell.max_snap2) << "\t" << yes(cell.exhaustive) << "\n";
    print_set(out, "intersection", PolyUnion(st.intersection));
    print_set(out, "largest-N", st.largest);
    out << "matches " << yes(st.matches) << "\n";
    return ok;
}

int cmd_oracle(const Config& c, std::ostream& out) {
    require(c.map, "--map");
    CoderivKind kind = parse_kind(c.kind);
    SetMap s = load_map(c.map);
    Vec pt = numbers(c.point, "--point", s.n + s.m);
    SampleReport r = sample_normals(s.graph, pt, kind, {}, c.samples, 1e-2, c.seed);
    out << "tested " << r.tested << "\n";
    out << "agreements " << r.agreements << "\n";
    out << "rate " << to_decimal(Rat(r.rate()), 6) << "\n";
    out << "extreme-directions " << r.rays_recovered << "/" << r.rays << "\n";
    for (const std::string& d : r.disagreements) out << "disagreement " << d << "\n";
    return r.rate() >= 0.99 && r.rays_recovered == r.rays ? ok : negative;
}

void echo_header(const CLI::App& sub, std::ostream& out) {
    out << "# command: " << sub.get_name() << "\n";
    for (const CLI::Option* opt : sub.get_options()) {
        if (opt->get_lnames().empty()) continue;
        const std::string& name = opt->get_lnames().front();
        if (name == "help") continue;
        std::string value;
        if (opt->count() > 0) {
            for (const std::string& r : opt->results()) value += (value.empty() ? "" : " ") + r;
            if (opt->get_type_size() == 0) value = "true";
        } else {
            value = opt->get_default_str();
            if (value.empty()) continue;
        }
        out << "# " << name << ": " << value << "\n";
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact set-valued variational analysis on polyhedral maps", "setvar"};
    app.require_subcommand(1);
    Config c;

    auto common = [&](CLI::App* s) {
        s->add_option("--seed", c.seed, "random seed")->capture_default_str();
        s->add_option("--budget", c.budget, "piece budget")->capture_default_str();
        s->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "csv"}))->capture_default_str();
    };
    auto kind = [&](CLI::App* s) {
        s->add_option("--kind", c.kind, "coderivative kind")
            ->check(CLI::IsMember({"regular", "limiting", "convexified"}))
            ->capture_default_str();
    };

    CLI::App* reach = app.add_subcommand("reach", "reachable set R_N(x0)");
    reach->add_option("--scenario", c.scenario)->required();
    reach->add_option("--x0", c.x0)->required();
    reach->add_option("--N", c.N, "step count override");
    common(reach);

    CLI::App* coderiv = app.add_subcommand("coderiv", "coderivative of a map, or of a reachable map");
    coderiv->add_option("--map", c.map, "map file, optionally file:NAME");
    coderiv->add_option("--point", c.point, "graph point (x, y)");
    coderiv->add_option("--dir", c.dir, "direction u");
    coderiv->add_option("--scenario", c.scenario);
    coderiv->add_option("--x0", c.x0);
    coderiv->add_option("--xN", c.xN);
    coderiv->add_option("--N", c.N);
    coderiv->add_option("--mode", c.mode)->check(CLI::IsMember({"finite", "vertex", "sampled"}));
    kind(coderiv);
    common(coderiv);

    CLI::App* chain = app.add_subcommand("chain", "chain rule for F∘G at (x, z)");
    chain->add_option("--g", c.g, "inner map file")->required();
    chain->add_option("--f", c.f, "outer map file")->required();
    chain->add_option("--point", c.point, "(x, z)")->required();
    chain->add_option("--dir", c.dir, "direction r");
    chain->add_flag("--filtered", c.filtered, "also evaluate the filtered right-hand side at --dir");
    kind(chain);
    common(chain);

    CLI::App* certify = app.add_subcommand("certify", "adjoint certificate for a path");
    certify->add_option("--scenario", c.scenario)->required();
    certify->add_option("--path", c.path)->required();
    common(certify);

    CLI::App* subdiff = app.add_subcommand("subdiff", "subdifferential estimate of a marginal function");
    subdiff->add_option("--scenario", c.scenario);
    subdiff->add_option("--map", c.map);
    subdiff->add_option("--x0", c.x0)->required();
    subdiff->add_option("--N", c.N);
    kind(subdiff);
    common(subdiff);

    CLI::App* converge = app.add_subcommand("converge", "Hausdorff convergence table");
    converge->add_option("--scenario", c.scenario)->required();
    converge->add_option("--x0", c.x0)->required();
    converge->add_option("--Ns", c.Ns, "step counts")->required();
    common(converge);

    CLI::App* pi = app.add_subcommand("pi", "adjoint reachable set Π_N");
    pi->add_option("--scenario", c.scenario)->required();
    pi->add_option("--x0", c.x0)->required();
    pi->add_option("--xN", c.xN)->required();
    pi->add_option("--dir", c.dir, "terminal costate v")->required();
    pi->add_option("--N", c.N);
    pi->add_option("--Ns", c.Ns, "step counts for the stability report");
    pi->add_option("--delta", c.delta, "perturbation radii");
    common(pi);

    CLI::App* oracle = app.add_subcommand("oracle-check", "sampled normal cones against the exact ones");
    oracle->add_option("--map", c.map)->required();
    oracle->add_option("--point", c.point)->required();
    oracle->add_option("--samples", c.samples)->capture_default_str();
    kind(oracle);
    common(oracle);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }

    CLI::App* sub = app.get_subcommands().front();
    std::ostringstream body;
    int code = ok;
    try {
        const std::string name = sub->get_name();
        if (name == "reach") code = cmd_reach(c, body);
        else if (name == "coderiv") code = cmd_coderiv(c, body);
        else if (name == "chain") code = cmd_chain(c, body);
        else if (name == "certify") code = cmd_certify(c, body);
        else if (name == "subdiff") code = cmd_subdiff(c, body);
        else if (name == "converge") code = cmd_converge(c, body);
        else if (name == "pi") code = cmd_pi(c, body);
        else code = cmd_oracle(c, body);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }
    echo_header(*sub, out);
    out << body.str();
    return code;
}

}  // namespace setvar::cli
