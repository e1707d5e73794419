#include "setvar/textio.hpp"

#include <fstream>
#include <sstream>

namespace setvar {

namespace {

std::vector<std::string> split_words(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

class Parser {
public:
    Parser(std::string_view text, std::string origin) : origin_(std::move(origin)) {
        std::string cur;
        for (char c : text) {
            if (c == '\n') {
                lines_.push_back(cur);
                cur.clear();
            } else if (c != '\r') {
                cur += c;
            }
        }
        if (!cur.empty()) lines_.push_back(cur);
    }

    Document run() {
        Document doc;
        while (next()) {
            const std::string& kw = words_[0];
            if (kw == "map") parse_map(doc);
            else if (kw == "objective") parse_objective(doc);
            else if (kw == "scenario") parse_scenario(doc);
            else if (kw == "reference") parse_reference(doc);
            else if (kw == "path") parse_path(doc);
            else fail("unexpected '" + kw + "'");
        }
        return doc;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(origin_ + ":" + std::to_string(line_no_) + ": " + msg);
    }

    // Advances to the next non-blank line; false at end of input.
    bool next() {
        if (pending_) {
            pending_ = false;
            return true;
        }
        while (pos_ < lines_.size()) {
            std::string line = lines_[pos_++];
            if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
            words_ = split_words(line);
            line_no_ = pos_;
            if (!words_.empty()) return true;
        }
        return false;
    }
    void push_back() { pending_ = true; }

    Rat rat(const std::string& s) const {
        try {
            return parse_rat(s);
        } catch (const ParseError& e) {
            fail(e.what());
        }
    }
    int integer(const std::string& s) const {
        Rat r = rat(s);
        if (r.get_den() != 1 || !r.get_num().fits_sint_p()) fail("expected an integer, got '" + s + "'");
        return static_cast<int>(r.get_num().get_si());
    }
    Vec numbers(std::size_t from) const {
        Vec v;
        for (std::size_t i = from; i < words_.size(); ++i) v.push_back(rat(words_[i]));
        return v;
    }

    // Reads consecutive piece blocks; dim < 0 infers it from the first row.
    std::vector<Polyhedron> parse_pieces(int& dim) {
        std::vector<Polyhedron> out;
        while (next()) {
            if (words_[0] != "piece") {
                push_back();
                break;
            }
            std::vector<Halfspace> in, eq;
            Matrix gens, lins;
            bool closed = false;
            while (next()) {
                const std::string& kw = words_[0];
                if (kw == "end") {
                    closed = true;
                    break;
                }
                Vec v = numbers(1);
                if (kw == "ineq" || kw == "eq") {
                    if (v.size() < 1) fail("constraint needs coefficients and a right-hand side");
                    Rat rhs = v.back();
                    v.pop_back();
                    if (dim < 0) dim = static_cast<int>(v.size());
                    if (static_cast<int>(v.size()) != dim) fail("expected " + std::to_string(dim) + " coefficients");
                    (kw == "ineq" ? in : eq).push_back(Halfspace{std::move(v), rhs});
                } else if (kw == "gen" || kw == "lin") {
                    if (dim < 0) dim = static_cast<int>(v.size());
                    if (static_cast<int>(v.size()) != dim) fail("expected " + std::to_string(dim) + " coordinates");
                    (kw == "gen" ? gens : lins).push_back(std::move(v));
                } else {
                    fail("unexpected '" + kw + "' inside piece");
                }
            }
            if (!closed) fail("piece without end");
            if (dim < 0) fail("cannot infer the dimension of an empty piece");
            if (!in.empty() || !eq.empty()) {
                Polyhedron p(dim, std::move(in), std::move(eq));
                for (const Vec& g : gens)
                    for (const Halfspace& h : p.inequalities())
                        if (sgn(dot(h.normal, g)) > 0) fail("generator violates the piece's inequalities");
                out.push_back(std::move(p));
            } else {
                out.push_back(Polyhedron::cone(dim, gens, lins));
            }
        }
        return out;
    }

    void parse_map(Document& doc) {
        if (words_.size() != 2) fail("usage: map <name>");
        std::string name = words_[1];
        if (doc.maps.count(name)) fail("duplicate map '" + name + "'");
        if (!next() || words_[0] != "dim" || words_.size() != 3) fail("map '" + name + "' needs 'dim <n> <m>'");
        int n = integer(words_[1]), m = integer(words_[2]);
        if (n < 1 || m < 1) fail("map dimensions must be positive");
        int d = n + m;
        std::vector<Polyhedron> pieces = parse_pieces(d);
        doc.maps.emplace(name, SetMap(n, m, PolyUnion(n + m, std::move(pieces))));
    }

    void parse_objective(Document& doc) {
        std::string name = words_.size() > 1 ? words_[1] : "";
        MinMaxAffine f;
        f.dim = -1;
        while (next()) {
            const std::string& kw = words_[0];
            if (kw == "group") {
                f.groups.emplace_back();
            } else if (kw == "row") {
                if (f.groups.empty()) f.groups.emplace_back();
                Vec v = numbers(1);
                if (v.empty()) fail("row needs coefficients");
                Rat c = v.back();
                v.pop_back();
                if (f.dim < 0) f.dim = static_cast<int>(v.size());
                if (static_cast<int>(v.size()) != f.dim) fail("row length mismatch");
                f.groups.back().push_back(AffineRow{std::move(v), c});
            } else if (kw == "end") {
                break;
            } else {
                push_back();
                break;
            }
        }
        if (f.dim < 0) fail("objective without rows");
        for (const auto& g : f.groups)
            if (g.empty()) fail("empty group in objective");
        doc.objectives.emplace_back(name, std::move(f));
    }

    void parse_scenario(Document& doc) {
        ScenarioSpec sc;
        sc.name = words_.size() > 1 ? words_[1] : "";
        bool has_dim = false;
        while (next()) {
            const std::string& kw = words_[0];
            if (kw == "dim" && words_.size() == 2) {
                sc.n = integer(words_[1]);
                has_dim = true;
            } else if (kw == "horizon" && words_.size() == 2) {
                sc.horizon = rat(words_[1]);
                if (sgn(sc.horizon) <= 0) fail("horizon must be positive");
            } else if (kw == "steps" && words_.size() == 2) {
                sc.steps = integer(words_[1]);
                if (sc.steps < 1) fail("steps must be positive");
            } else if (kw == "dynamics" && words_.size() == 3 && words_[1] == "const") {
                sc.const_map = words_[2];
            } else if (kw == "dynamics" && words_.size() == 4 && words_[1] == "at") {
                sc.step_maps[integer(words_[2])] = words_[3];
            } else if (kw == "end") {
                break;
            } else {
                push_back();
                break;
            }
        }
        if (!has_dim || sc.n < 1) fail("scenario needs 'dim <n>'");
        if (doc.scenario) fail("more than one scenario");
        doc.scenario = sc;
    }

    void parse_reference(Document& doc) {
        int d = doc.scenario ? doc.scenario->n : -1;
        std::vector<Polyhedron> pieces = parse_pieces(d);
        if (d < 0) fail("reference without pieces");
        doc.reference = PolyUnion(d, std::move(pieces));
    }

    void parse_path(Document& doc) {
        std::vector<Vec> states;
        while (next()) {
            if (words_[0] == "state") {
                states.push_back(numbers(1));
                if (states.back().size() != states.front().size() || states.back().empty()) fail("state length mismatch");
            } else if (words_[0] == "end") {
                break;
            } else {
                push_back();
                break;
            }
        }
        if (states.empty()) fail("path without states");
        doc.paths.push_back(std::move(states));
    }

    std::string origin_;
    std::vector<std::string> lines_;
    std::size_t pos_ = 0;
    std::size_t line_no_ = 0;
    std::vector<std::string> words_;
    bool pending_ = false;
};

}  // namespace

void Document::merge(const Document& other) {
    for (const auto& [k, v] : other.maps) {
        if (maps.count(k)) throw ParseError("duplicate map '" + k + "'");
        maps.emplace(k, v);
    }
    objectives.insert(objectives.end(), other.objectives.begin(), other.objectives.end());
    if (other.scenario) {
        if (scenario) throw ParseError("more than one scenario");
        scenario = other.scenario;
    }
    if (other.reference) reference = other.reference;
    paths.insert(paths.end(), other.paths.begin(), other.paths.end());
}

const SetMap& Document::map_named(const std::string& name) const {
    auto it = maps.find(name);
    if (it == maps.end()) throw ParseError("no map named '" + name + "'");
    return it->second;
}

const SetMap& Document::single_map() const {
    if (maps.size() != 1) throw ParseError("expected exactly one map, found " + std::to_string(maps.size()));
    return maps.begin()->second;
}

Document parse_document(std::string_view text, const std::string& origin) { return Parser(text, origin).run(); }

Document load_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str(), path);
}

std::string format_map(const std::string& name, const SetMap& s) {
    return "map " + name + "\ndim " + std::to_string(s.n) + " " + std::to_string(s.m) + "\n" + s.graph.serialize();
}

std::string format_objective(const std::string& name, const MinMaxAffine& f) {
    std::string out = name.empty() ? "objective\n" : "objective " + name + "\n";
    for (const auto& g : f.groups) {
        out += "group\n";
        for (const AffineRow& r : g) out += "row " + to_string(r.coeffs) + " " + to_string(r.constant) + "\n";
    }
    return out + "end\n";
}

std::string format_path(const std::vector<Vec>& states) {
    std::string out = "path\n";
    for (const Vec& s : states) out += "state " + to_string(s) + "\n";
    return out;
}

}  // namespace setvar
