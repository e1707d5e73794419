#include "setvar/setmap.hpp"

#include "setvar/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace setvar {

namespace {

std::vector<int> iota_from(int start, int count) {
    std::vector<int> v;
    for (int i = 0; i < count; ++i) v.push_back(start + i);
    return v;
}

Vec lift(const Rat& first, const Vec& rest) {
    Vec v{first};
    v.insert(v.end(), rest.begin(), rest.end());
    return v;
}

}  // namespace

SetMap::SetMap(int n_in, int m_out, PolyUnion g, bool hulled) : n(n_in), m(m_out), graph(std::move(g)), hull_values(hulled) {
    if (graph.dim() != n + m) throw DimensionError("SetMap: graph dimension must be n + m");
}

std::vector<int> SetMap::inputs() const { return iota_from(0, n); }
std::vector<int> SetMap::outputs() const { return iota_from(n, m); }

PolyUnion eval(const SetMap& s, const Vec& x) {
    if (static_cast<int>(x.size()) != s.n) throw DimensionError("eval: input dimension mismatch");
    PolyUnion v = union_slice(s.graph, s.inputs(), x);
    if (s.hull_values && v.size() > 1) return PolyUnion(v.hull());
    return v;
}

SetMap compose(const SetMap& s2, const SetMap& s1) {
    if (s1.m != s2.n) throw DimensionError("compose: inner output and outer input dimensions differ");
    if (s1.hull_values || s2.hull_values) throw GeometryError("compose: maps that hull on evaluation have no exact graph");
    const int n = s1.n, m = s1.m, p = s2.m;
    const int total = n + m + p;
    PolyUnion a = s1.graph.embed(total, iota_from(0, n + m));
    PolyUnion b = s2.graph.embed(total, iota_from(n, m + p));
    std::vector<int> keep = iota_from(0, n);
    for (int i = 0; i < p; ++i) keep.push_back(n + m + i);
    return SetMap(n, p, a.intersect(b).project(keep));
}

SetMap step_map(const SetMap& f, const Rat& dt) {
    if (f.n != f.m) throw DimensionError("step_map: dynamics must map R^n to R^n");
    if (sgn(dt) <= 0) throw GeometryError("step_map: time step must be positive");
    const int n = f.n;
    // (x, v) = (x, (y - x) / dt)
    Matrix mtx;
    for (int i = 0; i < n; ++i) mtx.push_back(unit(static_cast<std::size_t>(2 * n), static_cast<std::size_t>(i)));
    for (int i = 0; i < n; ++i) {
        Vec row = zeros(static_cast<std::size_t>(2 * n));
        row[static_cast<std::size_t>(i)] = -1 / dt;
        row[static_cast<std::size_t>(n + i)] = 1 / dt;
        mtx.push_back(std::move(row));
    }
    return SetMap(n, n, f.graph.affine_preimage(mtx, zeros(static_cast<std::size_t>(2 * n)), 2 * n), f.hull_values);
}

SetMap inverse(const SetMap& s) {
    std::vector<int> pos;
    for (int i = 0; i < s.n; ++i) pos.push_back(s.m + i);
    for (int i = 0; i < s.m; ++i) pos.push_back(i);
    return SetMap(s.m, s.n, s.graph.embed(s.n + s.m, pos), s.hull_values);
}

PolyUnion image(const SetMap& s, const PolyUnion& x) {
    if (x.dim() != s.n) throw DimensionError("image: input dimension mismatch");
    if (s.hull_values) {
        PolyUnion out(s.m);
        for (const Polyhedron& p : x.pieces())
            if (p.is_bounded() && p.vertices().size() == 1) out = out.unite(eval(s, p.vertices().front()));
            else throw GeometryError("image: hulled map can only be applied to points");
        return out;
    }
    PolyUnion lifted = x.embed(s.n + s.m, s.inputs());
    return s.graph.intersect(lifted).project(s.outputs());
}

SetMap affine_map(const Matrix& a, const Vec& c) {
    const int m = static_cast<int>(a.size());
    if (static_cast<int>(c.size()) != m) throw DimensionError("affine_map: offset length mismatch");
    const int n = m == 0 ? 0 : static_cast<int>(a.front().size());
    std::vector<Halfspace> eqs;
    for (int i = 0; i < m; ++i) {
        Vec row = concat(neg(a[static_cast<std::size_t>(i)]), unit(static_cast<std::size_t>(m), static_cast<std::size_t>(i)));
        eqs.push_back(Halfspace{std::move(row), c[static_cast<std::size_t>(i)]});
    }
    return SetMap(n, m, PolyUnion(Polyhedron(n + m, {}, std::move(eqs))));
}

SetMap identity_map(int n) { return affine_map(identity(n), zeros(static_cast<std::size_t>(n))); }

SetMap constant_map(int n, const PolyUnion& values) {
    std::vector<int> pos;
    for (int i = 0; i < values.dim(); ++i) pos.push_back(n + i);
    return SetMap(n, values.dim(), values.embed(n + values.dim(), pos));
}

PolyUnion conic_valuewise_hull(const PolyUnion& graph, int n, int m) {
    if (n != 1) throw GeometryError("valuewise hull of a conic graph needs a scalar input");
    if (graph.dim() != 1 + m) throw DimensionError("conic_valuewise_hull: graph dimension mismatch");
    std::vector<Polyhedron> pieces;
    for (int s : {-1, 0, 1}) {
        Polyhedron h = graph.slice({0}, Vec{Rat(s)}).hull();
        if (h.is_empty()) continue;
        Matrix rays, lines;
        for (const Vec& v : h.vertices()) rays.push_back(lift(Rat(s), v));
        for (const Vec& r : h.rays()) rays.push_back(lift(Rat(0), r));
        for (const Vec& l : h.lines()) lines.push_back(lift(Rat(0), l));
        pieces.push_back(Polyhedron::cone(1 + m, rays, lines));
    }
    return PolyUnion(1 + m, std::move(pieces));
}

SetMap convexify_values(const SetMap& s) {
    if (s.hull_values) return s;
    if (s.m == 1) {
        // y in co S(x) iff y lies above some value and below some value
        const int d = s.n + 1;
        Polyhedron up = Polyhedron::cone(d, {unit(static_cast<std::size_t>(d), static_cast<std::size_t>(s.n))});
        Polyhedron down = Polyhedron::cone(d, {neg(unit(static_cast<std::size_t>(d), static_cast<std::size_t>(s.n)))});
        std::vector<Polyhedron> pieces;
        for (const Polyhedron& a : s.graph.pieces()) {
            Polyhedron above = a.minkowski_sum(up);
            for (const Polyhedron& b : s.graph.pieces()) pieces.push_back(above.intersect(b.minkowski_sum(down)));
        }
        return SetMap(s.n, s.m, PolyUnion(d, std::move(pieces)));
    }
    bool conic = std::all_of(s.graph.pieces().begin(), s.graph.pieces().end(),
                             [](const Polyhedron& p) { return p.is_cone(); });
    if (s.n == 1 && conic) return SetMap(s.n, s.m, conic_valuewise_hull(s.graph, s.n, s.m));
    return SetMap(s.n, s.m, s.graph, true);
}

double OuterNorm::value() const { return infinite ? HUGE_VAL : std::sqrt(to_double(squared)); }

OuterNorm outer_norm(const SetMap& h) {
    OuterNorm out;
    out.squared = 0;
    for (const Polyhedron& p : h.graph.pieces())
        if (!p.is_cone()) throw GeometryError("outer_norm: graph is not positively homogeneous");
    PolyUnion at_zero = eval(h, zeros(static_cast<std::size_t>(h.n)));
    for (const Polyhedron& p : at_zero.pieces()) {
        if (!p.is_bounded() || p.vertices().size() != 1 || !is_zero(p.vertices().front())) {
            out.infinite = true;
            return out;
        }
    }
    if (h.n == 1) {
        for (int s : {-1, 1}) {
            PolyUnion values = eval(h, Vec{Rat(s)});
            for (const Polyhedron& p : values.pieces())
                for (const Vec& v : p.vertices())
                    if (norm2(v) > out.squared) out.squared = norm2(v);
        }
        return out;
    }
    out.exact = false;
    auto consider = [&](const Vec& g) {
        Vec w(g.begin(), g.begin() + h.n), z(g.begin() + h.n, g.end());
        Rat nw = norm2(w);
        if (sgn(nw) == 0) return;
        Rat r = norm2(z) / nw;
        if (r > out.squared) out.squared = r;
    };
    for (const Polyhedron& p : h.graph.pieces()) {
        for (const Vec& g : p.rays()) consider(g);
        for (const Vec& g : p.lines()) consider(g);
    }
    return out;
}

PrefanCheckReport check_prefan(const SetMap& h) {
    PrefanCheckReport rep;
    const int d = h.n + h.m;
    for (std::size_t i = 0; i < h.graph.size() && rep.positively_homogeneous.pass; ++i) {
        const Polyhedron& p = h.graph.pieces()[i];
        if (p.is_cone()) continue;
        for (const Vec& v : p.vertices()) {
            for (const Rat& t : {Rat(2), Rat(1, 2)}) {
                Vec tv = scale(v, t);
                if (!h.graph.contains(tv)) {
                    rep.positively_homogeneous = {false, "(" + to_string(v) + ") in graph but (" + to_string(tv) + ") is not"};
                    break;
                }
            }
            if (!rep.positively_homogeneous.pass) break;
        }
        if (!rep.positively_homogeneous.pass) break;
        Matrix rays = p.vertices();
        rays.insert(rays.end(), p.rays().begin(), p.rays().end());
        if (!h.graph.covers(Polyhedron::cone(d, rays, p.lines())))
            rep.positively_homogeneous = {false, "conic hull of graph piece " + std::to_string(i) + " leaves the graph"};
    }
    if (!h.graph.contains(zeros(static_cast<std::size_t>(d))) && rep.positively_homogeneous.pass)
        rep.positively_homogeneous = {false, "origin not in graph"};
    if (!rep.positively_homogeneous.pass) {
        rep.values_convex_compact = {false, "not checked: map is not positively homogeneous"};
        rep.norm.infinite = true;
        return rep;
    }
    rep.norm = outer_norm(h);
    Verdict& vc = rep.values_convex_compact;
    if (!h.graph.project(h.inputs()).covers(Polyhedron::universe(h.n))) {
        vc = {false, "domain is not all of R^" + std::to_string(h.n)};
        return rep;
    }
    if (rep.norm.infinite) {
        vc = {false, "H(0) is unbounded"};
        return rep;
    }
    std::vector<Vec> probes;
    if (h.n == 1) {
        probes = {Vec{Rat(-1)}, Vec{Rat(0)}, Vec{Rat(1)}};
    } else {
        Matrix normals;
        PolyUnion domain = h.graph.project(h.inputs());
        for (const Polyhedron& p : domain.pieces())
            for (const Halfspace& f : p.inequalities()) normals.push_back(f.normal);
        probes = central_face_points(h.n, normals);
    }
    for (const Vec& w : probes) {
        PolyUnion v = eval(h, w);
        if (!v.is_convex()) {
            vc = {false, "H(" + to_string(w) + ") is not convex"};
            return rep;
        }
    }
    return rep;
}

HDiffReport check_h_diff(const SetMap& s, const Vec& xbar, const Vec& ybar, const SetMap& h, const Rat& delta,
                         std::vector<Rat> radii, int samples, std::uint64_t seed) {
    if (!s.graph.contains(concat(xbar, ybar))) throw GeometryError("check_h_diff: base point is not on the graph");
    if (h.n != s.n || h.m != s.m) throw DimensionError("check_h_diff: H must have the dimensions of S");
    if (radii.empty()) radii = {Rat(1, 4), Rat(1, 16), Rat(1, 64)};
    HDiffReport rep;
    rep.radii = radii;
    rep.seed = seed;
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<int> pick(-16, 16);
    auto sample_near = [&](const Vec& c, const Rat& r) {
        Vec z = c;
        for (Rat& x : z) x += r * ratio(pick(gen), 16);
        return z;
    };
    for (const Rat& r : radii) {
        std::vector<Halfspace> box;
        for (std::size_t i = 0; i < ybar.size(); ++i) {
            box.push_back(Halfspace{unit(ybar.size(), i), ybar[i] + r});
            box.push_back(Halfspace{neg(unit(ybar.size(), i)), -(ybar[i] - r)});
        }
        Polyhedron vbox(s.m, box);
        for (int k = 0; k < samples; ++k) {
            Vec x = sample_near(xbar, r), xp = sample_near(xbar, r);
            if (k == 0) xp = xbar;
            Vec w = sub(x, xp);
            PolyUnion local = eval(s, x).intersect(vbox);
            if (local.is_empty()) continue;
            PolyUnion target = eval(s, xp).minkowski_sum(eval(h, w));
            Rat allowed = delta * delta * norm2(w);
            for (const Polyhedron& p : local.pieces()) {
                Matrix probes = p.vertices();
                probes.push_back(p.relative_interior_point());
                for (const Vec& y : probes) {
                    ++rep.tested;
                    bool ok = !target.is_empty() && target.distance2(y) <= allowed;
                    if (!ok) {
                        std::ostringstream os;
                        os << "x = (" << to_string(x) << "), x' = (" << to_string(xp) << "), y = (" << to_string(y)
                           << ")";
                        if (target.is_empty()) os << ", S(x') + H(x - x') is empty";
                        else os << ", squared distance " << to_string(target.distance2(y)) << " > " << to_string(allowed);
                        rep.verdict = {false, os.str()};
                        return rep;
                    }
                }
            }
        }
    }
    return rep;
}

}  // namespace setvar
