#include "setvar/varcones.hpp"

#include "setvar/arrangement.hpp"

#include <algorithm>

namespace setvar {

namespace {

std::vector<Polyhedron> local_cones(const PolyUnion& u, const Vec& xbar) {
    if (static_cast<int>(xbar.size()) != u.dim()) throw DimensionError("normal cone: point dimension mismatch");
    std::vector<Polyhedron> out;
    for (const Polyhedron& p : u.pieces())
        if (p.contains(xbar)) out.push_back(p.tangent_cone(xbar));
    if (out.empty()) throw GeometryError("point is not in the set");
    return out;
}

Polyhedron regular_at(const std::vector<Polyhedron>& cones, const Vec& q) {
    std::optional<Polyhedron> acc;
    for (const Polyhedron& t : cones) {
        if (!t.contains(q)) continue;
        Polyhedron polar = t.tangent_cone(q).polar();
        acc = acc ? acc->intersect(polar) : polar;
    }
    return *acc;
}

}  // namespace

VCone tangent_cone(const PolyUnion& u, const Vec& xbar) { return VCone(u.dim(), local_cones(u, xbar)); }

VCone regular_normal_cone(const PolyUnion& u, const Vec& xbar) {
    std::vector<Polyhedron> cones = local_cones(u, xbar);
    return VCone(u.dim(), {regular_at(cones, zeros(xbar.size()))});
}

VCone limiting_normal_cone(const PolyUnion& u, const Vec& xbar) {
    std::vector<Polyhedron> cones = local_cones(u, xbar);
    Matrix normals;
    for (const Polyhedron& t : cones) {
        for (const Halfspace& h : t.inequalities()) normals.push_back(h.normal);
        for (const Halfspace& h : t.equalities()) normals.push_back(h.normal);
    }
    std::vector<Polyhedron> out;
    for (const Vec& q : central_face_points(u.dim(), normals)) {
        bool inside = std::any_of(cones.begin(), cones.end(), [&](const Polyhedron& t) { return t.contains(q); });
        if (inside) out.push_back(regular_at(cones, q));
    }
    return VCone(u.dim(), std::move(out));
}

std::string to_string(CoderivKind k) {
    switch (k) {
    case CoderivKind::regular: return "regular";
    case CoderivKind::limiting: return "limiting";
    case CoderivKind::convexified: return "convexified";
    }
    return "?";
}

CoderivKind parse_kind(const std::string& s) {
    if (s == "regular") return CoderivKind::regular;
    if (s == "limiting") return CoderivKind::limiting;
    if (s == "convexified") return CoderivKind::convexified;
    throw ParseError("unknown coderivative kind '" + s + "'");
}

SetMap CoderivAtPoint::as_map() const {
    SetMap plain(m, n, graph.as_union());
    if (kind != CoderivKind::convexified) return plain;
    if (graph_hull) return SetMap(m, n, cone_hull(graph).as_union());
    if (m == 1) return SetMap(m, n, conic_valuewise_hull(graph.as_union(), m, n));
    return SetMap(m, n, graph.as_union(), true);
}

CoderivAtPoint coderivative(const SetMap& s, const Vec& xbar, const Vec& ybar, CoderivKind kind, bool graph_hull) {
    if (static_cast<int>(xbar.size()) != s.n || static_cast<int>(ybar.size()) != s.m)
        throw DimensionError("coderivative: base point dimension mismatch");
    if (s.hull_values) throw GeometryError("coderivative: map has no exact graph");
    Vec point = concat(xbar, ybar);
    if (!s.graph.contains(point)) throw GeometryError("coderivative: point is not on the graph");
    VCone normal = kind == CoderivKind::regular ? regular_normal_cone(s.graph, point) : limiting_normal_cone(s.graph, point);
    // (v, w) ↦ (u, v) = (-w, v)
    const int d = s.n + s.m;
    Matrix mtx;
    for (int i = 0; i < s.m; ++i) mtx.push_back(neg(unit(static_cast<std::size_t>(d), static_cast<std::size_t>(s.n + i))));
    for (int i = 0; i < s.n; ++i) mtx.push_back(unit(static_cast<std::size_t>(d), static_cast<std::size_t>(i)));
    CoderivAtPoint out;
    out.xbar = xbar;
    out.ybar = ybar;
    out.n = s.n;
    out.m = s.m;
    out.graph = VCone(normal.as_union().linear_image(mtx, d));
    out.kind = kind;
    out.graph_hull = graph_hull;
    return out;
}

PolyUnion coderiv_apply(const CoderivAtPoint& d, const Vec& u) {
    if (static_cast<int>(u.size()) != d.m) throw DimensionError("coderiv_apply: direction dimension mismatch");
    std::vector<int> fixed;
    for (int i = 0; i < d.m; ++i) fixed.push_back(i);
    if (d.kind == CoderivKind::convexified && d.graph_hull)
        return union_slice(cone_hull(d.graph).as_union(), fixed, u);
    PolyUnion v = union_slice(d.graph.as_union(), fixed, u);
    if (d.kind == CoderivKind::convexified && v.size() > 1) return PolyUnion(v.hull());
    return v;
}

Rat MinMaxAffine::value(const Vec& z) const {
    if (static_cast<int>(z.size()) != dim) throw DimensionError("MinMaxAffine: point dimension mismatch");
    std::optional<Rat> best;
    for (const auto& g : groups) {
        std::optional<Rat> mx;
        for (const AffineRow& r : g) {
            Rat v = dot(r.coeffs, z) + r.constant;
            if (!mx || v > *mx) mx = v;
        }
        if (mx && (!best || *mx < *best)) best = mx;
    }
    if (!best) throw GeometryError("MinMaxAffine: function has no rows");
    return *best;
}

PolyUnion MinMaxAffine::epigraph() const {
    std::vector<Polyhedron> pieces;
    for (const auto& g : groups) {
        std::vector<Halfspace> in;
        for (const AffineRow& r : g) {
            Vec a = r.coeffs;
            a.push_back(-1);
            in.push_back(Halfspace{std::move(a), -r.constant});
        }
        pieces.emplace_back(dim + 1, std::move(in));
    }
    return PolyUnion(dim + 1, std::move(pieces));
}

SubdiffTriple subdifferential(const MinMaxAffine& f, const Vec& xbar) {
    Vec point = xbar;
    point.push_back(f.value(xbar));
    VCone n = limiting_normal_cone(f.epigraph(), point);
    SubdiffTriple out;
    out.limiting = union_slice(n.as_union(), {f.dim}, Vec{Rat(-1)});
    out.horizon = VCone(union_slice(n.as_union(), {f.dim}, Vec{Rat(0)}));
    out.clarke = out.limiting.hull();
    return out;
}

}  // namespace setvar
