#include "setvar/chainrules.hpp"

#include "setvar/arrangement.hpp"

#include <algorithm>

namespace setvar {

namespace {

std::vector<int> range(int start, int count) {
    std::vector<int> v;
    for (int i = 0; i < count; ++i) v.push_back(start + i);
    return v;
}

Matrix negation(int d) {
    Matrix m = identity(d);
    for (Vec& row : m) row = neg(row);
    return m;
}

void dedupe(std::vector<Vec>& pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

// Constraints of a graph in R^{a+b} with the first or last block fixed,
// as hyperplanes in the free block.
void sliced_hyperplanes(const PolyUnion& graph, int a, bool fix_first, const Vec& fixed, std::vector<Halfspace>& out) {
    const int d = graph.dim();
    auto push = [&](const Halfspace& h) {
        Vec free_part, fixed_part;
        for (int i = 0; i < d; ++i) {
            bool in_fixed = fix_first ? i < a : i >= a;
            (in_fixed ? fixed_part : free_part).push_back(h.normal[static_cast<std::size_t>(i)]);
        }
        if (is_zero(free_part)) return;
        out.push_back(Halfspace{std::move(free_part), h.offset - dot(fixed_part, fixed)});
    };
    for (const Polyhedron& p : graph.pieces()) {
        for (const Halfspace& h : p.inequalities()) push(h);
        for (const Halfspace& h : p.equalities()) push(h);
    }
}

std::vector<Vec> strata_of(const PolyUnion& u, std::vector<Halfspace> planes) {
    std::vector<Vec> pts;
    for (const Polyhedron& p : u.pieces()) {
        std::vector<Halfspace> local = planes;
        for (const Halfspace& h : p.inequalities()) local.push_back(h);
        for (const Vec& q : strata_points(p, local)) pts.push_back(q);
    }
    dedupe(pts);
    return pts;
}

bool trivial_cone(const PolyUnion& c, std::optional<Vec>* witness) {
    for (const Polyhedron& p : c.pieces()) {
        if (!p.rays().empty()) {
            if (witness) *witness = p.rays().front();
            return false;
        }
        if (!p.lines().empty()) {
            if (witness) *witness = p.lines().front();
            return false;
        }
    }
    return true;
}

SetMap composition(const SetMap& f, const SetMap& g, const Vec& xbar, const Vec& zbar) {
    SetMap fg = compose(f, g);
    if (!fg.graph.contains(concat(xbar, zbar))) throw GeometryError("point is not on the graph of the composition");
    return fg;
}

// valuewise hull of a coderivative-shaped map (conic graph)
SetMap hulled(const SetMap& s) {
    if (s.n == 1) return SetMap(s.n, s.m, conic_valuewise_hull(s.graph, s.n, s.m));
    return SetMap(s.n, s.m, cone_hull(VCone(s.graph)).as_union());
}

}  // namespace

std::string symbol(Relation r) {
    switch (r) {
    case Relation::equal: return "=";
    case Relation::strict_subset: return "⊊";
    case Relation::strict_superset: return "⊋";
    case Relation::incomparable: return "≠";
    }
    return "?";
}

Relation compare(const PolyUnion& a, const PolyUnion& b) {
    bool ab = b.includes(a);
    bool ba = a.includes(b);
    if (ab && ba) return Relation::equal;
    if (ab) return Relation::strict_subset;
    if (ba) return Relation::strict_superset;
    return Relation::incomparable;
}

CqResult check_cq(const SetMap& f, const SetMap& g, const Vec& ybar, const Vec& zbar, const Vec& xbar) {
    PolyUnion a = coderiv_apply(coderivative(f, ybar, zbar, CoderivKind::limiting), zeros(static_cast<std::size_t>(f.m)));
    PolyUnion b = coderiv_apply(coderivative(inverse(g), ybar, xbar, CoderivKind::limiting),
                                zeros(static_cast<std::size_t>(g.n)));
    PolyUnion common = a.intersect(b.linear_image(negation(g.m), g.m));
    CqResult out;
    out.ok = trivial_cone(common, &out.witness);
    return out;
}

PolyUnion intermediate_set(const SetMap& f, const SetMap& g, const Vec& xbar, const Vec& zbar) {
    if (f.n != g.m) throw DimensionError("intermediate_set: inner output and outer input dimensions differ");
    return eval(g, xbar).intersect(eval(inverse(f), zbar));
}

std::vector<Vec> intermediate_points(const SetMap& f, const SetMap& g, const Vec& xbar, const Vec& zbar,
                                     const std::vector<Halfspace>& extra) {
    std::vector<Halfspace> planes = extra;
    sliced_hyperplanes(g.graph, g.n, true, xbar, planes);
    sliced_hyperplanes(f.graph, f.n, false, zbar, planes);
    return strata_of(intermediate_set(f, g, xbar, zbar), std::move(planes));
}

ChainVerdict chain_upper(const SetMap& f, const SetMap& g, const Vec& xbar, const Vec& zbar, CoderivKind kind,
                         ChainVariant variant) {
    SetMap fg = composition(f, g, xbar, zbar);
    const bool co = kind == CoderivKind::convexified;
    ChainVerdict out;
    out.lhs = coderivative(fg, xbar, zbar, kind, f.m > 1).as_map();
    out.ybars = intermediate_points(f, g, xbar, zbar);
    out.locally_bounded = intermediate_set(f, g, xbar, zbar).is_bounded();
    out.certified = out.locally_bounded;

    CoderivKind inner = co && variant == ChainVariant::co_outer ? CoderivKind::limiting : kind;
    PolyUnion rhs(f.m + g.n);
    for (const Vec& y : out.ybars) {
        SetMap dg = coderivative(g, xbar, y, kind, g.m > 1).as_map();
        SetMap df = coderivative(f, y, zbar, inner, f.m > 1).as_map();
        rhs = rhs.unite(compose(dg, df).graph);
        out.cq.push_back(check_cq(f, g, y, zbar, xbar));
        if (!out.cq.back().ok) out.certified = false;
    }
    out.rhs = SetMap(f.m, g.n, rhs);
    if (co) out.rhs = hulled(out.rhs);
    out.relation = compare(out.lhs.graph, out.rhs.graph);
    return out;
}

ConvexChain chain_convex_exact(const SetMap& f, const SetMap& g, const Vec& xbar, const Vec& zbar) {
    if (!f.graph.is_convex() || !g.graph.is_convex()) throw GeometryError("chain_convex_exact: graphs must be convex");
    SetMap fg = composition(f, g, xbar, zbar);
    ConvexChain out;
    out.ybars = intermediate_points(f, g, xbar, zbar);
    for (std::size_t i = 0; i < out.ybars.size(); ++i) {
        const Vec& y = out.ybars[i];
        SetMap c = compose(coderivative(g, xbar, y, CoderivKind::limiting).as_map(),
                           coderivative(f, y, zbar, CoderivKind::limiting).as_map());
        if (i == 0) out.composed = c;
        else if (!c.graph.set_equal(out.composed.graph)) out.independent = false;
        if (!check_cq(f, g, y, zbar, xbar).ok) out.cq_ok = false;
    }
    SetMap direct = coderivative(fg, xbar, zbar, CoderivKind::limiting).as_map();
    out.matches_direct = direct.graph.set_equal(out.composed.graph);
    return out;
}

Argmin minimize_over(const MinMaxAffine& phi, const Vec& x, const PolyUnion& values) {
    const int m = values.dim();
    if (phi.dim != static_cast<int>(x.size()) + m) throw DimensionError("minimize_over: objective dimension mismatch");
    if (values.is_empty()) throw GeometryError("marginal function: the value set is empty");
    auto split = [&](const AffineRow& r) {
        Vec cy(r.coeffs.begin() + static_cast<long>(x.size()), r.coeffs.end());
        Vec cx(r.coeffs.begin(), r.coeffs.begin() + static_cast<long>(x.size()));
        return std::pair<Vec, Rat>(cy, r.constant + dot(cx, x));
    };
    std::optional<Rat> best;
    for (const Polyhedron& p : values.pieces()) {
        Polyhedron lifted = p.embed(m + 1, range(0, m));
        for (const auto& group : phi.groups) {
            std::vector<Halfspace> rows;
            for (const AffineRow& r : group) {
                auto [cy, c0] = split(r);
                cy.push_back(-1);
                rows.push_back(Halfspace{cy, -c0});
            }
            Polyhedron q = lifted.intersect(Polyhedron(m + 1, rows));
            std::optional<Rat> v = minimize(q, unit(static_cast<std::size_t>(m + 1), static_cast<std::size_t>(m)));
            if (!v) throw GeometryError("marginal function is unbounded below");
            if (!best || *v < *best) best = v;
        }
    }
    Argmin out;
    out.value = *best;
    std::vector<Polyhedron> pieces;
    for (const Polyhedron& p : values.pieces()) {
        for (const auto& group : phi.groups) {
            std::vector<Halfspace> rows;
            for (const AffineRow& r : group) {
                auto [cy, c0] = split(r);
                rows.push_back(Halfspace{cy, out.value - c0});
            }
            pieces.push_back(p.intersect(Polyhedron(m, rows)));
        }
    }
    out.set = PolyUnion(m, std::move(pieces));
    return out;
}

PolyUnion shifted_image(const PolyUnion& a, const SetMap& d) {
    if (d.hull_values) throw GeometryError("shifted_image: map has no exact graph");
    const int n = d.m, m = d.n;
    if (a.dim() != n + m) throw DimensionError("shifted_image: dimension mismatch");
    const int total = n + m + n;
    PolyUnion joint = a.embed(total, range(0, n + m)).intersect(d.graph.embed(total, range(n, m + n)));
    Matrix sum;
    for (int i = 0; i < n; ++i) {
        Vec row = unit(static_cast<std::size_t>(total), static_cast<std::size_t>(i));
        row[static_cast<std::size_t>(n + m + i)] = 1;
        sum.push_back(std::move(row));
    }
    return joint.linear_image(sum, n);
}

MarginalEstimate marginal_subdiff(const MinMaxAffine& phi, const SetMap& g, const Vec& xbar, MarginalMode mode) {
    const int n = g.n, m = g.m;
    if (phi.dim != n + m) throw DimensionError("marginal_subdiff: objective must live on R^n x R^m");
    if (mode == MarginalMode::convex && (!phi.is_convex() || !g.graph.is_convex()))
        throw GeometryError("marginal_subdiff: convex mode needs a convex objective and a convex graph");
    MarginalEstimate out;
    Argmin am = minimize_over(phi, xbar, eval(g, xbar));
    out.value = am.value;
    out.argmin = am.set;

    std::vector<Halfspace> planes;
    sliced_hyperplanes(g.graph, n, true, xbar, planes);
    std::vector<AffineRow> rows;
    for (const auto& group : phi.groups) rows.insert(rows.end(), group.begin(), group.end());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            Vec diff = sub(rows[i].coeffs, rows[j].coeffs);
            Halfspace h{Vec(diff.begin() + n, diff.end()),
                        -(rows[i].constant - rows[j].constant) - dot(Vec(diff.begin(), diff.begin() + n), xbar)};
            if (!is_zero(h.normal)) planes.push_back(std::move(h));
        }
    out.ybars = strata_of(am.set, planes);
    if (mode == MarginalMode::convex) out.ybars.resize(std::min<std::size_t>(1, out.ybars.size()));

    const bool clarke = mode == MarginalMode::clarke;
    PolyUnion est(n);
    for (const Vec& y : out.ybars) {
        Vec point = concat(xbar, y);
        SubdiffTriple sd = subdifferential(phi, point);
        CoderivAtPoint d = coderivative(g, xbar, y, clarke ? CoderivKind::convexified : CoderivKind::limiting, clarke && m > 1);
        est = est.unite(shifted_image(clarke ? PolyUnion(sd.clarke) : sd.limiting, d.as_map()));
        PolyUnion normal = limiting_normal_cone(g.graph, point).as_union();
        PolyUnion common = sd.horizon.as_union().intersect(normal.linear_image(negation(n + m), n + m));
        if (!trivial_cone(common, nullptr)) out.certified = false;
    }
    out.estimate = clarke ? PolyUnion(est.hull()) : est;
    out.exact = mode == MarginalMode::convex;
    return out;
}

PolyUnion wp_filtered_chain(const SetMap& f, const SetMap& g, const Vec& xbar, const Vec& zbar, const Vec& r) {
    composition(f, g, xbar, zbar);
    Polyhedron co_values = eval(g, xbar).hull();
    std::vector<Halfspace> extra = co_values.inequalities();
    for (const Halfspace& h : co_values.equalities()) extra.push_back(h);
    PolyUnion out(g.n);
    for (const Vec& y : intermediate_points(f, g, xbar, zbar, extra)) {
        PolyUnion q(coderiv_apply(coderivative(f, y, zbar, CoderivKind::limiting), r).hull());
        Polyhedron filter = co_values.tangent_cone(y).polar().linear_image(negation(g.m), g.m);
        q = q.intersect(filter);
        if (q.is_empty()) continue;
        out = out.unite(image(coderivative(g, xbar, y, CoderivKind::convexified, g.m > 1).as_map(), q));
    }
    return out;
}

}  // namespace setvar
