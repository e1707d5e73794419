#include "setvar/arrangement.hpp"

#include <set>

namespace setvar {

namespace {

struct Cell {
    Polyhedron closure;
    std::vector<std::pair<Halfspace, int>> strict;  // sign * (a.z - b) > 0
};

bool strictly_ok(const Vec& q, const std::vector<std::pair<Halfspace, int>>& strict) {
    for (const auto& [h, s] : strict) {
        Rat v = dot(h.normal, q) - h.offset;
        if (sgn(v) != s) return false;
    }
    return true;
}

}  // namespace

std::vector<Vec> strata_points(const Polyhedron& region, const std::vector<Halfspace>& hyperplanes) {
    const int d = region.dim();
    if (region.is_empty()) return {};
    std::set<Vec, bool (*)(const Vec&, const Vec&)> seen(&lex_less);
    std::vector<Halfspace> hs;
    for (const Halfspace& h : hyperplanes) {
        if (static_cast<int>(h.normal.size()) != d) throw DimensionError("strata_points: hyperplane length mismatch");
        if (is_zero(h.normal)) continue;
        Vec p = primitive_signed(h.normal);
        std::size_t i = 0;
        while (sgn(h.normal[i]) == 0) ++i;
        Rat off = h.offset * (p[i] / h.normal[i]);
        Vec key = p;
        key.push_back(off);
        if (!seen.insert(key).second) continue;
        hs.push_back(Halfspace{std::move(p), off});
    }
    std::vector<Cell> cells{Cell{region, {}}};
    for (const Halfspace& h : hs) {
        std::vector<Cell> next;
        for (const Cell& c : cells) {
            for (int s : {-1, 0, 1}) {
                std::vector<Halfspace> in, eq;
                if (s == 0) eq.push_back(h);
                else in.push_back(Halfspace{scale(h.normal, Rat(-s)), -s * h.offset});
                Polyhedron piece = c.closure.intersect(Polyhedron(d, std::move(in), std::move(eq)));
                if (piece.is_empty()) continue;
                Cell child{piece, c.strict};
                if (s != 0) child.strict.emplace_back(h, s);
                if (!strictly_ok(piece.relative_interior_point(), child.strict)) continue;
                next.push_back(std::move(child));
            }
        }
        cells = std::move(next);
    }
    std::vector<Vec> out;
    for (const Cell& c : cells) out.push_back(c.closure.relative_interior_point());
    return out;
}

std::vector<Vec> central_face_points(int d, const Matrix& normals) {
    std::vector<Halfspace> hs;
    for (const Vec& a : normals) hs.push_back(Halfspace{a, Rat(0)});
    return strata_points(Polyhedron::universe(d), hs);
}

}  // namespace setvar
