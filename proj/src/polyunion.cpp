#include "setvar/polyunion.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace setvar {

PolyUnion::PolyUnion(int dim, std::vector<Polyhedron> pieces) : dim_(dim) {
    std::vector<Polyhedron> kept;
    for (Polyhedron& p : pieces) {
        if (p.dim() != dim) throw DimensionError("PolyUnion: piece dimension mismatch");
        if (!p.is_empty()) kept.push_back(std::move(p));
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    std::vector<bool> drop(kept.size(), false);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        for (std::size_t j = 0; j < kept.size() && !drop[i]; ++j) {
            if (i == j || drop[j]) continue;
            if (kept[j].includes(kept[i])) drop[i] = true;
        }
    }
    for (std::size_t i = 0; i < kept.size(); ++i)
        if (!drop[i]) pieces_.push_back(std::move(kept[i]));
}

PolyUnion::PolyUnion(const Polyhedron& p) : PolyUnion(p.dim(), {p}) {}

bool PolyUnion::is_bounded() const {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const Polyhedron& p) { return p.is_bounded(); });
}

bool PolyUnion::contains(const Vec& z) const {
    return std::any_of(pieces_.begin(), pieces_.end(), [&](const Polyhedron& p) { return p.contains(z); });
}

PolyUnion PolyUnion::unite(const PolyUnion& other) const {
    if (other.dim_ != dim_) throw DimensionError("unite: dimension mismatch");
    std::vector<Polyhedron> all = pieces_;
    all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
    return PolyUnion(dim_, std::move(all));
}

PolyUnion PolyUnion::intersect(const Polyhedron& p) const {
    std::vector<Polyhedron> out;
    for (const Polyhedron& q : pieces_) out.push_back(q.intersect(p));
    return PolyUnion(dim_, std::move(out));
}

PolyUnion PolyUnion::intersect(const PolyUnion& other) const {
    if (other.dim_ != dim_) throw DimensionError("intersect: dimension mismatch");
    std::vector<Polyhedron> out;
    for (const Polyhedron& a : pieces_)
        for (const Polyhedron& b : other.pieces_) out.push_back(a.intersect(b));
    return PolyUnion(dim_, std::move(out));
}

PolyUnion PolyUnion::project(const std::vector<int>& keep) const {
    std::vector<Polyhedron> out;
    for (const Polyhedron& p : pieces_) out.push_back(p.project(keep));
    return PolyUnion(static_cast<int>(keep.size()), std::move(out));
}

PolyUnion PolyUnion::slice(const std::vector<int>& fixed, const Vec& values) const {
    std::vector<Polyhedron> out;
    for (const Polyhedron& p : pieces_) out.push_back(p.slice(fixed, values));
    return PolyUnion(dim_ - static_cast<int>(fixed.size()), std::move(out));
}

PolyUnion PolyUnion::embed(int new_dim, const std::vector<int>& positions) const {
    std::vector<Polyhedron> out;
    for (const Polyhedron& p : pieces_) out.push_back(p.embed(new_dim, positions));
    return PolyUnion(new_dim, std::move(out));
}

PolyUnion PolyUnion::affine_preimage(const Matrix& m, const Vec& c, int cols) const {
    std::vector<Polyhedron> out;
    for (const Polyhedron& p : pieces_) out.push_back(p.affine_preimage(m, c, cols));
    return PolyUnion(cols, std::move(out));
}

PolyUnion PolyUnion::linear_image(const Matrix& m, int rows) const {
    std::vector<Polyhedron> out;
    for (const Polyhedron& p : pieces_) out.push_back(p.linear_image(m, rows));
    return PolyUnion(rows, std::move(out));
}

PolyUnion PolyUnion::minkowski_sum(const PolyUnion& other) const {
    if (other.dim_ != dim_) throw DimensionError("minkowski_sum: dimension mismatch");
    std::vector<Polyhedron> out;
    for (const Polyhedron& a : pieces_)
        for (const Polyhedron& b : other.pieces_) out.push_back(a.minkowski_sum(b));
    return PolyUnion(dim_, std::move(out));
}

Polyhedron PolyUnion::hull() const {
    if (pieces_.empty()) return Polyhedron::empty(dim_);
    if (pieces_.size() == 1) return pieces_.front();
    Matrix pts, rays, lines;
    for (const Polyhedron& p : pieces_) {
        pts.insert(pts.end(), p.vertices().begin(), p.vertices().end());
        rays.insert(rays.end(), p.rays().begin(), p.rays().end());
        lines.insert(lines.end(), p.lines().begin(), p.lines().end());
    }
    return Polyhedron::from_generators(dim_, pts, rays, lines);
}

bool PolyUnion::is_convex() const {
    if (pieces_.size() <= 1) return true;
    return covers(hull());
}

namespace {

// p minus the lower-dimensional parts is covered by qs[start..]; pieces of
// lower dimension than p can be ignored since the union is closed.
bool covered_by(const Polyhedron& p, const std::vector<Polyhedron>& qs, std::size_t start) {
    if (p.is_empty()) return true;
    const int d = p.affine_dim();
    for (std::size_t j = start; j < qs.size(); ++j) {
        const Polyhedron& q = qs[j];
        if (q.includes(p)) return true;
        if (p.intersect(q).affine_dim() < d) continue;
        // p \ q = union over i of p ∩ {a_i z >= b_i} ∩ {a_k z <= b_k, k < i}
        std::vector<Halfspace> prefix;
        for (const Halfspace& h : q.inequalities()) {
            std::vector<Halfspace> in = p.inequalities();
            in.insert(in.end(), prefix.begin(), prefix.end());
            in.push_back(Halfspace{neg(h.normal), -h.offset});
            Polyhedron part(p.dim(), std::move(in), p.equalities());
            if (part.affine_dim() == d && !covered_by(part, qs, j + 1)) return false;
            prefix.push_back(h);
        }
        return true;
    }
    return false;
}

}  // namespace

bool PolyUnion::covers(const Polyhedron& p) const {
    if (p.dim() != dim_) throw DimensionError("covers: dimension mismatch");
    return covered_by(p, pieces_, 0);
}

bool PolyUnion::includes(const PolyUnion& other) const {
    if (other.dim_ != dim_) throw DimensionError("includes: dimension mismatch");
    return std::all_of(other.pieces_.begin(), other.pieces_.end(), [&](const Polyhedron& p) { return covers(p); });
}

bool PolyUnion::set_equal(const PolyUnion& other) const {
    if (*this == other) return true;
    return includes(other) && other.includes(*this);
}

Rat PolyUnion::distance2(const Vec& z) const { return norm2(sub(nearest_point(z), z)); }

Vec PolyUnion::nearest_point(const Vec& z) const {
    if (pieces_.empty()) throw GeometryError("nearest_point: empty union");
    std::optional<Vec> best;
    Rat best_d;
    for (const Polyhedron& p : pieces_) {
        Vec y = p.nearest_point(z);
        Rat d = norm2(sub(y, z));
        if (!best || d < best_d) {
            best = std::move(y);
            best_d = d;
        }
    }
    return *best;
}

std::string PolyUnion::serialize(bool with_generators) const {
    std::string s;
    for (const Polyhedron& p : pieces_) s += p.serialize(with_generators);
    return s;
}

PolyUnion union_slice(const PolyUnion& u, const std::vector<int>& fixed, const Vec& values) {
    return u.slice(fixed, values);
}

namespace {

struct Interval {
    Rat lo, hi;
};

std::vector<Interval> intervals_of(const PolyUnion& u) {
    std::vector<Interval> out;
    for (const Polyhedron& p : u.pieces()) {
        Rat lo = p.vertices().front()[0], hi = lo;
        for (const Vec& v : p.vertices()) {
            if (v[0] < lo) lo = v[0];
            if (v[0] > hi) hi = v[0];
        }
        out.push_back({lo, hi});
    }
    std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    return out;
}

Rat dist_to(const Rat& x, const std::vector<Interval>& b) {
    std::optional<Rat> best;
    for (const Interval& iv : b) {
        Rat d = x < iv.lo ? Rat(iv.lo - x) : (x > iv.hi ? Rat(x - iv.hi) : Rat(0));
        if (!best || d < *best) best = d;
    }
    return *best;
}

// sup over a in A of d(a, B); the distance to B is piecewise linear with
// peaks at gap midpoints, so endpoints and clamped midpoints suffice.
Rat excess_1d(const std::vector<Interval>& a, const std::vector<Interval>& b) {
    std::vector<Rat> peaks;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) peaks.push_back((b[i].hi + b[i + 1].lo) / 2);
    Rat best = 0;
    for (const Interval& iv : a) {
        std::vector<Rat> cand{iv.lo, iv.hi};
        for (const Rat& m : peaks)
            if (m > iv.lo && m < iv.hi) cand.push_back(m);
        for (const Rat& x : cand) {
            Rat d = dist_to(x, b);
            if (d > best) best = d;
        }
    }
    return best;
}

Rat vertex_excess2(const PolyUnion& a, const PolyUnion& b) {
    Rat best = 0;
    for (const Polyhedron& p : a.pieces())
        for (const Vec& v : p.vertices()) {
            Rat d = b.distance2(v);
            if (d > best) best = d;
        }
    return best;
}

double support(const PolyUnion& u, const std::vector<double>& dir) {
    double best = -HUGE_VAL;
    for (const Polyhedron& p : u.pieces())
        for (const Vec& v : p.vertices()) {
            double s = 0;
            for (std::size_t i = 0; i < dir.size(); ++i) s += dir[i] * to_double(v[i]);
            best = std::max(best, s);
        }
    return best;
}

}  // namespace

HausdorffResult hausdorff(const PolyUnion& a, const PolyUnion& b, int dirs) {
    if (a.dim() != b.dim()) throw DimensionError("hausdorff: dimension mismatch");
    if (!a.is_bounded() || !b.is_bounded()) throw GeometryError("unbounded set");
    HausdorffResult r;
    if (a.is_empty() && b.is_empty()) {
        r.exact = true;
        r.squared = Rat(0);
        r.rational = Rat(0);
        return r;
    }
    if (a.is_empty() || b.is_empty()) throw GeometryError("hausdorff: one set is empty");
    if (a.dim() == 1) {
        std::vector<Interval> ia = intervals_of(a), ib = intervals_of(b);
        Rat d = std::max(excess_1d(ia, ib), excess_1d(ib, ia));
        r.exact = true;
        r.rational = d;
        r.squared = d * d;
        r.value = to_double(d);
        return r;
    }
    const bool ca = a.is_convex(), cb = b.is_convex();
    PolyUnion ta = ca ? PolyUnion(a.hull()) : a;
    PolyUnion tb = cb ? PolyUnion(b.hull()) : b;
    Rat v2 = std::max(vertex_excess2(a, tb), vertex_excess2(b, ta));
    r.value = std::sqrt(to_double(v2));
    if (ca && cb) {
        r.exact = true;
        r.squared = v2;
        return r;
    }
    std::mt19937_64 gen(0x5eed);
    std::normal_distribution<double> normal;
    for (int k = 0; k < dirs; ++k) {
        std::vector<double> u(static_cast<std::size_t>(a.dim()));
        double nn = 0;
        for (double& x : u) {
            x = normal(gen);
            nn += x * x;
        }
        nn = std::sqrt(nn);
        if (nn == 0) continue;
        for (double& x : u) x /= nn;
        r.value = std::max(r.value, std::fabs(support(a, u) - support(b, u)));
    }
    return r;
}

VCone::VCone(int dim, std::vector<Polyhedron> pieces) : u_(dim, std::move(pieces)) {
    for (const Polyhedron& p : u_.pieces())
        if (!p.is_cone()) throw GeometryError("VCone: piece is not a cone with apex at the origin");
}

VCone::VCone(const PolyUnion& u) : VCone(u.dim(), u.pieces()) {}

VCone cone_hull(const VCone& c) {
    if (c.pieces().empty()) return c;
    Matrix rays, lines;
    for (const Polyhedron& p : c.pieces()) {
        rays.insert(rays.end(), p.rays().begin(), p.rays().end());
        lines.insert(lines.end(), p.lines().begin(), p.lines().end());
    }
    return VCone(c.dim(), {Polyhedron::cone(c.dim(), rays, lines)});
}

bool cone_includes(const VCone& c1, const VCone& c2) {
    if (c1.dim() != c2.dim()) throw DimensionError("cone_includes: dimension mismatch");
    return c2.as_union().includes(c1.as_union());
}

bool cone_equal(const VCone& c1, const VCone& c2) { return c1.as_union().set_equal(c2.as_union()); }

}  // namespace setvar
