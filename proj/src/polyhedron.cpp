#include "setvar/polyhedron.hpp"

#include "setvar/dd.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <map>
#include <set>

namespace setvar {

namespace {

using Bits = boost::dynamic_bitset<>;

struct FmRow {
    Vec a;
    Rat b;
    Bits hist;
};

void check_len(const Vec& v, int dim, const char* what) {
    if (static_cast<int>(v.size()) != dim) throw DimensionError(std::string(what) + ": coefficient length mismatch");
}

// Scales (a, b) by a positive factor so that a is primitive.
void normalize_row(Vec& a, Rat& b) {
    if (is_zero(a)) return;
    Vec p = primitive(a);
    std::size_t i = 0;
    while (sgn(a[i]) == 0) ++i;
    Rat factor = p[i] / a[i];
    a = std::move(p);
    b *= factor;
}

bool vec_less(const Vec& x, const Vec& y) { return lex_less(x, y); }

struct VecLess {
    bool operator()(const Vec& x, const Vec& y) const { return vec_less(x, y); }
};

}  // namespace

Elimination fourier_motzkin(int dim, const std::vector<Halfspace>& ineqs, const std::vector<Halfspace>& eqs,
                            const std::vector<int>& keep) {
    Elimination out;
    std::vector<bool> kept(static_cast<std::size_t>(dim), false);
    for (int k : keep) {
        if (k < 0 || k >= dim) throw DimensionError("fourier_motzkin: keep index out of range");
        kept[static_cast<std::size_t>(k)] = true;
    }
    std::vector<FmRow> rows;
    std::vector<FmRow> eq_rows;
    for (std::size_t i = 0; i < ineqs.size(); ++i) {
        check_len(ineqs[i].normal, dim, "fourier_motzkin");
        FmRow r{ineqs[i].normal, ineqs[i].offset, Bits(ineqs.size())};
        r.hist.set(i);
        rows.push_back(std::move(r));
    }
    for (const Halfspace& e : eqs) {
        check_len(e.normal, dim, "fourier_motzkin");
        eq_rows.push_back(FmRow{e.normal, e.offset, Bits(ineqs.size())});
    }

    auto cleanup = [&]() -> bool {
        // A parallel row is dropped only when another is at least as tight with
        // a history subset, so pruning by history stays sound.
        std::map<Vec, std::vector<FmRow>, VecLess> best;
        for (FmRow& r : rows) {
            if (is_zero(r.a)) {
                if (sgn(r.b) < 0) return false;
                continue;
            }
            normalize_row(r.a, r.b);
            std::vector<FmRow>& group = best[r.a];
            bool dominated = std::any_of(group.begin(), group.end(), [&](const FmRow& o) {
                return cmp(o.b, r.b) <= 0 && o.hist.is_subset_of(r.hist);
            });
            if (dominated) continue;
            std::erase_if(group, [&](const FmRow& o) { return cmp(r.b, o.b) <= 0 && r.hist.is_subset_of(o.hist); });
            group.push_back(std::move(r));
        }
        rows.clear();
        for (auto& [k, group] : best)
            for (FmRow& r : group) rows.push_back(std::move(r));
        std::map<Vec, Rat, VecLess> eq_seen;
        std::vector<FmRow> eq_next;
        for (FmRow& r : eq_rows) {
            if (is_zero(r.a)) {
                if (sgn(r.b) != 0) return false;
                continue;
            }
            Vec p = primitive_signed(r.a);
            std::size_t i = 0;
            while (sgn(r.a[i]) == 0) ++i;
            Rat bb = r.b * (p[i] / r.a[i]);
            auto it = eq_seen.find(p);
            if (it != eq_seen.end()) {
                if (cmp(it->second, bb) != 0) return false;
                continue;
            }
            eq_seen.emplace(p, bb);
            eq_next.push_back(FmRow{p, bb, r.hist});
        }
        eq_rows = std::move(eq_next);
        return true;
    };

    if (!cleanup()) {
        out.infeasible = true;
        return out;
    }

    std::vector<int> todo;
    for (int j = 0; j < dim; ++j)
        if (!kept[static_cast<std::size_t>(j)]) todo.push_back(j);

    int fm_steps = 0;
    while (!todo.empty()) {
        // Prefer a coordinate that an equality can substitute away; otherwise
        // the one with the fewest generated pairs.
        std::size_t pick = todo.size();
        std::size_t eq_idx = 0;
        for (std::size_t t = 0; t < todo.size() && pick == todo.size(); ++t) {
            std::size_t j = static_cast<std::size_t>(todo[t]);
            for (std::size_t e = 0; e < eq_rows.size(); ++e) {
                if (sgn(eq_rows[e].a[j]) != 0) {
                    pick = t;
                    eq_idx = e;
                    break;
                }
            }
        }
        bool by_substitution = pick != todo.size();
        if (!by_substitution) {
            std::size_t best_cost = 0;
            for (std::size_t t = 0; t < todo.size(); ++t) {
                std::size_t j = static_cast<std::size_t>(todo[t]);
                std::size_t np = 0, nn = 0;
                for (const FmRow& r : rows) {
                    int s = sgn(r.a[j]);
                    if (s > 0) ++np;
                    else if (s < 0) ++nn;
                }
                std::size_t cost = np * nn;
                if (pick == todo.size() || cost < best_cost) {
                    pick = t;
                    best_cost = cost;
                }
            }
        }
        const std::size_t j = static_cast<std::size_t>(todo[pick]);
        todo.erase(todo.begin() + static_cast<std::ptrdiff_t>(pick));

        if (by_substitution) {
            FmRow e = eq_rows[eq_idx];
            eq_rows.erase(eq_rows.begin() + static_cast<std::ptrdiff_t>(eq_idx));
            auto substitute = [&](FmRow& r) {
                if (sgn(r.a[j]) == 0) return;
                Rat f = r.a[j] / e.a[j];
                r.a = axpy(r.a, -f, e.a);
                r.b -= f * e.b;
            };
            for (FmRow& r : rows) substitute(r);
            for (FmRow& r : eq_rows) substitute(r);
        } else {
            ++fm_steps;
            std::vector<FmRow> pos, negs, next;
            for (FmRow& r : rows) {
                int s = sgn(r.a[j]);
                if (s > 0) pos.push_back(std::move(r));
                else if (s < 0) negs.push_back(std::move(r));
                else next.push_back(std::move(r));
            }
            for (const FmRow& p : pos) {
                for (const FmRow& n : negs) {
                    Bits h = p.hist | n.hist;
                    if (static_cast<int>(h.count()) > fm_steps + 1) continue;  // Chernikov
                    Rat wp = -n.a[j], wn = p.a[j];
                    FmRow c{axpy(scale(p.a, wp), wn, n.a), wp * p.b + wn * n.b, std::move(h)};
                    c.a[j] = 0;
                    next.push_back(std::move(c));
                }
            }
            rows = std::move(next);
        }
        if (!cleanup()) {
            out.infeasible = true;
            return out;
        }
    }

    for (const FmRow& r : rows) out.ineqs.push_back(Halfspace{select(r.a, keep), r.b});
    for (const FmRow& r : eq_rows) out.eqs.push_back(Halfspace{select(r.a, keep), r.b});
    return out;
}

bool fm_feasible(int dim, const std::vector<Halfspace>& ineqs, const std::vector<Halfspace>& eqs) {
    return !fourier_motzkin(dim, ineqs, eqs, {}).infeasible;
}

Polyhedron::Polyhedron(int dim, std::vector<Halfspace> ineqs, std::vector<Halfspace> eqs) : dim_(dim) {
    if (dim < 0) throw DimensionError("Polyhedron: negative dimension");
    for (const Halfspace& h : ineqs) check_len(h.normal, dim, "Polyhedron");
    for (const Halfspace& h : eqs) check_len(h.normal, dim, "Polyhedron");
    if (!fm_feasible(dim, ineqs, eqs)) {
        set_empty();
        return;
    }
    const int hd = dim + 1;
    Matrix hin, heq;
    for (const Halfspace& h : ineqs) {
        Vec row = h.normal;
        row.push_back(-h.offset);
        hin.push_back(std::move(row));
    }
    Vec tpos = zeros(static_cast<std::size_t>(hd));
    tpos[static_cast<std::size_t>(dim)] = -1;
    hin.push_back(std::move(tpos));
    for (const Halfspace& h : eqs) {
        Vec row = h.normal;
        row.push_back(-h.offset);
        heq.push_back(std::move(row));
    }
    ConeGenerators g = cone_generators(hd, hin, heq);
    canonicalize_from_generators(std::move(g.rays), std::move(g.lines));
    if (is_empty()) throw GeometryError("Polyhedron: elimination and double description disagree on feasibility");
}

void Polyhedron::set_empty() {
    ineqs_.clear();
    eqs_.clear();
    verts_.clear();
    rays_.clear();
    lines_.clear();
    ineqs_.push_back(Halfspace{zeros(static_cast<std::size_t>(dim_)), Rat(-1)});
    key_ = serialize(false);
}

void Polyhedron::canonicalize_from_generators(Matrix hrays, Matrix hlines) {
    const int hd = dim_ + 1;
    const std::size_t t = static_cast<std::size_t>(dim_);
    bool has_point = std::any_of(hrays.begin(), hrays.end(), [&](const Vec& r) { return sgn(r[t]) > 0; });
    if (!has_point) {
        set_empty();
        return;
    }
    ConeGenerators f = cone_facets(hd, hrays, hlines);

    Rref eq_basis = rref(f.lines, hd);
    for (int p : eq_basis.pivots)
        if (p == dim_) throw GeometryError("Polyhedron: degenerate homogenization");
    eqs_.clear();
    for (const Vec& row : eq_basis.rows) {
        Vec r = primitive_signed(row);
        Vec a(r.begin(), r.begin() + dim_);
        eqs_.push_back(Halfspace{std::move(a), -r[t]});
    }
    std::set<Vec, VecLess> ineq_rows;
    for (const Vec& y : f.rays) {
        bool touches_point = std::any_of(hrays.begin(), hrays.end(),
                                         [&](const Vec& r) { return sgn(r[t]) > 0 && sgn(dot(y, r)) == 0; });
        if (!touches_point) continue;  // the t >= 0 facet
        ineq_rows.insert(primitive(reduce_mod(y, eq_basis)));
    }
    ineqs_.clear();
    for (const Vec& r : ineq_rows) {
        Vec a(r.begin(), r.begin() + dim_);
        ineqs_.push_back(Halfspace{std::move(a), -r[t]});
    }

    Matrix lin;
    for (const Vec& l : hlines) lin.push_back(Vec(l.begin(), l.begin() + dim_));
    Rref line_basis = rref(lin, dim_);
    lines_.clear();
    for (const Vec& row : line_basis.rows) lines_.push_back(primitive_signed(row));
    std::set<Vec, VecLess> pts, rs;
    for (const Vec& r : hrays) {
        Vec z(r.begin(), r.begin() + dim_);
        if (sgn(r[t]) > 0) {
            pts.insert(reduce_mod(scale(z, 1 / r[t]), line_basis));
        } else {
            Vec red = reduce_mod(z, line_basis);
            if (!is_zero(red)) rs.insert(primitive(red));
        }
    }
    verts_.assign(pts.begin(), pts.end());
    rays_.assign(rs.begin(), rs.end());
    key_ = serialize(false);
}

Polyhedron Polyhedron::universe(int dim) { return Polyhedron(dim, {}, {}); }

Polyhedron Polyhedron::empty(int dim) {
    Polyhedron p;
    p.dim_ = dim;
    p.set_empty();
    return p;
}

Polyhedron Polyhedron::point(const Vec& p) {
    const int d = static_cast<int>(p.size());
    std::vector<Halfspace> eqs;
    for (int i = 0; i < d; ++i) eqs.push_back(Halfspace{unit(p.size(), static_cast<std::size_t>(i)), p[static_cast<std::size_t>(i)]});
    return Polyhedron(d, {}, std::move(eqs));
}

Polyhedron Polyhedron::box(const Vec& lo, const Vec& hi) {
    if (lo.size() != hi.size()) throw DimensionError("box: bound length mismatch");
    std::vector<Halfspace> in;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        in.push_back(Halfspace{unit(lo.size(), i), hi[i]});
        in.push_back(Halfspace{neg(unit(lo.size(), i)), -lo[i]});
    }
    return Polyhedron(static_cast<int>(lo.size()), std::move(in));
}

Polyhedron Polyhedron::from_generators(int dim, const Matrix& points, const Matrix& rays, const Matrix& lines) {
    if (points.empty()) return empty(dim);
    Matrix hr, hl;
    for (const Vec& p : points) {
        check_len(p, dim, "from_generators");
        Vec v = p;
        v.push_back(1);
        hr.push_back(primitive(v));
    }
    for (const Vec& r : rays) {
        check_len(r, dim, "from_generators");
        if (is_zero(r)) continue;
        Vec v = r;
        v.push_back(0);
        hr.push_back(primitive(v));
    }
    for (const Vec& l : lines) {
        check_len(l, dim, "from_generators");
        if (is_zero(l)) continue;
        Vec v = l;
        v.push_back(0);
        hl.push_back(primitive(v));
    }
    // H-form via the polar, then a second conversion for minimal generators.
    ConeGenerators f = cone_facets(dim + 1, hr, hl);
    std::vector<Halfspace> in, eq;
    const std::size_t t = static_cast<std::size_t>(dim);
    for (const Vec& y : f.rays) in.push_back(Halfspace{Vec(y.begin(), y.begin() + dim), -y[t]});
    for (const Vec& y : f.lines) eq.push_back(Halfspace{Vec(y.begin(), y.begin() + dim), -y[t]});
    return Polyhedron(dim, std::move(in), std::move(eq));
}

Polyhedron Polyhedron::cone(int dim, const Matrix& rays, const Matrix& lines) {
    return from_generators(dim, {zeros(static_cast<std::size_t>(dim))}, rays, lines);
}

bool Polyhedron::is_cone() const {
    if (is_empty()) return false;
    for (const Halfspace& h : ineqs_)
        if (sgn(h.offset) != 0) return false;
    for (const Halfspace& h : eqs_)
        if (sgn(h.offset) != 0) return false;
    return true;
}

int Polyhedron::affine_dim() const {
    if (is_empty()) return -1;
    return dim_ - static_cast<int>(eqs_.size());
}

bool Polyhedron::contains(const Vec& z) const {
    if (static_cast<int>(z.size()) != dim_) throw DimensionError("contains: point dimension mismatch");
    if (is_empty()) return false;
    for (const Halfspace& h : eqs_)
        if (dot(h.normal, z) != h.offset) return false;
    for (const Halfspace& h : ineqs_)
        if (dot(h.normal, z) > h.offset) return false;
    return true;
}

bool Polyhedron::includes(const Polyhedron& other) const {
    if (other.dim_ != dim_) throw DimensionError("includes: dimension mismatch");
    if (other.is_empty()) return true;
    if (is_empty()) return false;
    for (const Vec& v : other.verts_)
        if (!contains(v)) return false;
    for (const Vec& r : other.rays_) {
        for (const Halfspace& h : eqs_)
            if (sgn(dot(h.normal, r)) != 0) return false;
        for (const Halfspace& h : ineqs_)
            if (sgn(dot(h.normal, r)) > 0) return false;
    }
    for (const Vec& l : other.lines_) {
        for (const Halfspace& h : eqs_)
            if (sgn(dot(h.normal, l)) != 0) return false;
        for (const Halfspace& h : ineqs_)
            if (sgn(dot(h.normal, l)) != 0) return false;
    }
    return true;
}

Vec Polyhedron::relative_interior_point() const {
    if (is_empty()) throw GeometryError("relative_interior_point: empty polyhedron");
    Vec c = zeros(static_cast<std::size_t>(dim_));
    for (const Vec& v : verts_) c = add(c, v);
    c = scale(c, Rat(1, static_cast<unsigned long>(verts_.size())));
    for (const Vec& r : rays_) c = add(c, r);
    return c;
}

std::vector<int> Polyhedron::active_at(const Vec& z) const {
    std::vector<int> act;
    for (std::size_t i = 0; i < ineqs_.size(); ++i)
        if (dot(ineqs_[i].normal, z) == ineqs_[i].offset) act.push_back(static_cast<int>(i));
    return act;
}

Polyhedron Polyhedron::intersect(const Polyhedron& other) const {
    if (other.dim_ != dim_) throw DimensionError("intersect: dimension mismatch");
    if (is_empty() || other.is_empty()) return empty(dim_);
    std::vector<Halfspace> in = ineqs_, eq = eqs_;
    in.insert(in.end(), other.ineqs_.begin(), other.ineqs_.end());
    eq.insert(eq.end(), other.eqs_.begin(), other.eqs_.end());
    return Polyhedron(dim_, std::move(in), std::move(eq));
}

Polyhedron Polyhedron::project(const std::vector<int>& keep) const {
    const int nd = static_cast<int>(keep.size());
    if (is_empty()) return empty(nd);
    Elimination e = fourier_motzkin(dim_, ineqs_, eqs_, keep);
    if (e.infeasible) return empty(nd);
    return Polyhedron(nd, std::move(e.ineqs), std::move(e.eqs));
}

Polyhedron Polyhedron::project_generators(const std::vector<int>& keep) const {
    const int nd = static_cast<int>(keep.size());
    if (is_empty()) return empty(nd);
    Matrix p, r, l;
    for (const Vec& v : verts_) p.push_back(select(v, keep));
    for (const Vec& v : rays_) r.push_back(select(v, keep));
    for (const Vec& v : lines_) l.push_back(select(v, keep));
    return from_generators(nd, p, r, l);
}

Polyhedron Polyhedron::affine_preimage(const Matrix& m, const Vec& c, int cols) const {
    if (static_cast<int>(m.size()) != dim_ || static_cast<int>(c.size()) != dim_)
        throw DimensionError("affine_preimage: map shape mismatch");
    if (is_empty()) return empty(cols);
    auto pull = [&](const Halfspace& h) {
        Vec a = zeros(static_cast<std::size_t>(cols));
        for (int i = 0; i < dim_; ++i) {
            const Rat& hi = h.normal[static_cast<std::size_t>(i)];
            if (sgn(hi) == 0) continue;
            a = axpy(a, hi, m[static_cast<std::size_t>(i)]);
        }
        return Halfspace{std::move(a), h.offset - dot(h.normal, c)};
    };
    std::vector<Halfspace> in, eq;
    for (const Halfspace& h : ineqs_) in.push_back(pull(h));
    for (const Halfspace& h : eqs_) eq.push_back(pull(h));
    return Polyhedron(cols, std::move(in), std::move(eq));
}

Polyhedron Polyhedron::linear_image(const Matrix& m, int rows) const {
    if (static_cast<int>(m.size()) != rows) throw DimensionError("linear_image: map shape mismatch");
    if (is_empty()) return empty(rows);
    Matrix p, r, l;
    for (const Vec& v : verts_) p.push_back(mat_vec(m, v));
    for (const Vec& v : rays_) r.push_back(mat_vec(m, v));
    for (const Vec& v : lines_) l.push_back(mat_vec(m, v));
    return from_generators(rows, p, r, l);
}

Polyhedron Polyhedron::embed(int new_dim, const std::vector<int>& positions) const {
    if (static_cast<int>(positions.size()) != dim_) throw DimensionError("embed: position count mismatch");
    if (is_empty()) return empty(new_dim);
    auto place = [&](const Halfspace& h) {
        Vec a = zeros(static_cast<std::size_t>(new_dim));
        for (int i = 0; i < dim_; ++i) a.at(static_cast<std::size_t>(positions[static_cast<std::size_t>(i)])) = h.normal[static_cast<std::size_t>(i)];
        return Halfspace{std::move(a), h.offset};
    };
    std::vector<Halfspace> in, eq;
    for (const Halfspace& h : ineqs_) in.push_back(place(h));
    for (const Halfspace& h : eqs_) eq.push_back(place(h));
    return Polyhedron(new_dim, std::move(in), std::move(eq));
}

Polyhedron Polyhedron::slice(const std::vector<int>& fixed, const Vec& values) const {
    if (fixed.size() != values.size()) throw DimensionError("slice: value count mismatch");
    std::vector<bool> is_fixed(static_cast<std::size_t>(dim_), false);
    for (int f : fixed) {
        if (f < 0 || f >= dim_) throw DimensionError("slice: index out of range");
        is_fixed[static_cast<std::size_t>(f)] = true;
    }
    std::vector<int> free;
    for (int i = 0; i < dim_; ++i)
        if (!is_fixed[static_cast<std::size_t>(i)]) free.push_back(i);
    const int nd = static_cast<int>(free.size());
    if (is_empty()) return empty(nd);
    auto sub = [&](const Halfspace& h) {
        Rat off = h.offset;
        for (std::size_t k = 0; k < fixed.size(); ++k) off -= h.normal[static_cast<std::size_t>(fixed[k])] * values[k];
        return Halfspace{select(h.normal, free), off};
    };
    std::vector<Halfspace> in, eq;
    for (const Halfspace& h : ineqs_) in.push_back(sub(h));
    for (const Halfspace& h : eqs_) eq.push_back(sub(h));
    return Polyhedron(nd, std::move(in), std::move(eq));
}

Polyhedron Polyhedron::minkowski_sum(const Polyhedron& other) const {
    if (other.dim_ != dim_) throw DimensionError("minkowski_sum: dimension mismatch");
    if (is_empty() || other.is_empty()) return empty(dim_);
    Matrix p, r = rays_, l = lines_;
    for (const Vec& a : verts_)
        for (const Vec& b : other.verts_) p.push_back(add(a, b));
    r.insert(r.end(), other.rays_.begin(), other.rays_.end());
    l.insert(l.end(), other.lines_.begin(), other.lines_.end());
    return from_generators(dim_, p, r, l);
}

Polyhedron Polyhedron::polar() const {
    if (!is_cone()) throw GeometryError("polar: polyhedron is not a cone");
    Matrix r, l;
    for (const Halfspace& h : ineqs_) r.push_back(h.normal);
    for (const Halfspace& h : eqs_) l.push_back(h.normal);
    return cone(dim_, r, l);
}

Polyhedron Polyhedron::tangent_cone(const Vec& at) const {
    if (!contains(at)) throw GeometryError("tangent_cone: point is not in the polyhedron");
    std::vector<Halfspace> in, eq;
    for (int i : active_at(at)) in.push_back(Halfspace{ineqs_[static_cast<std::size_t>(i)].normal, Rat(0)});
    for (const Halfspace& h : eqs_) eq.push_back(Halfspace{h.normal, Rat(0)});
    return Polyhedron(dim_, std::move(in), std::move(eq));
}

namespace {

// Orthogonal projection of z onto {y : A y = b}; nullopt when the rows are
// dependent (the same affine set is reached by a smaller subset).
std::optional<Vec> project_affine(const Vec& z, const Matrix& a, const Vec& b, int dim) {
    if (a.empty()) return z;
    if (rank(a, dim) < static_cast<int>(a.size())) return std::nullopt;
    const std::size_t k = a.size();
    Matrix gram(k, zeros(k));
    Vec rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(a[i], a[j]);
        rhs[i] = dot(a[i], z) - b[i];
    }
    std::optional<Vec> lam = solve(gram, rhs, static_cast<int>(k));
    if (!lam) return std::nullopt;
    Vec y = z;
    for (std::size_t i = 0; i < k; ++i) y = axpy(y, -(*lam)[i], a[i]);
    return y;
}

}  // namespace

Vec Polyhedron::nearest_point(const Vec& z) const {
    if (is_empty()) throw GeometryError("nearest_point: empty polyhedron");
    if (contains(z)) return z;
    Matrix base;
    Vec base_b;
    for (const Halfspace& h : eqs_) {
        base.push_back(h.normal);
        base_b.push_back(h.offset);
    }
    const int budget = dim_ - static_cast<int>(eqs_.size());
    std::optional<Vec> best;
    Rat best_d;
    std::vector<int> chosen;
    // Enumerate subsets of facets to be made tight; the true projection lies
    // in the relative interior of some face.
    auto visit = [&](auto&& self, std::size_t start) -> void {
        Matrix a = base;
        Vec b = base_b;
        for (int c : chosen) {
            a.push_back(ineqs_[static_cast<std::size_t>(c)].normal);
            b.push_back(ineqs_[static_cast<std::size_t>(c)].offset);
        }
        if (auto y = project_affine(z, a, b, dim_)) {
            if (contains(*y)) {
                Rat d = norm2(sub(*y, z));
                if (!best || d < best_d) {
                    best = *y;
                    best_d = d;
                }
            }
        } else if (!chosen.empty()) {
            return;
        }
        if (static_cast<int>(chosen.size()) >= budget) return;
        for (std::size_t i = start; i < ineqs_.size(); ++i) {
            chosen.push_back(static_cast<int>(i));
            self(self, i + 1);
            chosen.pop_back();
        }
    };
    visit(visit, 0);
    if (!best) throw GeometryError("nearest_point: no face projection found");
    return *best;
}

Rat Polyhedron::distance2(const Vec& z) const { return norm2(sub(nearest_point(z), z)); }

std::optional<Rat> minimize(const Polyhedron& p, const Vec& c) {
    if (p.is_empty()) throw GeometryError("minimize: empty polyhedron");
    for (const Vec& r : p.rays())
        if (sgn(dot(c, r)) < 0) return std::nullopt;
    for (const Vec& l : p.lines())
        if (sgn(dot(c, l)) != 0) return std::nullopt;
    std::optional<Rat> best;
    for (const Vec& v : p.vertices()) {
        Rat val = dot(c, v);
        if (!best || val < *best) best = val;
    }
    return best;
}

std::string Polyhedron::serialize(bool with_generators) const {
    std::string s = "piece\n";
    for (const Halfspace& h : eqs_) {
        s += "eq";
        for (const Rat& c : h.normal) s += " " + to_string(c);
        s += " " + to_string(h.offset) + "\n";
    }
    for (const Halfspace& h : ineqs_) {
        s += "ineq";
        for (const Rat& c : h.normal) s += " " + to_string(c);
        s += " " + to_string(h.offset) + "\n";
    }
    if (with_generators) {
        for (const Vec& r : rays_) s += "gen " + to_string(r) + "\n";
        for (const Vec& l : lines_) s += "lin " + to_string(l) + "\n";
    }
    s += "end\n";
    return s;
}

}  // namespace setvar
