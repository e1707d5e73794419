#include "setvar/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

namespace setvar {

namespace {

using DVec = std::vector<double>;

DVec to_doubles(const Vec& v) {
    DVec out;
    for (const Rat& r : v) out.push_back(to_double(r));
    return out;
}

double ddot(const DVec& a, const DVec& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::string show(const DVec& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ")";
    return os.str();
}

// offsets x - b for the vertices of U ∩ box(b, r)
std::vector<DVec> local_cloud(const PolyUnion& u, const Vec& b, const Rat& r) {
    Vec lo, hi;
    for (const Rat& c : b) {
        lo.push_back(c - r);
        hi.push_back(c + r);
    }
    Polyhedron box = Polyhedron::box(lo, hi);
    std::vector<DVec> out;
    for (const Polyhedron& p : u.pieces()) {
        Polyhedron q = p.intersect(box);
        for (const Vec& v : q.vertices()) out.push_back(to_doubles(sub(v, b)));
    }
    return out;
}

struct Basepoint {
    std::vector<std::vector<DVec>> clouds;  // one per radius
    std::vector<double> bounds;             // tau_j * r_j
};

Basepoint make_basepoint(const PolyUnion& u, const Vec& b, const std::vector<Rat>& radii, const Rat& scale_by, double tol) {
    Basepoint bp;
    double tau = tol;
    for (const Rat& r : radii) {
        Rat rr = r * scale_by;
        bp.clouds.push_back(local_cloud(u, b, rr));
        bp.bounds.push_back(tau * to_double(rr));
        tau /= 2;
    }
    return bp;
}

bool passes(const Basepoint& bp, const DVec& y) {
    for (std::size_t j = 0; j < bp.clouds.size(); ++j) {
        double mx = 0;
        for (const DVec& x : bp.clouds[j]) mx = std::max(mx, ddot(y, x));
        if (mx > bp.bounds[j]) return false;
    }
    return true;
}

Vec max_abs_normalized(const Vec& g) {
    Rat m = 0;
    for (const Rat& c : g) m = std::max(m, Rat(abs(c)));
    return sgn(m) == 0 ? g : scale(g, 1 / m);
}

// directions from xbar into faces of U through xbar
std::vector<Vec> face_directions(const PolyUnion& u, const Vec& xbar) {
    std::vector<Polyhedron> local;
    for (const Polyhedron& p : u.pieces())
        if (p.contains(xbar)) local.push_back(p);
    std::vector<Polyhedron> cones;
    for (std::size_t i = 0; i < local.size(); ++i) {
        cones.push_back(local[i].tangent_cone(xbar));
        for (std::size_t j = i + 1; j < local.size(); ++j) cones.push_back(local[i].intersect(local[j]).tangent_cone(xbar));
    }
    std::vector<Vec> dirs;
    auto push = [&](const Vec& g) {
        if (is_zero(g)) return;
        Vec d = max_abs_normalized(g);
        if (std::find(dirs.begin(), dirs.end(), d) == dirs.end()) dirs.push_back(d);
    };
    for (const Polyhedron& t : cones) {
        Matrix gens = t.rays();
        for (const Vec& l : t.lines()) {
            gens.push_back(l);
            gens.push_back(neg(l));
        }
        for (std::size_t i = 0; i < gens.size(); ++i) {
            push(gens[i]);
            for (std::size_t j = i + 1; j < gens.size(); ++j) push(add(gens[i], gens[j]));
        }
        push(t.relative_interior_point());
    }
    return dirs;
}

struct LexLess {
    bool operator()(const Vec& a, const Vec& b) const { return lex_less(a, b); }
};

}  // namespace

SampleReport sample_normals(const PolyUnion& u, const Vec& xbar, CoderivKind kind, std::vector<Rat> radii, int samples,
                            double tol, std::uint64_t seed) {
    if (kind == CoderivKind::convexified) throw GeometryError("sample_normals: kind must be regular or limiting");
    if (!u.contains(xbar)) throw GeometryError("point is not in the set");
    if (radii.empty()) radii = {Rat(1, 8), Rat(1, 32), Rat(1, 128)};
    const int d = u.dim();
    SampleReport rep;
    rep.radii = radii;
    rep.seed = seed;

    VCone exact = kind == CoderivKind::regular ? regular_normal_cone(u, xbar) : limiting_normal_cone(u, xbar);
    std::vector<Basepoint> bases{make_basepoint(u, xbar, radii, Rat(1), tol)};
    if (kind == CoderivKind::limiting) {
        for (const Rat& s : {Rat(1, 16), Rat(1, 32)})
            for (const Vec& g : face_directions(u, xbar)) {
                Vec b = axpy(xbar, s, g);
                if (u.contains(b)) bases.push_back(make_basepoint(u, b, radii, s, tol));
            }
    }
    auto oracle_normal = [&](const DVec& y) {
        return std::any_of(bases.begin(), bases.end(), [&](const Basepoint& bp) { return passes(bp, y); });
    };

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    const double max_sin = std::sin(tol);
    for (int s = 0; s < samples; ++s) {
        DVec y(static_cast<std::size_t>(d));
        double norm = 0;
        for (double& c : y) {
            c = gauss(rng);
            norm += c * c;
        }
        norm = std::sqrt(norm);
        if (norm == 0) continue;
        for (double& c : y) c /= norm;
        Vec yq;
        for (double c : y) yq.emplace_back(c);
        bool inside = exact.as_union().contains(yq);
        double dist = std::sqrt(to_double(exact.as_union().distance2(yq)));
        bool accepted = oracle_normal(y);
        ++rep.tested;
        if (accepted && dist > max_sin)
            rep.disagreements.push_back("accepted " + show(y) + " at distance " + std::to_string(dist) + " from the cone");
        else if (!accepted && inside)
            rep.disagreements.push_back("rejected " + show(y) + " which lies in the cone");
        else
            ++rep.agreements;
    }

    for (const Polyhedron& p : exact.pieces()) {
        Matrix gens = p.rays();
        for (const Vec& l : p.lines()) {
            gens.push_back(l);
            gens.push_back(neg(l));
        }
        for (const Vec& g : gens) {
            DVec y = to_doubles(g);
            double n = std::sqrt(ddot(y, y));
            for (double& c : y) c /= n;
            ++rep.rays;
            if (oracle_normal(y)) ++rep.rays_recovered;
            else rep.disagreements.push_back("extreme direction " + show(y) + " not recovered");
        }
    }
    return rep;
}

GridCloud grid_reachable(const DiscreteInclusion& di, const Vec& x0, const Rat& grid_step, std::size_t cap) {
    if (di.n > 2) throw GeometryError("grid_reachable supports n <= 2");
    if (sgn(grid_step) <= 0) throw GeometryError("grid step must be positive");
    std::set<Vec, LexLess> cur;
    cur.insert(x0);
    GridCloud out;
    for (int k = 0; k < di.N; ++k) {
        SetMap m = di.step(k);
        std::set<Vec, LexLess> next;
        auto add_point = [&](const Vec& p) {
            next.insert(p);
            if (next.size() > cap) throw GeometryError("region explosion");
        };
        for (const Vec& x : cur) {
            PolyUnion values = eval(m, x);
            for (const Polyhedron& p : values.pieces()) {
                if (!p.is_bounded()) throw GeometryError("region explosion");
                for (const Vec& v : p.vertices()) add_point(v);
                Vec lo = p.vertices().front(), hi = lo;
                for (const Vec& v : p.vertices())
                    for (int i = 0; i < di.n; ++i) {
                        lo[static_cast<std::size_t>(i)] = std::min(lo[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i)]);
                        hi[static_cast<std::size_t>(i)] = std::max(hi[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i)]);
                    }
                std::vector<mpz_class> first, last;
                for (int i = 0; i < di.n; ++i) {
                    Rat a = lo[static_cast<std::size_t>(i)] / grid_step, b = hi[static_cast<std::size_t>(i)] / grid_step;
                    mpz_class f, l;
                    mpz_cdiv_q(f.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
                    mpz_fdiv_q(l.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
                    first.push_back(f);
                    last.push_back(l);
                }
                std::vector<mpz_class> idx = first;
                bool done = false;
                for (int i = 0; i < di.n; ++i)
                    if (first[static_cast<std::size_t>(i)] > last[static_cast<std::size_t>(i)]) done = true;
                while (!done) {
                    Vec pt;
                    for (const mpz_class& c : idx) pt.push_back(Rat(c) * grid_step);
                    if (p.contains(pt)) add_point(pt);
                    int i = 0;
                    for (; i < di.n; ++i) {
                        auto ui = static_cast<std::size_t>(i);
                        if (idx[ui] < last[ui]) {
                            ++idx[ui];
                            break;
                        }
                        idx[ui] = first[ui];
                    }
                    if (i == di.n) done = true;
                }
            }
        }
        cur = std::move(next);
        ++out.steps;
    }
    out.points.assign(cur.begin(), cur.end());
    return out;
}

SubdiffSample sample_subdiff(const MinMaxAffine& f, const Vec& xbar, int samples, const Rat& radius, double tol,
                             std::uint64_t seed) {
    const int d = f.dim;
    SubdiffSample out;
    out.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(-1000, 1000);
    for (int s = 0; s < samples; ++s) {
        Vec x = xbar;
        for (Rat& c : x) c += radius * ratio(coord(rng), 1000);
        ++out.tested;
        // f is differentiable at x when every active row of every active
        // group carries the same gradient (ties of identical rows included)
        std::vector<Rat> maxima;
        for (const auto& group : f.groups) {
            Rat mx = dot(group.front().coeffs, x) + group.front().constant;
            for (const AffineRow& r : group) mx = std::max(mx, Rat(dot(r.coeffs, x) + r.constant));
            maxima.push_back(mx);
        }
        Rat value = *std::min_element(maxima.begin(), maxima.end());
        const Vec* grad = nullptr;
        bool smooth = true;
        for (std::size_t g = 0; g < f.groups.size() && smooth; ++g) {
            if (maxima[g] != value) continue;
            for (const AffineRow& r : f.groups[g]) {
                if (dot(r.coeffs, x) + r.constant != value) continue;
                if (!grad) grad = &r.coeffs;
                else if (*grad != r.coeffs) smooth = false;
            }
        }
        if (!smooth || !grad) continue;
        if (std::find(out.gradients.begin(), out.gradients.end(), *grad) == out.gradients.end())
            out.gradients.push_back(*grad);
    }
    out.clarke = subdifferential(f, xbar).clarke;
    out.hull = out.gradients.empty() ? Polyhedron::empty(d) : Polyhedron::from_generators(d, out.gradients);
    out.inside = !out.hull.is_empty() && out.clarke.includes(out.hull);
    out.covers = !out.hull.is_empty();
    if (out.covers)
        for (const Vec& v : out.clarke.vertices())
            if (to_double(out.hull.distance2(v)) > tol * tol) out.covers = false;
    return out;
}

}  // namespace setvar
