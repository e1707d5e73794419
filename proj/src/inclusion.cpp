#include "setvar/inclusion.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace setvar {

namespace {

void check_budget(const PolyUnion& u, std::size_t budget) {
    if (u.size() > budget) throw GeometryError("piece budget exceeded");
}

Vec point_of(const Polyhedron& p) {
    if (!p.vertices().empty()) return p.vertices().front();
    return p.relative_interior_point();
}

void add_unique(std::vector<Vec>& pts, const Vec& v) {
    if (std::find(pts.begin(), pts.end(), v) == pts.end()) pts.push_back(v);
}

std::vector<Vec> vertex_candidates(const PolyUnion& u) {
    std::vector<Vec> out;
    for (const Polyhedron& p : u.pieces())
        for (const Vec& v : p.vertices()) add_unique(out, v);
    return out;
}

bool single_point(const PolyUnion& u) {
    return u.size() == 1 && u.pieces().front().is_bounded() && u.pieces().front().vertices().size() == 1;
}

SetMap step_coderivative(const DiscreteInclusion& di, const Path& path, int k) {
    return coderivative(di.step(k), path[static_cast<std::size_t>(k)], path[static_cast<std::size_t>(k + 1)],
                        CoderivKind::limiting)
        .as_map();
}

void check_path(const DiscreteInclusion& di, const Path& path) {
    if (!is_feasible(di, path)) throw GeometryError("path is not feasible");
}

}  // namespace

DiscreteInclusion DiscreteInclusion::make(int n, const Rat& T, int N, std::vector<SetMap> dynamics) {
    if (N < 1) throw GeometryError("discrete inclusion: step count must be positive");
    if (sgn(T) <= 0) throw GeometryError("discrete inclusion: horizon must be positive");
    if (dynamics.size() != 1 && dynamics.size() != static_cast<std::size_t>(N))
        throw GeometryError("discrete inclusion: need one map or one map per step");
    for (const SetMap& f : dynamics)
        if (f.n != n || f.m != n) throw DimensionError("discrete inclusion: dynamics must map R^n to R^n");
    DiscreteInclusion di;
    di.n = n;
    di.T = T;
    di.N = N;
    di.dt = T / N;
    di.dt.canonicalize();
    di.dynamics = std::move(dynamics);
    return di;
}

const SetMap& DiscreteInclusion::F(int k) const {
    if (k < 0 || k >= N) throw GeometryError("discrete inclusion: step index out of range");
    return time_invariant() ? dynamics.front() : dynamics[static_cast<std::size_t>(k)];
}

SetMap DiscreteInclusion::step(int k) const { return step_map(F(k), dt); }

DiscreteInclusion DiscreteInclusion::with_steps(int steps) const {
    if (!time_invariant()) throw GeometryError("step count can only change for time-invariant dynamics");
    return make(n, T, steps, dynamics);
}

DiscreteInclusion inclusion_from(const Document& doc, std::optional<int> steps) {
    if (!doc.scenario) throw ParseError("document has no scenario block");
    const ScenarioSpec& s = *doc.scenario;
    if (!s.const_map.empty()) return DiscreteInclusion::make(s.n, s.horizon, steps.value_or(s.steps), {doc.map_named(s.const_map)});
    if (steps && *steps != s.steps) throw ParseError("scenario with per-step dynamics has a fixed step count");
    std::vector<SetMap> maps;
    for (int k = 0; k < s.steps; ++k) {
        auto it = s.step_maps.find(k);
        if (it == s.step_maps.end()) throw ParseError("scenario has no dynamics for step " + std::to_string(k));
        maps.push_back(doc.map_named(it->second));
    }
    return DiscreteInclusion::make(s.n, s.horizon, s.steps, std::move(maps));
}

Vec velocity(const DiscreteInclusion& di, const Path& path, int k) {
    return scale(sub(path[static_cast<std::size_t>(k + 1)], path[static_cast<std::size_t>(k)]), 1 / di.dt);
}

bool is_feasible(const DiscreteInclusion& di, const Path& path) {
    if (path.size() != static_cast<std::size_t>(di.N + 1)) return false;
    for (const Vec& x : path)
        if (static_cast<int>(x.size()) != di.n) return false;
    for (int k = 0; k < di.N; ++k)
        if (!di.F(k).graph.contains(concat(path[static_cast<std::size_t>(k)], velocity(di, path, k)))) return false;
    return true;
}

PolyUnion reachable(const DiscreteInclusion& di, const Vec& x0, std::size_t budget) {
    if (static_cast<int>(x0.size()) != di.n) throw DimensionError("reachable: initial state dimension mismatch");
    PolyUnion u(Polyhedron::point(x0));
    for (int k = 0; k < di.N; ++k) {
        u = image(di.step(k), u);
        check_budget(u, budget);
    }
    return u;
}

SetMap reachable_graph(const DiscreteInclusion& di, std::size_t budget) {
    SetMap g = di.step(0);
    for (int k = 1; k < di.N; ++k) {
        g = compose(di.step(k), g);
        check_budget(g.graph, budget);
    }
    return g;
}

SetMap reachable_graph_rightfold(const DiscreteInclusion& di, std::size_t budget) {
    SetMap g = di.step(di.N - 1);
    for (int k = di.N - 2; k >= 0; --k) {
        g = compose(g, di.step(k));
        check_budget(g.graph, budget);
    }
    return g;
}

std::string to_string(PathMode m) {
    switch (m) {
    case PathMode::finite: return "finite";
    case PathMode::vertex: return "vertex";
    case PathMode::sampled: return "sampled";
    }
    return "?";
}

PathMode parse_path_mode(const std::string& s) {
    if (s == "finite") return PathMode::finite;
    if (s == "vertex") return PathMode::vertex;
    if (s == "sampled") return PathMode::sampled;
    throw ParseError("unknown path mode '" + s + "'");
}

PathSet enumerate_paths(const DiscreteInclusion& di, const Vec& x0, const Vec& xN, PathMode mode, std::size_t max_paths,
                        std::uint64_t seed, std::size_t budget) {
    const int N = di.N;
    std::vector<SetMap> steps;
    for (int k = 0; k < N; ++k) steps.push_back(di.step(k));
    // back[k]: states at step k from which xN is reachable
    std::vector<PolyUnion> back(static_cast<std::size_t>(N + 1), PolyUnion(di.n));
    back[static_cast<std::size_t>(N)] = PolyUnion(Polyhedron::point(xN));
    for (int k = N - 1; k >= 0; --k) {
        back[static_cast<std::size_t>(k)] = image(inverse(steps[static_cast<std::size_t>(k)]), back[static_cast<std::size_t>(k + 1)]);
        check_budget(back[static_cast<std::size_t>(k)], budget);
    }
    PathSet out;
    if (!back.front().contains(x0)) {
        out.exhaustive = true;
        return out;
    }
    auto next = [&](int k, const Vec& x) {
        return eval(steps[static_cast<std::size_t>(k)], x).intersect(back[static_cast<std::size_t>(k + 1)]);
    };
    auto add_path = [&](const Path& p) {
        if (std::find(out.paths.begin(), out.paths.end(), p) == out.paths.end()) out.paths.push_back(p);
    };

    if (mode == PathMode::finite) {
        Path cur{x0};
        std::function<void(int)> dfs = [&](int k) {
            if (k == N) {
                add_path(cur);
                if (out.paths.size() > budget) throw GeometryError("piece budget exceeded");
                return;
            }
            PolyUnion all = eval(steps[static_cast<std::size_t>(k)], cur.back());
            for (const Polyhedron& p : all.pieces())
                if (!p.is_bounded() || p.vertices().size() != 1)
                    throw GeometryError("finite path enumeration needs finitely many velocities");
            for (const Vec& y : vertex_candidates(next(k, cur.back()))) {
                cur.push_back(y);
                dfs(k + 1);
                cur.pop_back();
            }
        };
        dfs(0);
        out.exhaustive = true;
        return out;
    }

    bool forced = true;
    if (mode == PathMode::vertex) {
        Path cur{x0};
        std::function<void(int)> dfs = [&](int k) {
            if (out.paths.size() >= max_paths) return;
            if (k == N) {
                add_path(cur);
                return;
            }
            PolyUnion cand = next(k, cur.back());
            if (!single_point(cand)) forced = false;
            for (const Vec& y : vertex_candidates(cand)) {
                cur.push_back(y);
                dfs(k + 1);
                cur.pop_back();
            }
        };
        dfs(0);
        Path interior{x0};
        for (int k = 0; k < N; ++k) {
            PolyUnion cand = next(k, interior.back());
            interior.push_back(cand.pieces().front().relative_interior_point());
        }
        add_path(interior);
        out.exhaustive = forced;
        return out;
    }

    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < max_paths; ++s) {
        Path cur{x0};
        for (int k = 0; k < N; ++k) {
            PolyUnion cand = next(k, cur.back());
            if (!single_point(cand)) forced = false;
            const Polyhedron& piece =
                cand.pieces()[std::uniform_int_distribution<std::size_t>(0, cand.size() - 1)(rng)];
            const Matrix& verts = piece.vertices();
            Vec y = zeros(static_cast<std::size_t>(di.n));
            Rat total = 0;
            for (const Vec& v : verts) {
                Rat w = static_cast<long>(std::uniform_int_distribution<int>(0, 16)(rng));
                y = axpy(y, w, v);
                total += w;
            }
            if (sgn(total) == 0) y = verts.front();
            else y = scale(y, 1 / total);
            cur.push_back(y);
        }
        add_path(cur);
    }
    out.exhaustive = forced;
    return out;
}

PathSet enumerate_paths_auto(const DiscreteInclusion& di, const Vec& x0, const Vec& xN, std::size_t budget) {
    try {
        return enumerate_paths(di, x0, xN, PathMode::finite, 256, 1, budget);
    } catch (const GeometryError& e) {
        if (std::string(e.what()) == "piece budget exceeded") throw;
        return enumerate_paths(di, x0, xN, PathMode::vertex, 256, 1, budget);
    }
}

SetMap path_coderivative(const DiscreteInclusion& di, const Path& path) {
    check_path(di, path);
    SetMap h = identity_map(di.n);
    for (int k = di.N - 1; k >= 0; --k) h = compose(step_coderivative(di, path, k), h);
    return h;
}

PathCones coderiv_reachable(const DiscreteInclusion& di, const PathSet& paths) {
    PathCones out;
    out.exhaustive = paths.exhaustive;
    PolyUnion all(2 * di.n);
    for (const Path& p : paths.paths) {
        out.per_path.push_back(path_coderivative(di, p));
        all = all.unite(out.per_path.back().graph);
    }
    out.cone = SetMap(di.n, di.n, all);
    return out;
}

SetMap direct_coderiv_reachable(const DiscreteInclusion& di, const Vec& x0, const Vec& xN, std::size_t budget) {
    return coderivative(reachable_graph(di, budget), x0, xN, CoderivKind::limiting).as_map();
}

AdjointTube adjoint_propagate(const DiscreteInclusion& di, const Path& path, const Vec& pN) {
    check_path(di, path);
    AdjointTube tube;
    tube.sets.assign(static_cast<std::size_t>(di.N + 1), PolyUnion(di.n));
    tube.sets.back() = PolyUnion(Polyhedron::point(pN));
    for (int k = di.N - 1; k >= 0; --k)
        tube.sets[static_cast<std::size_t>(k)] = image(step_coderivative(di, path, k), tube.sets[static_cast<std::size_t>(k + 1)]);
    return tube;
}

Certificate certify_path(const DiscreteInclusion& di, const Path& path, const MinMaxAffine& phi) {
    check_path(di, path);
    const int n = di.n;
    if (phi.dim != 2 * n) throw DimensionError("certify_path: objective must live on R^n x R^n");
    Certificate c;
    c.path = path;
    // (x*, y*) ↦ (p_0, p_N) = (-x*, y*)
    Matrix flip = identity(2 * n);
    for (int i = 0; i < n; ++i) flip[static_cast<std::size_t>(i)] = neg(flip[static_cast<std::size_t>(i)]);
    PolyUnion transversal = subdifferential(phi, concat(path.front(), path.back())).limiting.linear_image(flip, 2 * n);
    PolyUnion relation = inverse(path_coderivative(di, path)).graph;  // (p_0, p_N)
    PolyUnion both = transversal.intersect(relation);
    if (both.is_empty()) {
        c.reason = "no costate path satisfies the transversality condition";
        return c;
    }
    Vec pair = point_of(both.pieces().front());
    Vec p0(pair.begin(), pair.begin() + n), pN(pair.begin() + n, pair.end());
    AdjointTube tube = adjoint_propagate(di, path, pN);
    c.costates.push_back(p0);
    for (int k = 1; k <= di.N; ++k) {
        SetMap d = step_coderivative(di, path, k - 1);
        PolyUnion cand = tube.sets[static_cast<std::size_t>(k)].intersect(
            image(inverse(d), PolyUnion(Polyhedron::point(c.costates.back()))));
        if (cand.is_empty()) throw GeometryError("certify_path: costate reconstruction failed");
        c.costates.push_back(point_of(cand.pieces().front()));
    }
    c.transversality = concat(neg(p0), pN);
    c.found = true;
    return c;
}

bool verify_certificate(const DiscreteInclusion& di, const Certificate& c, const MinMaxAffine& phi) {
    if (!c.found || !is_feasible(di, c.path) || c.costates.size() != c.path.size()) return false;
    for (int k = 1; k <= di.N; ++k) {
        const Vec& prev = c.costates[static_cast<std::size_t>(k - 1)];
        const Vec& cur = c.costates[static_cast<std::size_t>(k)];
        CoderivAtPoint d = coderivative(di.F(k - 1), c.path[static_cast<std::size_t>(k - 1)], velocity(di, c.path, k - 1),
                                        CoderivKind::limiting);
        if (!coderiv_apply(d, cur).contains(scale(sub(prev, cur), 1 / di.dt))) return false;
    }
    Vec pair = concat(neg(c.costates.front()), c.costates.back());
    return subdifferential(phi, concat(c.path.front(), c.path.back())).limiting.contains(pair);
}

InclusionSubdiff subdiff_upper(const DiscreteInclusion& di, const MinMaxAffine& phi, const Vec& x0, std::size_t budget) {
    SetMap g = reachable_graph(di, budget);
    MarginalEstimate me = marginal_subdiff(phi, g, x0, MarginalMode::limiting);
    InclusionSubdiff out;
    out.estimate = PolyUnion(di.n);
    out.value = me.value;
    out.argmin = me.argmin;
    out.endpoints = me.ybars;
    for (const Vec& y : me.ybars) {
        PathSet ps = enumerate_paths_auto(di, x0, y, budget);
        if (!ps.exhaustive) out.exhaustive = false;
        PathCones cones = coderiv_reachable(di, ps);
        SubdiffTriple sd = subdifferential(phi, concat(x0, y));
        out.estimate = out.estimate.unite(shifted_image(sd.limiting, cones.cone));
    }
    bool convex_graphs = std::all_of(di.dynamics.begin(), di.dynamics.end(),
                                     [](const SetMap& f) { return f.graph.is_convex(); });
    out.exact = convex_graphs && phi.is_convex();
    return out;
}

PiResult adjoint_reachable_pi(const DiscreteInclusion& di, const Vec& x, const Vec& y, const Vec& v, std::size_t budget) {
    PathSet ps = enumerate_paths_auto(di, x, y, budget);
    PiResult out;
    out.set = PolyUnion(di.n);
    out.exhaustive = ps.exhaustive;
    out.paths = ps.paths.size();
    for (const Path& p : ps.paths) out.set = out.set.unite(adjoint_propagate(di, p, v).initial());
    return out;
}

}  // namespace setvar
