#include "setvar/limits.hpp"

#include <algorithm>
#include <random>

namespace setvar {

namespace {

// index j with t in [j dt, (j+1) dt], and whether t is a breakpoint
std::pair<int, bool> locate(const InterpolatedPath& p, const Rat& t) {
    if (t < 0 || t > p.T) throw GeometryError("time outside [0, T]");
    Rat q = t / p.dt;
    mpz_class j = q.get_num() / q.get_den();
    bool breakpoint = q.get_den() == 1;
    int idx = static_cast<int>(j.get_si());
    const int last = static_cast<int>(p.states.size()) - 2;
    if (idx > last) idx = last;
    return {idx, breakpoint};
}

}  // namespace

Vec InterpolatedPath::value(const Rat& t) const {
    auto [j, at_break] = locate(*this, t);
    (void)at_break;
    const Vec& a = states[static_cast<std::size_t>(j)];
    const Vec& b = states[static_cast<std::size_t>(j + 1)];
    Rat w = (t - j * dt) / dt;
    return add(scale(b, w), scale(a, 1 - w));
}

Vec InterpolatedPath::derivative(const Rat& t) const {
    auto [j, at_break] = locate(*this, t);
    if (at_break) throw GeometryError("derivative is undefined at a breakpoint");
    return scale(sub(states[static_cast<std::size_t>(j + 1)], states[static_cast<std::size_t>(j)]), 1 / dt);
}

InterpolatedPath interpolate(const Path& states, const Rat& T) {
    if (states.size() < 2) throw GeometryError("interpolate: a path needs at least two states");
    if (sgn(T) <= 0) throw GeometryError("interpolate: horizon must be positive");
    InterpolatedPath p;
    p.T = T;
    p.dt = T / static_cast<long>(states.size() - 1);
    p.dt.canonicalize();
    p.states = states;
    return p;
}

ConvergenceTable hausdorff_convergence(const DiscreteInclusion& di, const std::vector<int>& Ns, const Vec& x0,
                                       const std::optional<PolyUnion>& reference, std::size_t budget) {
    if (Ns.empty()) throw GeometryError("convergence table needs at least one N");
    ConvergenceTable table;
    for (int N : Ns) {
        ConvergenceRow row;
        row.N = N;
        row.reach = reachable(di.with_steps(N), x0, budget);
        if (!row.reach.is_bounded()) throw GeometryError("unbounded set");
        table.rows.push_back(std::move(row));
    }
    if (reference) {
        table.reference = *reference;
    } else {
        table.proxy = true;
        auto largest = std::max_element(table.rows.begin(), table.rows.end(),
                                        [](const ConvergenceRow& a, const ConvergenceRow& b) { return a.N < b.N; });
        table.reference = largest->reach;
    }
    for (ConvergenceRow& row : table.rows) row.distance = hausdorff(table.reference, row.reach);
    for (std::size_t i = 1; i < table.rows.size(); ++i)
        if (!(table.rows[i].distance.value < table.rows[i - 1].distance.value)) table.strictly_decreasing = false;
    return table;
}

PiStability pi_stability(const DiscreteInclusion& di, const Vec& xbar, const Vec& ybar, const Vec& v,
                         const std::vector<int>& Ns, const std::vector<Rat>& deltas, int samples, std::uint64_t seed,
                         std::size_t budget) {
    if (Ns.empty() || deltas.empty()) throw GeometryError("pi_stability needs N and delta values");
    const int n = di.n;
    std::vector<int> sorted = Ns;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    // perturbation offsets per delta, shared by every N; coordinates in [-1/n, 1/n]
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::pair<Vec, Vec>>> offsets;
    for (std::size_t d = 0; d < deltas.size(); ++d) {
        std::vector<std::pair<Vec, Vec>> list{{zeros(static_cast<std::size_t>(n)), zeros(static_cast<std::size_t>(n))}};
        for (int s = 0; s < samples; ++s) {
            Vec a, b;
            for (int i = 0; i < n; ++i) {
                a.push_back(ratio(std::uniform_int_distribution<int>(-8, 8)(rng), 8 * n));
                b.push_back(ratio(std::uniform_int_distribution<int>(-8, 8)(rng), 8 * n));
            }
            list.emplace_back(scale(a, deltas[d]), scale(b, deltas[d]));
        }
        offsets.push_back(std::move(list));
    }

    struct Slot {
        PolyUnion set;
        Rat snap2;
        bool exhaustive = true;
    };
    // slots[i][d]: Π_{N_i} united over the perturbed endpoints of delta d
    std::vector<std::vector<Slot>> slots;
    PiStability out;
    for (int N : sorted) {
        DiscreteInclusion dn = di.with_steps(N);
        std::vector<Slot> row;
        for (std::size_t d = 0; d < deltas.size(); ++d) {
            Slot slot{PolyUnion(n), Rat(0), true};
            for (const auto& [dx, dy] : offsets[d]) {
                Vec x = add(xbar, dx);
                PolyUnion reach = reachable(dn, x, budget);
                if (reach.is_empty()) throw GeometryError("infeasible endpoint after snap");
                Vec target = add(ybar, dy);
                Vec y = reach.nearest_point(target);
                slot.snap2 = std::max(slot.snap2, norm2(sub(y, target)));
                PiResult pi = adjoint_reachable_pi(dn, x, y, v, budget);
                if (!pi.exhaustive) slot.exhaustive = false;
                slot.set = slot.set.unite(pi.set);
                if (d == 0 && is_zero(dx) && is_zero(dy) && N == sorted.back()) out.largest = pi.set;
            }
            row.push_back(std::move(slot));
        }
        slots.push_back(std::move(row));
    }

    std::optional<Polyhedron> meet;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t d = 0; d < deltas.size(); ++d) {
            PolyUnion tail(n);
            PiCell cell;
            cell.N = sorted[i];
            cell.delta = deltas[d];
            cell.endpoints = static_cast<int>(offsets[d].size());
            for (std::size_t j = i; j < sorted.size(); ++j) {
                tail = tail.unite(slots[j][d].set);
                cell.max_snap2 = std::max(cell.max_snap2, slots[j][d].snap2);
                if (!slots[j][d].exhaustive) cell.exhaustive = false;
            }
            cell.hull = tail.hull();
            if (cell.hull.dim() != n) cell.hull = Polyhedron::empty(n);
            meet = meet ? meet->intersect(cell.hull) : cell.hull;
            out.cells.push_back(std::move(cell));
        }
    }
    out.intersection = *meet;
    Polyhedron largest_hull = out.largest.is_empty() ? Polyhedron::empty(n) : out.largest.hull();
    out.matches = out.intersection == largest_hull;
    return out;
}

NestedHullReport nested_hull_check(const std::vector<PolyUnion>& sets, bool require_nested) {
    if (sets.empty()) throw GeometryError("nested_hull_check needs at least one set");
    for (const PolyUnion& s : sets)
        if (!s.is_bounded()) throw GeometryError("unbounded set");
    NestedHullReport r;
    for (std::size_t i = 1; i < sets.size(); ++i)
        if (!sets[i - 1].includes(sets[i])) r.nested = false;
    if (require_nested && !r.nested) throw GeometryError("sequence is not nested");
    PolyUnion meet = sets.front();
    Polyhedron hulls = sets.front().hull();
    for (std::size_t i = 1; i < sets.size(); ++i) {
        meet = meet.intersect(sets[i]);
        hulls = hulls.intersect(sets[i].hull());
    }
    const int d = sets.front().dim();
    r.hull_of_intersection = meet.is_empty() ? Polyhedron::empty(d) : meet.hull();
    r.intersection_of_hulls = hulls;
    r.equal = r.hull_of_intersection == r.intersection_of_hulls;
    return r;
}

}  // namespace setvar
