#include "setvar/dd.hpp"

#include <boost/dynamic_bitset.hpp>

namespace setvar {

namespace {

using Bits = boost::dynamic_bitset<>;

struct Ray {
    Vec v;
    Bits zero;  // processed constraints tight at v
};

}  // namespace

ConeGenerators cone_generators(int d, const Matrix& ineqs, const Matrix& eqs) {
    const std::size_t m = ineqs.size();
    Matrix lines = null_space(eqs, d);
    std::vector<Ray> rays;

    for (std::size_t k = 0; k < m; ++k) {
        const Vec& a = ineqs[k];
        if (static_cast<int>(a.size()) != d) throw DimensionError("cone_generators: constraint length mismatch");
        if (is_zero(a)) {
            for (Ray& r : rays) r.zero.set(k);
            continue;
        }

        // A line not orthogonal to a: it turns into a ray, the rest of the
        // generators are shifted along it onto the hyperplane.
        std::size_t pivot = lines.size();
        Rat pivot_val;
        for (std::size_t i = 0; i < lines.size(); ++i) {
            Rat s = dot(a, lines[i]);
            if (sgn(s) != 0) {
                pivot = i;
                pivot_val = s;
                break;
            }
        }
        if (pivot != lines.size()) {
            Vec l0 = lines[pivot];
            Matrix rest;
            for (std::size_t i = 0; i < lines.size(); ++i) {
                if (i == pivot) continue;
                Rat s = dot(a, lines[i]);
                rest.push_back(primitive(axpy(lines[i], -s / pivot_val, l0)));
            }
            for (Ray& r : rays) {
                Rat s = dot(a, r.v);
                if (sgn(s) != 0) r.v = primitive(axpy(r.v, -s / pivot_val, l0));
                r.zero.set(k);
            }
            Ray fresh{sgn(pivot_val) > 0 ? neg(l0) : l0, Bits(m)};
            for (std::size_t j = 0; j < k; ++j) fresh.zero.set(j);
            fresh.v = primitive(fresh.v);
            rays.push_back(std::move(fresh));
            lines = std::move(rest);
            continue;
        }

        std::vector<Rat> vals(rays.size());
        std::vector<std::size_t> pos, negs;
        std::vector<Ray> next;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            vals[i] = dot(a, rays[i].v);
            int s = sgn(vals[i]);
            if (s > 0) pos.push_back(i);
            else if (s < 0) negs.push_back(i);
        }
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (sgn(vals[i]) > 0) continue;
            Ray r = rays[i];
            if (sgn(vals[i]) == 0) r.zero.set(k);
            next.push_back(std::move(r));
        }
        for (std::size_t p : pos) {
            for (std::size_t q : negs) {
                Bits common = rays[p].zero & rays[q].zero;
                bool adjacent = true;
                for (std::size_t t = 0; t < rays.size() && adjacent; ++t) {
                    if (t == p || t == q) continue;
                    if (common.is_subset_of(rays[t].zero)) adjacent = false;
                }
                if (!adjacent) continue;
                // vals[p] > 0 > vals[q]; both weights positive
                Vec v = axpy(scale(rays[q].v, vals[p]), -vals[q], rays[p].v);
                Ray r{primitive(v), common};
                r.zero.set(k);
                next.push_back(std::move(r));
            }
        }
        rays = std::move(next);
    }

    ConeGenerators out;
    out.lines = std::move(lines);
    for (Ray& r : rays) out.rays.push_back(std::move(r.v));
    return out;
}

ConeGenerators cone_facets(int d, const Matrix& rays, const Matrix& lines) {
    return cone_generators(d, rays, lines);
}

}  // namespace setvar
