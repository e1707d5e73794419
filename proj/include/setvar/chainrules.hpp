#pragma once

#include "setvar/varcones.hpp"

#include <optional>
#include <string>
#include <vector>

namespace setvar {

enum class Relation { equal, strict_subset, strict_superset, incomparable };
/// "=", "⊊", "⊋" or "≠"
std::string symbol(Relation r);
Relation compare(const PolyUnion& a, const PolyUnion& b);

/// D*F(ybar|zbar)(0) ∩ -D*G^{-1}(ybar|xbar)(0) = {0}; a nonzero common
/// direction is returned as witness on failure.
struct CqResult {
    bool ok = true;
    std::optional<Vec> witness;
};
CqResult check_cq(const SetMap& f, const SetMap& g, const Vec& ybar, const Vec& zbar, const Vec& xbar);

/// S(xbar, zbar) = G(xbar) ∩ F^{-1}(zbar).
PolyUnion intermediate_set(const SetMap& f, const SetMap& g, const Vec& xbar, const Vec& zbar);
/// One point per stratum of S(xbar, zbar); coderivatives of F and G are
/// constant along each stratum. Extra hyperplanes refine the strata.
std::vector<Vec> intermediate_points(const SetMap& f, const SetMap& g, const Vec& xbar, const Vec& zbar,
                                     const std::vector<Halfspace>& extra = {});

/// Which coderivatives enter the composed right-hand side for the
/// convexified kind: co D*G ∘ D*F, or co D*G ∘ co D*F.
enum class ChainVariant { co_outer, co_both };

/// Maps are coderivative graphs in (direction, value) coordinates.
struct ChainVerdict {
    SetMap lhs;
    SetMap rhs;
    Relation relation = Relation::equal;
    std::vector<Vec> ybars;
    std::vector<CqResult> cq;
    bool locally_bounded = true;
    /// CQ holds at every intermediate point and S is locally bounded
    bool certified = true;
};

/// D*(F∘G)(xbar|zbar) against the union over ybar of D*G(xbar|ybar) ∘
/// D*F(ybar|zbar). For the convexified kind both sides are valuewise hulls
/// and `variant` picks where the hull is applied on the right.
ChainVerdict chain_upper(const SetMap& f, const SetMap& g, const Vec& xbar, const Vec& zbar, CoderivKind kind,
                         ChainVariant variant = ChainVariant::co_outer);

/// Graph-convex F and G: D*(F∘G) = D*G ∘ D*F at any intermediate point.
struct ConvexChain {
    SetMap composed;
    std::vector<Vec> ybars;
    /// the composition is the same at every intermediate point
    bool independent = true;
    /// the composition equals the directly computed D*(F∘G)
    bool matches_direct = true;
    bool cq_ok = true;
};
ConvexChain chain_convex_exact(const SetMap& f, const SetMap& g, const Vec& xbar, const Vec& zbar);

enum class MarginalMode { limiting, clarke, convex };

/// Argmin of y ↦ phi(x, y) over a union of values.
struct Argmin {
    Rat value;
    PolyUnion set{0};
};
Argmin minimize_over(const MinMaxAffine& phi, const Vec& x, const PolyUnion& values);

/// Upper estimate of ∂f(xbar) for f(x) = min over y in G(x) of phi(x, y),
/// assembled from x* + D*G(xbar|ybar)(y*) over (x*, y*) in ∂phi(xbar, ybar)
/// and ybar in the argmin set.
struct MarginalEstimate {
    PolyUnion estimate{0};
    bool exact = false;
    bool certified = true;
    Rat value;
    PolyUnion argmin{0};
    std::vector<Vec> ybars;
};
MarginalEstimate marginal_subdiff(const MinMaxAffine& phi, const SetMap& g, const Vec& xbar, MarginalMode mode);

/// {x* + v : (x*, y*) in a, v in d(y*)} for a in R^{n+m} and a map d from
/// R^m to R^n given by its graph.
PolyUnion shifted_image(const PolyUnion& a, const SetMap& d);

/// The filtered chain rule right-hand side: co D*G(xbar|ybar)(q) over
/// q in co D*F(ybar|zbar)(r) with <q, ybar - y'> <= 0 for all y' in G(xbar),
/// united over intermediate points. It is not an upper bound in general.
PolyUnion wp_filtered_chain(const SetMap& f, const SetMap& g, const Vec& xbar, const Vec& zbar, const Vec& r);

}  // namespace setvar
