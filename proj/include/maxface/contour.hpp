#pragma once

// Paths in the parameter domain, adaptive path integrals with branch
// transport, and residues.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "errors.hpp"
#include "expr.hpp"
#include "quadrature.hpp"
#include "tolerances.hpp"
#include "vec.hpp"

namespace maxface {

// Smooth piece of a path, parametrized over t ∈ [0, 1].
struct PathPiece {
    bool arc = false;
    cplx a{}, b{};          // segment endpoints
    cplx center{};          // arc
    double radius = 0.0;
    double theta0 = 0.0, theta1 = 0.0;

    cplx at(double t) const {
        if (!arc) return a + t * (b - a);
        return center + std::polar(radius, theta0 + t * (theta1 - theta0));
    }
    cplx velocity(double t) const {
        if (!arc) return b - a;
        return I * (theta1 - theta0) * (at(t) - center);
    }
    cplx start() const { return at(0.0); }
    cplx end() const { return at(1.0); }

    std::pair<PathPiece, PathPiece> split(double t = 0.5) const {
        PathPiece l = *this, r = *this;
        if (!arc) {
            l.b = at(t);
            r.a = l.b;
        } else {
            l.theta1 = theta0 + t * (theta1 - theta0);
            r.theta0 = l.theta1;
        }
        return {l, r};
    }
};

class Path {
public:
    static Path polyline(std::vector<cplx> points) {
        if (points.size() < 2) throw std::invalid_argument("polyline needs two points");
        Path p;
        for (std::size_t k = 0; k + 1 < points.size(); ++k) {
            PathPiece s;
            s.a = points[k];
            s.b = points[k + 1];
            p.pieces_.push_back(s);
        }
        p.closed_ = points.front() == points.back();
        return p;
    }
    static Path segment(cplx a, cplx b) { return polyline({a, b}); }

    // Circle traversed `turns` times (negative: clockwise), starting at angle start.
    static Path circle(cplx center, double radius, double turns = 1.0, double start = 0.0) {
        Path p;
        double sweep = 2 * pi * turns;
        int n = std::max(1, static_cast<int>(std::ceil(std::abs(sweep) / (pi / 4) - 1e-12)));
        for (int k = 0; k < n; ++k) {
            PathPiece s;
            s.arc = true;
            s.center = center;
            s.radius = radius;
            s.theta0 = start + sweep * k / n;
            s.theta1 = start + sweep * (k + 1) / n;
            p.pieces_.push_back(s);
        }
        p.closed_ = std::abs(turns - std::round(turns)) < 1e-12;
        return p;
    }

    static Path from_pieces(std::vector<PathPiece> pieces) {
        if (pieces.empty()) throw std::invalid_argument("empty path");
        Path p;
        p.pieces_ = std::move(pieces);
        p.closed_ = std::abs(p.start() - p.end()) < 1e-14 * (1.0 + std::abs(p.start()));
        return p;
    }
    Path then(const Path& next) const {
        std::vector<PathPiece> ps = pieces_;
        ps.insert(ps.end(), next.pieces_.begin(), next.pieces_.end());
        return from_pieces(std::move(ps));
    }

    const std::vector<PathPiece>& pieces() const { return pieces_; }
    cplx start() const { return pieces_.front().start(); }
    cplx end() const { return pieces_.back().end(); }
    bool closed() const { return closed_; }

    // Smallest distance from the path to any of the given points.
    double clearance(std::span<const cplx> points) const {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : pieces_)
            for (cplx p : points) {
                double d;
                if (s.arc) {
                    // Distance to the arc: radial distance if p's angle falls in the sweep, else endpoints.
                    d = std::min(std::abs(p - s.start()), std::abs(p - s.end()));
                    cplx rel = p - s.center;
                    double lo = std::min(s.theta0, s.theta1), hi = std::max(s.theta0, s.theta1);
                    double ang = std::arg(rel);
                    double k = std::ceil((lo - ang) / (2 * pi));
                    ang += 2 * pi * k;
                    if (ang <= hi || std::abs(rel) == 0.0) d = std::min(d, std::abs(std::abs(rel) - s.radius));
                } else {
                    cplx ab = s.b - s.a;
                    double len2 = std::norm(ab);
                    double t = len2 > 0 ? std::clamp(((p - s.a) * std::conj(ab)).real() / len2, 0.0, 1.0) : 0.0;
                    d = std::abs(p - (s.a + t * ab));
                }
                best = std::min(best, d);
            }
        return best;
    }

private:
    std::vector<PathPiece> pieces_;
    bool closed_ = false;
};

// Polyline from a to b that keeps at least `clear` away from every obstacle,
// detouring around obstacles close to the straight segment.
inline Path plan_path(cplx a, cplx b, std::span<const cplx> obstacles, double clear) {
    std::vector<cplx> pts{a, b};
    for (int pass = 0; pass < 16; ++pass) {
        bool changed = false;
        for (std::size_t k = 0; k + 1 < pts.size() && pts.size() < 64; ++k) {
            cplx s = pts[k], e = pts[k + 1];
            cplx d = e - s;
            double len2 = std::norm(d);
            if (len2 == 0.0) continue;
            for (cplx p : obstacles) {
                double t = ((p - s) * std::conj(d)).real() / len2;
                if (t <= 0.0 || t >= 1.0) continue;
                double dist = std::abs(p - (s + t * d));
                if (dist >= clear) continue;
                // Step around the obstacle on the side away from it.
                double other = std::numeric_limits<double>::infinity();
                for (cplx q : obstacles)
                    if (q != p) other = std::min(other, std::abs(q - p));
                double rho = std::min(std::max(4 * clear, 0.25 * std::sqrt(len2)), 0.5 * other);
                rho = std::max(rho, 2 * clear);
                cplx normal = I * d / std::sqrt(len2);
                cplx foot = s + t * d;
                if (((foot - p) * std::conj(normal)).real() < 0) normal = -normal;
                cplx w1 = p + rho * (normal - 0.5 * d / std::sqrt(len2));
                cplx w2 = p + rho * (normal + 0.5 * d / std::sqrt(len2));
                pts.insert(pts.begin() + static_cast<long>(k) + 1, {w1, w2});
                changed = true;
                break;
            }
            if (changed) break;
        }
        if (!changed) break;
    }
    Path path = Path::polyline(pts);
    if (!obstacles.empty() && path.clearance(obstacles) < clear)
        throw ClearanceError("could not plan a path with the requested clearance");
    return path;
}

namespace detail {

template <class V, class F>
QuadResult<V> integrate_piece(F& f, const PathPiece& piece, BranchContext& ctx, std::span<const Expr> tracked,
                              double tol, int max_depth, int split_depth) {
    try {
        const BranchContext& frozen = ctx;
        auto integrand = [&](double t) -> V { return f(piece, t, frozen); };
        auto r = integrate_adaptive<V>(integrand, 0.0, 1.0, tol, max_depth);
        ctx.move_to(piece.end(), tracked);
        return r;
    } catch (const BranchError&) {
        if (split_depth > 12) throw;
        auto [l, r] = piece.split();
        auto a = integrate_piece<V>(f, l, ctx, tracked, 0.5 * tol, max_depth, split_depth + 1);
        auto b = integrate_piece<V>(f, r, ctx, tracked, 0.5 * tol, max_depth, split_depth + 1);
        a.value = a.value + b.value;
        a.error += b.error;
        a.evaluations += b.evaluations;
        return a;
    }
}

}  // namespace detail

// Integrate f(piece, t, ctx) dt over each piece; f must include the dz/dt factor.
// The context is moved to the path start, then carried along to its end.
template <class V, class F>
QuadResult<V> integrate_pieces(F&& f, const Path& path, BranchContext& ctx, std::span<const Expr> tracked,
                               const Tolerances& tol) {
    if (!ctx.punctures().empty() && path.clearance(ctx.punctures()) < tol.path_clearance)
        throw ClearanceError("path comes closer than the clearance to a puncture");
    if (ctx.current() != path.start()) ctx.move_to(path.start(), tracked);
    QuadResult<V> total;
    double share = tol.quad / static_cast<double>(path.pieces().size());
    for (const auto& piece : path.pieces()) {
        auto r = detail::integrate_piece<V>(f, piece, ctx, tracked, share, tol.max_depth, 0);
        total.value = total.value + r.value;
        total.error += r.error;
        total.evaluations += r.evaluations;
    }
    return total;
}

// ∫ f(z, ctx) dz along the path.
template <class V, class F>
V integrate_path(F&& f, const Path& path, BranchContext& ctx, std::span<const Expr> tracked = {},
                 const Tolerances& tol = {}) {
    auto g = [&](const PathPiece& piece, double t, const BranchContext& c) -> V {
        return piece.velocity(t) * f(piece.at(t), c);
    };
    return integrate_pieces<V>(g, path, ctx, tracked, tol).value;
}

inline double default_residue_radius(cplx p, std::span<const cplx> others) {
    double r = 1.0;
    for (cplx q : others)
        if (q != p) r = std::min(r, 0.5 * std::abs(q - p));
    return r;
}

// (1/2πi) ∮ f dz on |z − p| = radius, checked against the same integral at radius/2.
template <class V, class F>
V residue(F&& f, cplx p, double radius, const Tolerances& tol = {}, std::span<const Expr> tracked = {}) {
    auto loop = [&](double r) {
        BranchContext ctx(p + r, {p});
        V v = integrate_path<V>(f, Path::circle(p, r), ctx, tracked, tol);
        return (1.0 / (2 * pi * I)) * v;
    };
    V outer = loop(radius);
    V inner = loop(0.5 * radius);
    if (detail::magnitude(outer - inner) > std::max(tol.quad, 1e-13 * detail::magnitude(outer)))
        throw ResidueError("residue depends on the radius: branch point or another singularity inside");
    return outer;
}

}  // namespace maxface
