#pragma once

// Evaluation over parameter grids. Each row is reached from the basepoint by a
// planned path, then walked point to point, so log/root branches and numeric
// Φ stay continuous along the row. Rows run on worker threads.

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "maxface.hpp"
#include "window.hpp"

namespace maxface {

struct GridSample {
    int i = 0, j = 0;
    cplx z{};
    const BranchContext* ctx = nullptr;  // null when the point could not be reached
    CVec3 phi{};
    std::optional<Vec3> psi;
};

struct WalkOptions {
    bool want_phi = true;
    bool want_psi = false;
    bool parallel = true;
};

namespace detail {

// Walks one row; the state is either closed-form (ctx only) or numeric (ctx + primitives).
class RowWalker {
public:
    RowWalker(const WeierstrassData& d, const Tolerances& tol, const WalkOptions& opt, const CVec3& base_cross)
        : d_(d), tol_(tol), opt_(opt), base_cross_(base_cross), tracked_(tracked_exprs(d)) {}

    // Move to z; returns false if z (or the path to it) cannot be evaluated.
    bool move(cplx z) {
        try {
            if (!ctx_) return restart(z);
            Path path = plan_path(ctx_->current(), z, d_.domain.punctures, tol_.path_clearance);
            if (numeric()) {
                prim_ = integrate_primitives(d_, path, prim_, *ctx_, tol_, opt_.want_psi);
            } else {
                transport(d_, *ctx_, path);
            }
            return true;
        } catch (const std::runtime_error&) {
            ctx_.reset();
            return false;
        }
    }

    bool fill(GridSample& s) {
        if (!ctx_) return false;
        try {
            s.ctx = &*ctx_;
            if (!opt_.want_phi && !opt_.want_psi) return true;
            if (numeric()) {
                s.phi = prim_.phi;
                if (opt_.want_psi) s.psi = psi_from(prim_.phi, prim_.cross);
            } else if (d_.phi) {
                s.phi = eval3(*d_.phi, s.z, *ctx_);
                if (opt_.want_psi) s.psi = psi_from(s.phi, eval3(*d_.cross_primitive, s.z, *ctx_) - base_cross_);
            }
            return all_finite(s.phi);
        } catch (const std::runtime_error&) {
            s.ctx = nullptr;
            return false;
        }
    }

private:
    bool numeric() const { return !d_.phi || (opt_.want_psi && !d_.cross_primitive); }

    bool restart(cplx z) {
        try {
            ctx_ = base_context(d_);
            Path path = plan_path(d_.domain.basepoint, z, d_.domain.punctures, tol_.path_clearance);
            if (numeric()) {
                Primitives start{d_.phi ? eval3(*d_.phi, d_.domain.basepoint, *ctx_) : d_.constants, {}};
                prim_ = integrate_primitives(d_, path, start, *ctx_, tol_, opt_.want_psi);
            } else {
                transport(d_, *ctx_, path);
            }
            return true;
        } catch (const std::runtime_error&) {
            ctx_.reset();
            return false;
        }
    }

    const WeierstrassData& d_;
    const Tolerances& tol_;
    const WalkOptions& opt_;
    CVec3 base_cross_;
    std::vector<Expr> tracked_;
    std::optional<BranchContext> ctx_;
    Primitives prim_;
};

}  // namespace detail

// Visit every grid point (us[i], vs[j]) of the window. visit(const GridSample&)
// is called once per point, with s.ctx == nullptr where evaluation failed;
// calls for different rows may run concurrently.
template <class Visit>
void walk_grid(const WeierstrassData& d, const Window& w, std::span<const double> us, std::span<const double> vs,
               const Tolerances& tol, const WalkOptions& opt, Visit&& visit) {
    CVec3 base_cross{};
    if (opt.want_psi && d.phi && d.cross_primitive) base_cross = cross_primitive_at_base(d);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < us.size(); i = next++) {
            try {
                detail::RowWalker row(d, tol, opt, base_cross);
                for (std::size_t j = 0; j < vs.size(); ++j) {
                    GridSample s;
                    s.i = static_cast<int>(i);
                    s.j = static_cast<int>(j);
                    s.z = w.at(us[i], vs[j]);
                    if (row.move(s.z)) row.fill(s);
                    visit(static_cast<const GridSample&>(s));
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    unsigned n = opt.parallel ? std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16u)) : 1u;
    n = std::min<unsigned>(n, static_cast<unsigned>(std::max<std::size_t>(us.size(), 1)));
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (unsigned k = 0; k < n; ++k) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    if (failure) std::rethrow_exception(failure);
}

// n+1 equally spaced values in [0, 1], or n values in [0, 1) when periodic.
inline std::vector<double> uniform_nodes(int n, bool periodic) {
    std::vector<double> out;
    int count = periodic ? n : n + 1;
    for (int k = 0; k < count; ++k) out.push_back(static_cast<double>(k) / n);
    return out;
}

}  // namespace maxface
