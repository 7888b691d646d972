#pragma once

// Meromorphic-expression DSL: AST, parser, printer, symbolic derivative and
// branch-tracked evaluation. The grammar is documented in docs/grammar.ebnf.

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "vec.hpp"

namespace maxface {

// Exact rational with 64-bit parts; arithmetic reports overflow through nullopt.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static std::optional<Rational> make(std::int64_t p, std::int64_t q) {
        if (q == 0) return std::nullopt;
        if (q < 0) {
            if (p == std::numeric_limits<std::int64_t>::min() ||
                q == std::numeric_limits<std::int64_t>::min())
                return std::nullopt;
            p = -p;
            q = -q;
        }
        std::int64_t g = std::gcd(p, q);
        if (g > 1) {
            p /= g;
            q /= g;
        }
        return Rational{p, q};
    }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool is_integer() const { return den == 1; }
};

inline std::optional<Rational> operator+(const Rational& a, const Rational& b) {
    std::int64_t x, y, d;
    if (__builtin_mul_overflow(a.num, b.den, &x) || __builtin_mul_overflow(b.num, a.den, &y) ||
        __builtin_mul_overflow(a.den, b.den, &d) || __builtin_add_overflow(x, y, &x))
        return std::nullopt;
    return Rational::make(x, d);
}
inline std::optional<Rational> operator-(const Rational& a) {
    if (a.num == std::numeric_limits<std::int64_t>::min()) return std::nullopt;
    return Rational{-a.num, a.den};
}
inline std::optional<Rational> operator*(const Rational& a, const Rational& b) {
    std::int64_t p, q;
    if (__builtin_mul_overflow(a.num, b.num, &p) || __builtin_mul_overflow(a.den, b.den, &q))
        return std::nullopt;
    return Rational::make(p, q);
}
inline std::optional<Rational> reciprocal(const Rational& a) { return Rational::make(a.den, a.num); }

enum class Op { Const, Var, Param, Add, Sub, Mul, Div, Neg, Pow, Exp, Log, Sinh, Cosh, Sin, Cos, Root };

inline int arity(Op op) {
    switch (op) {
        case Op::Const:
        case Op::Var:
        case Op::Param: return 0;
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div: return 2;
        default: return 1;
    }
}

inline const char* function_name(Op op) {
    switch (op) {
        case Op::Exp: return "exp";
        case Op::Log: return "log";
        case Op::Sinh: return "sinh";
        case Op::Cosh: return "cosh";
        case Op::Sin: return "sin";
        case Op::Cos: return "cos";
        case Op::Root: return "root";
        default: return "";
    }
}

struct Node {
    Op op = Op::Const;
    cplx value{};                  // Const and Param
    std::optional<Rational> exact; // Const only
    std::string name;              // Param only
    int n = 0;                     // Pow exponent, Root degree
    std::shared_ptr<const Node> a, b;
};
using NodePtr = std::shared_ptr<const Node>;

class Expr {
public:
    Expr() : Expr(integer(0)) {}
    explicit Expr(NodePtr node) : node_(std::move(node)) {}

    static Expr constant(cplx v) {
        auto n = std::make_shared<Node>();
        n->op = Op::Const;
        n->value = v;
        return Expr(n);
    }
    static Expr exact(Rational r) {
        auto n = std::make_shared<Node>();
        n->op = Op::Const;
        n->value = r.value();
        n->exact = r;
        return Expr(n);
    }
    static Expr integer(std::int64_t k) { return exact(Rational{k, 1}); }
    static Expr rational(std::int64_t p, std::int64_t q) {
        auto r = Rational::make(p, q);
        if (!r) throw std::invalid_argument("rational with zero denominator");
        return exact(*r);
    }
    static Expr var() {
        auto n = std::make_shared<Node>();
        n->op = Op::Var;
        return Expr(n);
    }
    static Expr param(std::string name, cplx value) {
        auto n = std::make_shared<Node>();
        n->op = Op::Param;
        n->name = std::move(name);
        n->value = value;
        return Expr(n);
    }

    Op op() const { return node_->op; }
    const Node* get() const { return node_.get(); }
    const NodePtr& ptr() const { return node_; }
    Expr lhs() const { return Expr(node_->a); }
    Expr rhs() const { return Expr(node_->b); }

    bool is_const() const { return node_->op == Op::Const; }
    bool is_zero() const { return is_const() && node_->value == cplx(0.0); }
    bool is_one() const { return is_const() && node_->value == cplx(1.0); }
    cplx const_value() const { return node_->value; }

private:
    NodePtr node_;
};

namespace detail {

inline NodePtr make_node(Op op, NodePtr a, NodePtr b = nullptr, int n = 0) {
    auto node = std::make_shared<Node>();
    node->op = op;
    node->a = std::move(a);
    node->b = std::move(b);
    node->n = n;
    return node;
}

inline cplx ipow(cplx x, int k) {
    if (k < 0) {
        if (x == cplx(0.0)) throw PoleError("negative power of zero");
        return 1.0 / ipow(x, -k);
    }
    cplx result = 1.0;
    while (k > 0) {
        if (k & 1) result *= x;
        x *= x;
        k >>= 1;
    }
    return result;
}

inline std::optional<Rational> rpow(Rational r, int k) {
    if (k < 0) {
        auto inv = reciprocal(r);
        if (!inv) return std::nullopt;
        r = *inv;
        k = -k;
    }
    Rational acc{1, 1};
    for (int i = 0; i < k; ++i) {
        auto next = acc * r;
        if (!next) return std::nullopt;
        acc = *next;
    }
    return acc;
}

// Constant folding of two constant nodes; exactness is kept when both are exact.
inline Expr fold_binary(Op op, const Expr& x, const Expr& y) {
    const auto& ex = x.get()->exact;
    const auto& ey = y.get()->exact;
    if (ex && ey) {
        std::optional<Rational> r;
        switch (op) {
            case Op::Add: r = *ex + *ey; break;
            case Op::Sub: {
                auto m = -*ey;
                if (m) r = *ex + *m;
                break;
            }
            case Op::Mul: r = *ex * *ey; break;
            case Op::Div:
                if (ey->num != 0) {
                    auto inv = reciprocal(*ey);
                    if (inv) r = *ex * *inv;
                }
                break;
            default: break;
        }
        if (r) return Expr::exact(*r);
    }
    cplx u = x.const_value(), v = y.const_value();
    switch (op) {
        case Op::Add: return Expr::constant(u + v);
        case Op::Sub: return Expr::constant(u - v);
        case Op::Mul: return Expr::constant(u * v);
        default:
            if (v == cplx(0.0)) throw PoleError("constant division by zero");
            return Expr::constant(u / v);
    }
}

}  // namespace detail

inline Expr operator+(const Expr& x, const Expr& y) {
    if (x.is_const() && y.is_const()) return detail::fold_binary(Op::Add, x, y);
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    return Expr(detail::make_node(Op::Add, x.ptr(), y.ptr()));
}

inline Expr operator-(const Expr& x) {
    if (x.is_const()) {
        if (x.get()->exact) {
            auto m = -*x.get()->exact;
            if (m) return Expr::exact(*m);
        }
        return Expr::constant(-x.const_value());
    }
    if (x.op() == Op::Neg) return x.lhs();
    return Expr(detail::make_node(Op::Neg, x.ptr()));
}

inline Expr operator-(const Expr& x, const Expr& y) {
    if (x.is_const() && y.is_const()) return detail::fold_binary(Op::Sub, x, y);
    if (y.is_zero()) return x;
    if (x.is_zero()) return -y;
    return Expr(detail::make_node(Op::Sub, x.ptr(), y.ptr()));
}

// Constant coefficients are kept in front and merged, so c1*(c2*x) -> (c1*c2)*x.
inline Expr operator*(const Expr& x, const Expr& y) {
    if (x.is_const() && y.is_const()) return detail::fold_binary(Op::Mul, x, y);
    if (x.is_zero() || y.is_zero()) return Expr::integer(0);
    if (x.is_one()) return y;
    if (y.is_one()) return x;
    if (y.is_const()) return y * x;
    if (x.is_const() && y.op() == Op::Mul && y.lhs().is_const())
        return detail::fold_binary(Op::Mul, x, y.lhs()) * y.rhs();
    return Expr(detail::make_node(Op::Mul, x.ptr(), y.ptr()));
}

inline Expr operator/(const Expr& x, const Expr& y) {
    if (x.is_const() && y.is_const()) return detail::fold_binary(Op::Div, x, y);
    if (y.is_zero()) throw PoleError("division by constant zero");
    if (x.is_zero()) return Expr::integer(0);
    if (y.is_one()) return x;
    if (y.is_const() && y.get()->exact) return detail::fold_binary(Op::Div, Expr::integer(1), y) * x;
    return Expr(detail::make_node(Op::Div, x.ptr(), y.ptr()));
}

inline Expr pow(const Expr& x, int k) {
    if (k == 0) return Expr::integer(1);
    if (k == 1) return x;
    if (x.is_const()) {
        if (x.get()->exact && !(x.get()->exact->num == 0 && k < 0)) {
            auto r = detail::rpow(*x.get()->exact, k);
            if (r) return Expr::exact(*r);
        }
        return Expr::constant(detail::ipow(x.const_value(), k));
    }
    if (x.op() == Op::Pow) {
        long long e = static_cast<long long>(x.get()->n) * k;
        if (e <= std::numeric_limits<int>::max() && e >= std::numeric_limits<int>::min())
            return pow(x.lhs(), static_cast<int>(e));
    }
    return Expr(detail::make_node(Op::Pow, x.ptr(), nullptr, k));
}

namespace detail {

inline cplx principal_root(cplx u, int n) {
    if (u == cplx(0.0)) return 0.0;
    return std::polar(std::pow(std::abs(u), 1.0 / n), std::arg(u) / n);
}

inline cplx apply_function(Op op, cplx u, int n = 0) {
    switch (op) {
        case Op::Exp: return std::exp(u);
        case Op::Log:
            if (u == cplx(0.0)) throw PoleError("log of zero");
            return std::log(u);
        case Op::Sinh: return std::sinh(u);
        case Op::Cosh: return std::cosh(u);
        case Op::Sin: return std::sin(u);
        case Op::Cos: return std::cos(u);
        case Op::Root: return principal_root(u, n);
        default: throw std::logic_error("not a function node");
    }
}

inline Expr function(Op op, const Expr& x, int n = 0) {
    if (x.is_const()) return Expr::constant(apply_function(op, x.const_value(), n));
    return Expr(make_node(op, x.ptr(), nullptr, n));
}

}  // namespace detail

inline Expr exp(const Expr& x) { return detail::function(Op::Exp, x); }
inline Expr log(const Expr& x) { return detail::function(Op::Log, x); }
inline Expr sinh(const Expr& x) { return detail::function(Op::Sinh, x); }
inline Expr cosh(const Expr& x) { return detail::function(Op::Cosh, x); }
inline Expr sin(const Expr& x) { return detail::function(Op::Sin, x); }
inline Expr cos(const Expr& x) { return detail::function(Op::Cos, x); }
inline Expr root(const Expr& x, int n) {
    if (n < 1) throw std::invalid_argument("root degree must be positive");
    if (n == 1) return x;
    return detail::function(Op::Root, x, n);
}

inline Expr operator*(double s, const Expr& x) { return Expr::constant(s) * x; }
inline Expr operator*(cplx s, const Expr& x) { return Expr::constant(s) * x; }

// ---------------------------------------------------------------------------
// Structural queries

inline bool structurally_equal(const Node* x, const Node* y) {
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->op != y->op || x->n != y->n) return false;
    switch (x->op) {
        case Op::Const: return x->value == y->value;
        case Op::Param: return x->name == y->name && x->value == y->value;
        case Op::Var: return true;
        default: break;
    }
    return structurally_equal(x->a.get(), y->a.get()) && structurally_equal(x->b.get(), y->b.get());
}
inline bool structurally_equal(const Expr& x, const Expr& y) {
    return structurally_equal(x.get(), y.get());
}

inline bool depends_on_z(const Node* x) {
    if (!x) return false;
    if (x->op == Op::Var) return true;
    return depends_on_z(x->a.get()) || depends_on_z(x->b.get());
}
inline bool depends_on_z(const Expr& e) { return depends_on_z(e.get()); }

inline bool has_branch_nodes(const Node* x) {
    if (!x) return false;
    if (x->op == Op::Log || x->op == Op::Root) return true;
    return has_branch_nodes(x->a.get()) || has_branch_nodes(x->b.get());
}

inline bool is_rational_expr(const Node* x) {
    if (!x) return true;
    switch (x->op) {
        case Op::Const:
        case Op::Var:
        case Op::Param: return true;
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div:
        case Op::Neg:
        case Op::Pow: return is_rational_expr(x->a.get()) && is_rational_expr(x->b.get());
        default: return !depends_on_z(x);
    }
}

inline std::size_t node_count(const Node* x) {
    if (!x) return 0;
    return 1 + node_count(x->a.get()) + node_count(x->b.get());
}

// ---------------------------------------------------------------------------
// Symbolic derivative d/dz

inline Expr differentiate(const Expr& e) {
    const Node* n = e.get();
    switch (n->op) {
        case Op::Const:
        case Op::Param: return Expr::integer(0);
        case Op::Var: return Expr::integer(1);
        case Op::Add: return differentiate(e.lhs()) + differentiate(e.rhs());
        case Op::Sub: return differentiate(e.lhs()) - differentiate(e.rhs());
        case Op::Neg: return -differentiate(e.lhs());
        case Op::Mul: {
            Expr a = e.lhs(), b = e.rhs();
            return differentiate(a) * b + a * differentiate(b);
        }
        case Op::Div: {
            Expr a = e.lhs(), b = e.rhs();
            Expr da = differentiate(a), db = differentiate(b);
            return da / b - a * db / pow(b, 2);
        }
        case Op::Pow: {
            Expr a = e.lhs();
            return Expr::integer(n->n) * pow(a, n->n - 1) * differentiate(a);
        }
        case Op::Exp: return e * differentiate(e.lhs());
        case Op::Log: return differentiate(e.lhs()) / e.lhs();
        case Op::Sinh: return cosh(e.lhs()) * differentiate(e.lhs());
        case Op::Cosh: return sinh(e.lhs()) * differentiate(e.lhs());
        case Op::Sin: return cos(e.lhs()) * differentiate(e.lhs());
        case Op::Cos: return -(sin(e.lhs()) * differentiate(e.lhs()));
        case Op::Root: {
            Expr a = e.lhs();
            return e * differentiate(a) / (Expr::integer(n->n) * a);
        }
    }
    throw std::logic_error("unhandled node in differentiate");
}

// Replace z by `inner` everywhere.
inline Expr compose(const Expr& e, const Expr& inner) {
    const Node* n = e.get();
    switch (n->op) {
        case Op::Const:
        case Op::Param: return e;
        case Op::Var: return inner;
        case Op::Add: return compose(e.lhs(), inner) + compose(e.rhs(), inner);
        case Op::Sub: return compose(e.lhs(), inner) - compose(e.rhs(), inner);
        case Op::Mul: return compose(e.lhs(), inner) * compose(e.rhs(), inner);
        case Op::Div: return compose(e.lhs(), inner) / compose(e.rhs(), inner);
        case Op::Neg: return -compose(e.lhs(), inner);
        case Op::Pow: return pow(compose(e.lhs(), inner), n->n);
        case Op::Root: return root(compose(e.lhs(), inner), n->n);
        default: return detail::function(n->op, compose(e.lhs(), inner));
    }
}

// ---------------------------------------------------------------------------
// Branch tracking

class BranchContext;

namespace detail {
struct BranchRecord {
    NodePtr node;
    double angle;
};
cplx eval_node(const NodePtr& np, cplx z, const BranchContext* ctx, std::vector<BranchRecord>* rec);
}  // namespace detail

// Continuous branch choices for log/root nodes along an evaluation path.
// A fresh context uses principal branches; move_to() carries every tracked
// node's argument angle continuously along a straight segment.
class BranchContext {
public:
    BranchContext() = default;
    explicit BranchContext(cplx basepoint, std::vector<cplx> punctures = {})
        : base_(basepoint), cur_(basepoint), punctures_(std::move(punctures)) {
        for (cplx p : punctures_) turn_.push_back(std::arg(basepoint - p));
        start_ = turn_;
    }

    cplx basepoint() const { return base_; }
    cplx current() const { return cur_; }
    const std::vector<cplx>& punctures() const { return punctures_; }

    // Number of net counterclockwise turns around each puncture since the basepoint.
    std::vector<int> windings() const {
        std::vector<int> w;
        for (std::size_t k = 0; k < turn_.size(); ++k)
            w.push_back(static_cast<int>(std::lround((turn_[k] - start_[k]) / (2 * pi))));
        return w;
    }

    std::optional<double> angle(const Node* n) const {
        for (const auto& r : branches_)
            if (r.node.get() == n) return r.angle;
        return std::nullopt;
    }
    std::size_t tracked() const { return branches_.size(); }

    // Record principal branches at the current point for nodes not yet tracked.
    void track(std::span<const Expr> exprs) {
        std::vector<detail::BranchRecord> rec;
        for (const auto& e : exprs) detail::eval_node(e.ptr(), cur_, this, &rec);
        merge(rec);
    }

    // Carry the branch state from current() to target along the straight segment.
    void move_to(cplx target, std::span<const Expr> exprs) {
        track(exprs);
        advance(cur_, target, exprs, 0);
    }

private:
    void merge(const std::vector<detail::BranchRecord>& rec) {
        for (const auto& r : rec) {
            bool found = false;
            for (auto& b : branches_)
                if (b.node.get() == r.node.get()) {
                    b.angle = r.angle;
                    found = true;
                }
            if (!found) branches_.push_back(r);
        }
    }

    void advance(cplx from, cplx to, std::span<const Expr> exprs, int depth) {
        if (from == to) return;
        try {
            std::vector<double> turns = turn_;
            for (std::size_t k = 0; k < punctures_.size(); ++k) {
                cplx d = to - punctures_[k];
                if (std::abs(d) == 0.0) throw ClearanceError("path passes through a puncture");
                double phi = std::arg(d);
                double k2 = std::round((turns[k] - phi) / (2 * pi));
                double next = phi + 2 * pi * k2;
                if (std::abs(next - turns[k]) > pi / 2) throw BranchError("puncture angle step too large");
                turns[k] = next;
            }
            std::vector<detail::BranchRecord> rec;
            for (const auto& e : exprs) detail::eval_node(e.ptr(), to, this, &rec);
            merge(rec);
            turn_ = std::move(turns);
            cur_ = to;
        } catch (const BranchError&) {
            if (depth > 48) throw;
            cplx mid = 0.5 * (from + to);
            advance(from, mid, exprs, depth + 1);
            advance(mid, to, exprs, depth + 1);
        }
    }

    cplx base_{0.0};
    cplx cur_{0.0};
    std::vector<cplx> punctures_;
    std::vector<double> turn_, start_;
    std::vector<detail::BranchRecord> branches_;
};

namespace detail {

inline double tracked_angle(const Node* n, cplx u, const BranchContext* ctx) {
    double phi = std::arg(u);
    if (!ctx) return phi;
    auto prev = ctx->angle(n);
    if (!prev) return phi;
    double k = std::round((*prev - phi) / (2 * pi));
    double theta = phi + 2 * pi * k;
    if (std::abs(theta - *prev) > pi / 2)
        throw BranchError("branch ambiguity: argument moved by more than pi/2 since the last tracked point");
    return theta;
}

inline void check_finite(cplx v, const char* what) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw PoleError(what);
}

inline cplx eval_node(const NodePtr& np, cplx z, const BranchContext* ctx, std::vector<BranchRecord>* rec) {
    const Node* n = np.get();
    switch (n->op) {
        case Op::Const:
        case Op::Param: return n->value;
        case Op::Var: return z;
        case Op::Add: return eval_node(n->a, z, ctx, rec) + eval_node(n->b, z, ctx, rec);
        case Op::Sub: return eval_node(n->a, z, ctx, rec) - eval_node(n->b, z, ctx, rec);
        case Op::Mul: {
            cplx v = eval_node(n->a, z, ctx, rec) * eval_node(n->b, z, ctx, rec);
            check_finite(v, "overflow in product");
            return v;
        }
        case Op::Div: {
            cplx num = eval_node(n->a, z, ctx, rec);
            cplx den = eval_node(n->b, z, ctx, rec);
            if (den == cplx(0.0)) throw PoleError("division by zero");
            cplx v = num / den;
            check_finite(v, "non-finite quotient");
            return v;
        }
        case Op::Neg: return -eval_node(n->a, z, ctx, rec);
        case Op::Pow: {
            cplx v = ipow(eval_node(n->a, z, ctx, rec), n->n);
            check_finite(v, "non-finite power");
            return v;
        }
        case Op::Log:
        case Op::Root: {
            cplx u = eval_node(n->a, z, ctx, rec);
            if (u == cplx(0.0)) {
                if (n->op == Op::Log) throw PoleError("log of zero");
                return 0.0;
            }
            double theta = tracked_angle(n, u, ctx);
            if (rec) {
                // Shared subtrees are recorded once per node.
                bool seen = false;
                for (auto& r : *rec)
                    if (r.node.get() == n) {
                        r.angle = theta;
                        seen = true;
                    }
                if (!seen) rec->push_back({np, theta});
            }
            if (n->op == Op::Log) return cplx(std::log(std::abs(u)), theta);
            return std::polar(std::pow(std::abs(u), 1.0 / n->n), theta / n->n);
        }
        default: {
            cplx v = apply_function(n->op, eval_node(n->a, z, ctx, rec));
            check_finite(v, "non-finite function value");
            return v;
        }
    }
}

}  // namespace detail

inline cplx eval(const Expr& e, cplx z, const BranchContext& ctx) {
    return detail::eval_node(e.ptr(), z, &ctx, nullptr);
}
inline cplx eval(const Expr& e, cplx z) { return detail::eval_node(e.ptr(), z, nullptr, nullptr); }

// ---------------------------------------------------------------------------
// Printer

namespace detail {

inline std::string format_real(double x, bool exact_integer) {
    if (exact_integer) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", x);
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s = buf;
    if (s.find_first_of(".eni") == std::string::npos) s += ".0";
    return s;
}

inline std::string format_const(const Node* n) {
    if (n->exact) {
        const Rational& r = *n->exact;
        if (r.den == 1) {
            if (r.num >= 0) return std::to_string(r.num);
            return "(" + std::to_string(r.num) + ")";
        }
        return "(" + std::to_string(r.num) + "/" + std::to_string(r.den) + ")";
    }
    double re = n->value.real(), im = n->value.imag();
    if (im == 0.0) {
        if (re >= 0.0 && !std::signbit(re)) return format_real(re, false);
        return "(" + format_real(re, false) + ")";
    }
    std::string s = "(";
    if (re != 0.0) s += format_real(re, false);
    if (im < 0.0)
        s += "-" + format_real(-im, false) + "*i";
    else
        s += (re != 0.0 ? "+" : "") + format_real(im, false) + "*i";
    return s + ")";
}

inline int precedence(const Node* n) {
    switch (n->op) {
        case Op::Add:
        case Op::Sub: return 1;
        case Op::Mul:
        case Op::Div: return 2;
        case Op::Neg: return 3;
        case Op::Pow: return 4;
        default: return 5;
    }
}

inline std::string print_node(const Node* n);

inline std::string wrap(const Node* n, bool parens) {
    std::string s = print_node(n);
    return parens ? "(" + s + ")" : s;
}

inline std::string print_node(const Node* n) {
    switch (n->op) {
        case Op::Const: return format_const(n);
        case Op::Var: return "z";
        case Op::Param: return n->name;
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div: {
            int p = precedence(n);
            const char* sym = n->op == Op::Add ? "+" : n->op == Op::Sub ? "-" : n->op == Op::Mul ? "*" : "/";
            return wrap(n->a.get(), precedence(n->a.get()) < p) + sym +
                   wrap(n->b.get(), precedence(n->b.get()) <= p);
        }
        case Op::Neg: return "-" + wrap(n->a.get(), precedence(n->a.get()) < 4);
        case Op::Pow: {
            std::string ex = n->n < 0 ? "(" + std::to_string(n->n) + ")" : std::to_string(n->n);
            return wrap(n->a.get(), precedence(n->a.get()) < 5) + "^" + ex;
        }
        case Op::Root:
            if (n->n == 2) return "sqrt(" + print_node(n->a.get()) + ")";
            return "root(" + print_node(n->a.get()) + "," + std::to_string(n->n) + ")";
        default: return std::string(function_name(n->op)) + "(" + print_node(n->a.get()) + ")";
    }
}

}  // namespace detail

inline std::string to_string(const Expr& e) { return detail::print_node(e.get()); }

// ---------------------------------------------------------------------------
// Parser

using ParamTable = std::map<std::string, cplx, std::less<>>;

namespace detail {

class Parser {
public:
    Parser(std::string_view src, const ParamTable& params) : src_(src), params_(params) {}

    Expr parse() {
        skip();
        if (pos_ >= src_.size()) throw ParseError(pos_, "empty expression");
        Expr e = expression();
        skip();
        if (pos_ < src_.size()) throw ParseError(pos_, std::string("unexpected '") + src_[pos_] + "'");
        return e;
    }

private:
    void skip() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) {
            skip();
            throw ParseError(pos_, std::string("expected '") + c + "'");
        }
    }

    Expr expression() {
        Expr e = term();
        for (;;) {
            if (accept('+'))
                e = e + term();
            else if (accept('-'))
                e = e - term();
            else
                return e;
        }
    }

    Expr term() {
        Expr e = unary();
        for (;;) {
            skip();
            std::size_t at = pos_;
            if (accept('*'))
                e = e * unary();
            else if (accept('/')) {
                Expr d = unary();
                if (d.is_zero()) throw ParseError(at, "division by zero");
                e = e / d;
            } else
                return e;
        }
    }

    Expr unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Expr power() {
        Expr base = primary();
        skip();
        std::size_t at = pos_;
        if (!accept('^')) return base;
        Expr ex = unary();
        return pow(base, integer_exponent(ex, at));
    }

    int integer_exponent(const Expr& ex, std::size_t at) {
        if (depends_on_z(ex)) throw ParseError(at, "exponent must be an integer constant");
        cplx v = eval(ex, 0.0);
        double r = std::round(v.real());
        if (v.imag() != 0.0 || std::abs(v.real() - r) > 1e-12 || std::abs(r) > 1e6)
            throw ParseError(at, "exponent must be an integer constant");
        return static_cast<int>(r);
    }

    Expr primary() {
        skip();
        if (pos_ >= src_.size()) throw ParseError(pos_, "unexpected end of input");
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expression();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        throw ParseError(pos_, std::string("unexpected '") + c + "'");
    }

    Expr number() {
        std::size_t start = pos_;
        bool decimal = false;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            decimal = true;
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                decimal = true;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            } else {
                pos_ = save;
            }
        }
        std::string text(src_.substr(start, pos_ - start));
        if (text == ".") throw ParseError(start, "malformed number");
        if (!decimal) {
            std::int64_t v = 0;
            bool overflow = false;
            for (char d : text) {
                if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, d - '0', &v)) {
                    overflow = true;
                    break;
                }
            }
            if (!overflow) return Expr::integer(v);
        }
        return Expr::constant(std::stod(text));
    }

    Expr identifier() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        std::string name(src_.substr(start, pos_ - start));
        skip();
        bool call = pos_ < src_.size() && src_[pos_] == '(';
        if (call) {
            static const std::pair<const char*, Op> funcs[] = {{"exp", Op::Exp},   {"log", Op::Log},
                                                               {"sinh", Op::Sinh}, {"cosh", Op::Cosh},
                                                               {"sin", Op::Sin},   {"cos", Op::Cos}};
            for (const auto& [fname, op] : funcs)
                if (name == fname) {
                    ++pos_;
                    Expr arg = expression();
                    expect(')');
                    return function(op, arg);
                }
            if (name == "sqrt") {
                ++pos_;
                Expr arg = expression();
                expect(')');
                return root(arg, 2);
            }
            if (name == "root") {
                ++pos_;
                Expr arg = expression();
                expect(',');
                skip();
                std::size_t at = pos_;
                Expr deg = expression();
                expect(')');
                int n = integer_exponent(deg, at);
                if (n < 1) throw ParseError(at, "root degree must be a positive integer");
                return root(arg, n);
            }
        }
        if (name == "z") return Expr::var();
        if (name == "i") return Expr::constant(I);
        if (name == "pi") return Expr::constant(pi);
        if (auto it = params_.find(name); it != params_.end()) return Expr::param(name, it->second);
        throw UnknownIdentifier(start, name);
    }

    std::string_view src_;
    const ParamTable& params_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse_expr(std::string_view source, const ParamTable& params = {}) {
    return detail::Parser(source, params).parse();
}

}  // namespace maxface
