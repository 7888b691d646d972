#pragma once

// Finite sums Σ c · z^k · (log z)^j. Closed under products, d/dz and
// antiderivatives, which gives exact Φ and ∫Φ×dΦ for Laurent-type data.

#include <map>
#include <utility>

#include "expr.hpp"
#include "vec.hpp"

namespace maxface {

class LogLaurent {
public:
    using Key = std::pair<int, int>;  // (power of z, power of log z)

    LogLaurent() = default;
    static LogLaurent constant(cplx c) { return term(c, 0, 0); }
    static LogLaurent term(cplx c, int k, int j = 0) {
        LogLaurent p;
        if (c != cplx(0.0)) p.terms_[{k, j}] = c;
        return p;
    }

    const std::map<Key, cplx>& terms() const { return terms_; }

    LogLaurent& operator+=(const LogLaurent& o) {
        for (const auto& [key, c] : o.terms_) add(key, c);
        return *this;
    }
    friend LogLaurent operator+(LogLaurent a, const LogLaurent& b) { return a += b; }
    friend LogLaurent operator-(const LogLaurent& a) { return cplx(-1.0) * a; }
    friend LogLaurent operator-(LogLaurent a, const LogLaurent& b) { return a += -b; }
    friend LogLaurent operator*(cplx s, const LogLaurent& a) {
        LogLaurent r;
        for (const auto& [key, c] : a.terms_) r.add(key, s * c);
        return r;
    }
    friend LogLaurent operator*(const LogLaurent& a, const LogLaurent& b) {
        LogLaurent r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) r.add({ka.first + kb.first, ka.second + kb.second}, ca * cb);
        return r;
    }

    LogLaurent derivative() const {
        LogLaurent r;
        for (const auto& [key, c] : terms_) {
            auto [k, j] = key;
            if (k != 0) r.add({k - 1, j}, static_cast<double>(k) * c);
            if (j != 0) r.add({k - 1, j - 1}, static_cast<double>(j) * c);
        }
        return r;
    }

    // Antiderivative with zero constant term, by repeated integration by parts.
    LogLaurent integral() const {
        LogLaurent r;
        for (const auto& [key, c] : terms_) r += integrate_term(key.first, key.second, c);
        return r;
    }

    cplx operator()(cplx z, cplx logz) const {
        cplx acc = 0.0;
        for (const auto& [key, c] : terms_) acc += c * detail::ipow(z, key.first) * detail::ipow(logz, key.second);
        return acc;
    }
    cplx operator()(cplx z) const { return (*this)(z, std::log(z)); }

    bool has_log() const {
        for (const auto& [key, c] : terms_)
            if (key.second != 0) return true;
        return false;
    }

    // Expression form; `logz` is shared so all outputs track one branch.
    Expr to_expr(const Expr& logz) const {
        Expr z = Expr::var();
        Expr out = Expr::integer(0);
        for (const auto& [key, c] : terms_) {
            Expr t = pow(z, key.first) * pow(logz, key.second);
            out = out + Expr::constant(c) * t;
        }
        return out;
    }

private:
    void add(Key key, cplx c) {
        if (c == cplx(0.0)) return;
        auto [it, inserted] = terms_.try_emplace(key, c);
        if (!inserted) {
            it->second += c;
            if (it->second == cplx(0.0)) terms_.erase(it);
        }
    }

    static LogLaurent integrate_term(int k, int j, cplx c) {
        if (k == -1) return term(c / static_cast<double>(j + 1), 0, j + 1);
        double kp = k + 1;
        LogLaurent r = term(c / kp, k + 1, j);
        if (j > 0) r += -(static_cast<double>(j) / kp) * integrate_term(k, j - 1, c);
        return r;
    }

    std::map<Key, cplx> terms_;
};

using LogLaurent3 = std::array<LogLaurent, 3>;

inline LogLaurent3 cross(const LogLaurent3& a, const LogLaurent3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace maxface
