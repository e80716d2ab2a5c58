#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

namespace phase_sentinel {

/// Dense univariate polynomial, coefficients in ascending degree.
struct Poly1 {
    std::vector<double> c;  // c[i] multiplies x^i

    Poly1() = default;
    Poly1(std::initializer_list<double> coeffs) : c(coeffs) {}
    explicit Poly1(std::vector<double> coeffs) : c(std::move(coeffs)) {}

    double eval(double x) const {
        double acc = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    }

    int degree() const {
        for (std::size_t i = c.size(); i-- > 0;)
            if (c[i] != 0.0) return static_cast<int>(i);
        return -1;  // zero polynomial
    }

    double coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c.size())) ? c[static_cast<std::size_t>(i)] : 0.0;
    }

    void set_coeff(int i, double v) {
        if (i >= static_cast<int>(c.size())) c.resize(static_cast<std::size_t>(i) + 1, 0.0);
        c[static_cast<std::size_t>(i)] = v;
    }

    Poly1 derivative() const {
        Poly1 d;
        if (c.size() <= 1) return d;
        d.c.resize(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) d.c[i - 1] = c[i] * static_cast<double>(i);
        return d;
    }

    /// Antiderivative with zero constant term.
    Poly1 antiderivative() const {
        Poly1 a;
        a.c.assign(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) a.c[i + 1] = c[i] / static_cast<double>(i + 1);
        return a;
    }

    Poly1 truncated(int max_deg) const {
        Poly1 t = *this;
        if (static_cast<int>(t.c.size()) > max_deg + 1) t.c.resize(static_cast<std::size_t>(max_deg) + 1);
        return t;
    }

    bool is_zero() const { return degree() < 0; }

    Poly1 operator+(const Poly1& o) const {
        Poly1 r;
        r.c.assign(std::max(c.size(), o.c.size()), 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
        for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
        return r;
    }

    Poly1 operator-(const Poly1& o) const {
        Poly1 r;
        r.c.assign(std::max(c.size(), o.c.size()), 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
        for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] -= o.c[i];
        return r;
    }

    Poly1 operator*(const Poly1& o) const {
        Poly1 r;
        if (c.empty() || o.c.empty()) return r;
        r.c.assign(c.size() + o.c.size() - 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0.0) continue;
            for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
        }
        return r;
    }

    Poly1 operator*(double s) const {
        Poly1 r = *this;
        for (double& v : r.c) v *= s;
        return r;
    }

    /// First nonzero coefficient at or above degree `from`; returns {0.0, -1} if none.
    std::pair<double, int> leading_from(int from, double tol = 0.0) const {
        for (int i = std::max(from, 0); i < static_cast<int>(c.size()); ++i)
            if (std::abs(c[static_cast<std::size_t>(i)]) > tol) return {c[static_cast<std::size_t>(i)], i};
        return {0.0, -1};
    }
};

/// Sparse bivariate polynomial keyed by (i, j) for x^i y^j.
struct Poly2 {
    std::map<std::pair<int, int>, double> m;

    static Poly2 monomial(int i, int j, double v) {
        Poly2 p;
        if (v != 0.0) p.m[{i, j}] = v;
        return p;
    }

    double coeff(int i, int j) const {
        auto it = m.find({i, j});
        return it == m.end() ? 0.0 : it->second;
    }

    void add_term(int i, int j, double v) {
        if (v == 0.0) return;
        auto [it, inserted] = m.try_emplace({i, j}, v);
        if (!inserted) {
            it->second += v;
            if (it->second == 0.0) m.erase(it);
        }
    }

    double eval(double x, double y) const {
        // grouped by power of y so each power is computed once
        double acc = 0.0;
        for (const auto& [ij, v] : m) acc += v * std::pow(x, ij.first) * std::pow(y, ij.second);
        return acc;
    }

    bool is_zero() const { return m.empty(); }

    int total_degree() const {
        int d = -1;
        for (const auto& [ij, v] : m) d = std::max(d, ij.first + ij.second);
        return d;
    }

    Poly2 operator+(const Poly2& o) const {
        Poly2 r = *this;
        for (const auto& [ij, v] : o.m) r.add_term(ij.first, ij.second, v);
        return r;
    }

    Poly2 operator-(const Poly2& o) const {
        Poly2 r = *this;
        for (const auto& [ij, v] : o.m) r.add_term(ij.first, ij.second, -v);
        return r;
    }

    Poly2 operator*(const Poly2& o) const {
        Poly2 r;
        for (const auto& [a, va] : m)
            for (const auto& [b, vb] : o.m) r.add_term(a.first + b.first, a.second + b.second, va * vb);
        return r;
    }

    Poly2 operator*(double s) const {
        Poly2 r;
        if (s == 0.0) return r;
        for (const auto& [ij, v] : m) r.m[ij] = v * s;
        return r;
    }

    Poly2 dx() const {
        Poly2 r;
        for (const auto& [ij, v] : m)
            if (ij.first > 0) r.add_term(ij.first - 1, ij.second, v * ij.first);
        return r;
    }

    Poly2 dy() const {
        Poly2 r;
        for (const auto& [ij, v] : m)
            if (ij.second > 0) r.add_term(ij.first, ij.second - 1, v * ij.second);
        return r;
    }

    /// Substitute y = s(x), truncating at x^max_deg.
    Poly1 compose_y(const Poly1& s, int max_deg) const {
        Poly1 out;
        out.c.assign(static_cast<std::size_t>(max_deg) + 1, 0.0);
        // cache powers of s up to the needed y-degree
        int max_j = 0;
        for (const auto& [ij, v] : m) max_j = std::max(max_j, ij.second);
        std::vector<Poly1> spow(static_cast<std::size_t>(max_j) + 1);
        spow[0] = Poly1{1.0};
        for (int j = 1; j <= max_j; ++j) spow[static_cast<std::size_t>(j)] = (spow[static_cast<std::size_t>(j - 1)] * s).truncated(max_deg);
        for (const auto& [ij, v] : m) {
            if (ij.first > max_deg) continue;
            const Poly1& p = spow[static_cast<std::size_t>(ij.second)];
            for (int k = 0; k + ij.first <= max_deg && k < static_cast<int>(p.c.size()); ++k)
                out.c[static_cast<std::size_t>(k + ij.first)] += v * p.c[static_cast<std::size_t>(k)];
        }
        return out;
    }

    /// Translate the origin: p(x + x0, y + y0).
    Poly2 shifted(double x0, double y0) const {
        Poly2 r;
        for (const auto& [ij, v] : m) {
            // binomial expansion of (x+x0)^i (y+y0)^j
            std::vector<double> bx(static_cast<std::size_t>(ij.first) + 1), by(static_cast<std::size_t>(ij.second) + 1);
            double p = 1.0;
            for (int k = ij.first; k >= 0; --k) { bx[static_cast<std::size_t>(k)] = p; p *= x0; }
            double binom = 1.0;
            for (int k = 0; k <= ij.first; ++k) {
                bx[static_cast<std::size_t>(k)] *= binom;
                binom = binom * (ij.first - k) / (k + 1);
            }
            p = 1.0;
            for (int k = ij.second; k >= 0; --k) { by[static_cast<std::size_t>(k)] = p; p *= y0; }
            binom = 1.0;
            for (int k = 0; k <= ij.second; ++k) {
                by[static_cast<std::size_t>(k)] *= binom;
                binom = binom * (ij.second - k) / (k + 1);
            }
            for (int ii = 0; ii <= ij.first; ++ii)
                for (int jj = 0; jj <= ij.second; ++jj) r.add_term(ii, jj, v * bx[static_cast<std::size_t>(ii)] * by[static_cast<std::size_t>(jj)]);
        }
        return r;
    }

    /// Keep only terms with total degree in [lo, hi].
    Poly2 degree_slice(int lo, int hi) const {
        Poly2 r;
        for (const auto& [ij, v] : m) {
            int d = ij.first + ij.second;
            if (d >= lo && d <= hi) r.m[ij] = v;
        }
        return r;
    }
};

}  // namespace phase_sentinel
