#pragma once

#include "rational.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mta {

struct PoleError : std::runtime_error {
    explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

// Univariate polynomial in the formal level symbol k, dense coefficients,
// c[i] = coefficient of k^i, no trailing zeros.
struct PolyK {
    std::vector<Rat> c;

    PolyK() = default;
    explicit PolyK(Rat r) {
        if (r != 0) c.push_back(std::move(r));
    }

    static PolyK variable() {
        PolyK p;
        p.c = {Rat(0), Rat(1)};
        return p;
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const Rat& leading() const { return c.back(); }

    friend bool operator==(const PolyK& a, const PolyK& b) { return a.c == b.c; }

    friend PolyK operator+(const PolyK& a, const PolyK& b) {
        PolyK r;
        r.c.resize(std::max(a.c.size(), b.c.size()));
        for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
        r.trim();
        return r;
    }
    friend PolyK operator-(const PolyK& a) {
        PolyK r = a;
        for (auto& x : r.c) x = -x;
        return r;
    }
    friend PolyK operator-(const PolyK& a, const PolyK& b) { return a + (-b); }
    friend PolyK operator*(const PolyK& a, const PolyK& b) {
        PolyK r;
        if (a.is_zero() || b.is_zero()) return r;
        r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j)
                r.c[i + j] += a.c[i] * b.c[j];
        r.trim();
        return r;
    }

    PolyK scaled(const Rat& s) const {
        if (s == 0) return PolyK{};
        PolyK r = *this;
        for (auto& x : r.c) x *= s;
        return r;
    }

    // Euclidean division; denominator must be nonzero.
    static void divmod(const PolyK& a, const PolyK& b, PolyK& q, PolyK& r) {
        q = PolyK{};
        r = a;
        if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int shift = r.degree() - b.degree();
            Rat factor = r.leading() / b.leading();
            PolyK term;
            term.c.assign(shift + 1, Rat(0));
            term.c[shift] = factor;
            q = q + term;
            r = r - term * b;
        }
    }

    static PolyK gcd(PolyK a, PolyK b) {
        while (!b.is_zero()) {
            PolyK q, r;
            divmod(a, b, q, r);
            a = b;
            b = r;
        }
        if (!a.is_zero()) a = a.scaled(Rat(1) / a.leading()); // monic
        return a;
    }

    Rat eval(const Rat& v) const {
        Rat acc = 0;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * v + c[i];
        return acc;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const Rat& co = c[i];
            if (co == 0) continue;
            Rat a = co;
            if (first) {
                if (a < 0) { out += "-"; a = -a; }
            } else {
                out += (a < 0) ? " - " : " + ";
                if (a < 0) a = -a;
            }
            std::string mono = i == 0 ? "" : (i == 1 ? "k" : "k^" + std::to_string(i));
            if (mono.empty()) out += rat_to_string(a);
            else if (a == 1) out += mono;
            else out += rat_to_string(a) + "*" + mono;
            first = false;
        }
        return out;
    }
};

// Rational function in k. Canonical form: gcd-reduced, monic denominator.
class LevelScalar {
public:
    LevelScalar() : num_(), den_(Rat(1)) {}
    LevelScalar(const Rat& r) : num_(r), den_(Rat(1)) {} // NOLINT: implicit by design
    LevelScalar(long n) : num_(Rat(n)), den_(Rat(1)) {}  // NOLINT
    LevelScalar(PolyK n, PolyK d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    static LevelScalar k() { return LevelScalar(PolyK::variable(), PolyK(Rat(1))); }

    const PolyK& num() const { return num_; }
    const PolyK& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_ == PolyK(Rat(1)) && num_ == PolyK(Rat(1)); }
    bool is_constant() const { return num_.degree() <= 0 && den_ == PolyK(Rat(1)); }

    // Exact only for constant scalars.
    Rat as_rat() const {
        if (!is_constant()) throw std::invalid_argument("scalar is not constant: " + str());
        return num_.is_zero() ? Rat(0) : num_.c[0];
    }

    friend bool operator==(const LevelScalar& a, const LevelScalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const LevelScalar& a, const LevelScalar& b) { return !(a == b); }

    friend LevelScalar operator+(const LevelScalar& a, const LevelScalar& b) {
        return LevelScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend LevelScalar operator-(const LevelScalar& a) {
        LevelScalar r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend LevelScalar operator-(const LevelScalar& a, const LevelScalar& b) { return a + (-b); }
    friend LevelScalar operator*(const LevelScalar& a, const LevelScalar& b) {
        return LevelScalar(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend LevelScalar operator/(const LevelScalar& a, const LevelScalar& b) {
        if (b.is_zero()) throw std::invalid_argument("division by zero scalar");
        return LevelScalar(a.num_ * b.den_, a.den_ * b.num_);
    }
    LevelScalar& operator+=(const LevelScalar& o) { return *this = *this + o; }
    LevelScalar& operator-=(const LevelScalar& o) { return *this = *this - o; }
    LevelScalar& operator*=(const LevelScalar& o) { return *this = *this * o; }
    LevelScalar& operator/=(const LevelScalar& o) { return *this = *this / o; }

    Rat specialize(const Rat& v) const {
        Rat d = den_.eval(v);
        if (d == 0) throw PoleError("pole of " + str() + " at k = " + rat_to_string(v));
        return num_.eval(v) / d;
    }

    std::string str() const {
        if (den_ == PolyK(Rat(1))) return num_.str();
        std::string n = num_.str();
        if (num_.degree() > 0 || num_.c.size() > 1) n = "(" + n + ")";
        return n + "/(" + den_.str() + ")";
    }

    // Deterministic ordering so scalars can key maps if ever needed.
    friend bool operator<(const LevelScalar& a, const LevelScalar& b) {
        if (a.num_.c != b.num_.c) return a.num_.c < b.num_.c;
        return a.den_.c < b.den_.c;
    }

private:
    void normalize() {
        if (den_.is_zero()) throw std::invalid_argument("zero denominator");
        if (num_.is_zero()) {
            den_ = PolyK(Rat(1));
            return;
        }
        PolyK g = PolyK::gcd(num_, den_);
        if (g.degree() > 0) {
            PolyK q, r;
            PolyK::divmod(num_, g, q, r);
            num_ = q;
            PolyK::divmod(den_, g, q, r);
            den_ = q;
        }
        Rat lead = den_.leading();
        if (lead != 1) {
            den_ = den_.scaled(Rat(1) / lead);
            num_ = num_.scaled(Rat(1) / lead);
        }
    }

    PolyK num_;
    PolyK den_;
};

enum class ScalarOp { Add, Sub, Mul, Div };

inline LevelScalar scalar_arith(const LevelScalar& a, const LevelScalar& b, ScalarOp op) {
    switch (op) {
        case ScalarOp::Add: return a + b;
        case ScalarOp::Sub: return a - b;
        case ScalarOp::Mul: return a * b;
        case ScalarOp::Div: return a / b;
    }
    throw std::logic_error("bad op");
}

inline Rat specialize_level(const LevelScalar& a, const Rat& v) { return a.specialize(v); }

} // namespace mta
