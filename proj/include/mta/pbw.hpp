#pragma once

#include "expr_parse.hpp"
#include "sl2.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace mta {

// U(sl2) over LevelScalar in the PBW order f^a h^b e^c.
class PbwElt {
public:
    using Mono = std::array<long, 3>; // exponents of (f, h, e)
    using Terms = std::map<Mono, LevelScalar>;

    PbwElt() = default;
    static PbwElt zero() { return PbwElt(); }
    static PbwElt one() { return scalar(LevelScalar(Rat(1))); }
    static PbwElt scalar(const LevelScalar& s) {
        PbwElt x;
        x.add_term({0, 0, 0}, s);
        return x;
    }
    static PbwElt gen(Gen g) {
        PbwElt x;
        Mono m{0, 0, 0};
        switch (g) {
            case Gen::F: m[0] = 1; break;
            case Gen::H: m[1] = 1; break;
            case Gen::E: m[2] = 1; break;
        }
        x.add_term(m, LevelScalar(Rat(1)));
        return x;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Mono m, const LevelScalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend PbwElt operator+(const PbwElt& a, const PbwElt& b) {
        PbwElt r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend PbwElt operator-(const PbwElt& a, const PbwElt& b) {
        PbwElt r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    friend PbwElt operator-(const PbwElt& a) { return PbwElt() - a; }
    friend PbwElt operator*(const LevelScalar& s, const PbwElt& a) {
        PbwElt r;
        for (const auto& [m, c] : a.terms_) r.add_term(m, s * c);
        return r;
    }
    friend bool operator==(const PbwElt& a, const PbwElt& b) { return a.terms_ == b.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            std::string cs = c.str();
            bool neg = false;
            if (cs.size() > 1 && cs[0] == '-' && cs.find(' ') == std::string::npos) {
                neg = true;
                cs = cs.substr(1);
            }
            bool compound = cs.find(' ') != std::string::npos;
            if (first) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            first = false;
            std::string ms = mono_str(m);
            if (ms.empty()) {
                out += compound ? "(" + cs + ")" : cs;
            } else if (cs == "1" && !compound) {
                out += ms;
            } else {
                out += (compound ? "(" + cs + ")" : cs) + " " + ms;
            }
        }
        return out;
    }

    static std::string mono_str(const Mono& m) {
        std::string s;
        const char* names[3] = {"f", "h", "e"};
        for (int i = 0; i < 3; ++i) {
            if (m[i] == 0) continue;
            if (!s.empty()) s += " ";
            s += names[i];
            if (m[i] > 1) s += "^" + std::to_string(m[i]);
        }
        return s;
    }

private:
    Terms terms_;
};

namespace detail {

inline Rat binomial(long n, long j) {
    Rat r = 1;
    for (long i = 0; i < j; ++i) r = r * Rat(n - i) / Rat(i + 1);
    return r;
}

// Left multiplication of a PBW monomial by a single generator, straightened
// with he = eh + 2e, hf = fh - 2f, ef = fe + h.
inline PbwElt left_mul_gen(Gen g, const PbwElt::Mono& m, const LevelScalar& coeff) {
    PbwElt r;
    long a = m[0], b = m[1], c = m[2];
    switch (g) {
        case Gen::F:
            r.add_term({a + 1, b, c}, coeff);
            break;
        case Gen::H:
            // h f^a = f^a h - 2a f^a
            r.add_term({a, b + 1, c}, coeff);
            r.add_term({a, b, c}, LevelScalar(Rat(-2 * a)) * coeff);
            break;
        case Gen::E:
            // e f^a = f^a e + a f^{a-1}(h - a + 1); e h^b = (h-2)^b e
            for (long j = 0; j <= b; ++j) {
                Rat bin = binomial(b, j);
                Rat pw = 1;
                for (long t = 0; t < b - j; ++t) pw *= -2;
                r.add_term({a, j, c + 1}, LevelScalar(bin * pw) * coeff);
            }
            if (a > 0) {
                r.add_term({a - 1, b + 1, c}, LevelScalar(Rat(a)) * coeff);
                r.add_term({a - 1, b, c}, LevelScalar(Rat(-a * (a - 1))) * coeff);
            }
            break;
    }
    return r;
}

inline PbwElt left_mul_gen(Gen g, const PbwElt& x) {
    PbwElt r;
    for (const auto& [m, c] : x.terms()) r = r + left_mul_gen(g, m, c);
    return r;
}

} // namespace detail

inline PbwElt pbw_mul(const PbwElt& x, const PbwElt& y) {
    PbwElt r;
    for (const auto& [m, c] : x.terms()) {
        PbwElt acc = y;
        for (long i = 0; i < m[2]; ++i) acc = detail::left_mul_gen(Gen::E, acc);
        for (long i = 0; i < m[1]; ++i) acc = detail::left_mul_gen(Gen::H, acc);
        for (long i = 0; i < m[0]; ++i) acc = detail::left_mul_gen(Gen::F, acc);
        r = r + (c * acc);
    }
    return r;
}

// Casimir element 4fe + h^2 + 2h.
inline PbwElt casimir() {
    PbwElt w;
    w.add_term({1, 0, 1}, LevelScalar(Rat(4)));
    w.add_term({0, 2, 0}, LevelScalar(Rat(1)));
    w.add_term({0, 1, 0}, LevelScalar(Rat(2)));
    return w;
}

// Anti-automorphism e <-> f, h -> h. In the f^a h^b e^c order this swaps the
// outer exponents: tau(f^a h^b e^c) = f^c h^b e^a, already canonical.
inline PbwElt transpose_tau(const PbwElt& x) {
    PbwElt r;
    for (const auto& [m, c] : x.terms()) r.add_term({m[2], m[1], m[0]}, c);
    return r;
}

// Evaluation at the cyclic vector w of U(sl2)/(U f + U (h+k)):
// basis {e^n w}, f w = 0, h w = -k w. Returns the coefficient of w.
inline LevelScalar witness_phi(const PbwElt& x) {
    using Vec = std::map<long, LevelScalar>; // n -> coeff of e^n w
    const LevelScalar k = LevelScalar::k();
    auto h_weight = [&](long n) { return LevelScalar(Rat(2 * n)) - k; };
    // f e^n w = e (f e^{n-1} w) - (2(n-1) - k) e^{n-1} w
    std::vector<Vec> f_en = {Vec{}};
    auto f_on_basis = [&](long n) -> const Vec& {
        while (static_cast<long>(f_en.size()) <= n) {
            long m = static_cast<long>(f_en.size());
            Vec v;
            for (const auto& [i, c] : f_en[m - 1]) v[i + 1] = c;
            auto& slot = v[m - 1];
            slot = slot - h_weight(m - 1);
            if (slot.is_zero()) v.erase(m - 1);
            f_en.push_back(std::move(v));
        }
        return f_en[n];
    };
    LevelScalar out;
    for (const auto& [m, c] : x.terms()) {
        Vec v;
        v[m[2]] = LevelScalar(Rat(1)); // e^c w
        if (m[1] > 0) {
            for (auto& [n, cv] : v) {
                LevelScalar wgt = h_weight(n);
                for (long i = 0; i < m[1]; ++i) cv *= wgt;
            }
        }
        for (long i = 0; i < m[0]; ++i) {
            Vec next;
            for (const auto& [n, cv] : v) {
                for (const auto& [j, fc] : f_on_basis(n)) {
                    auto& slot = next[j];
                    slot += cv * fc;
                    if (slot.is_zero()) next.erase(j);
                }
            }
            v = std::move(next);
        }
        auto it = v.find(0);
        if (it != v.end()) out += c * it->second;
    }
    return out;
}

// --- the 5-dimensional Zhu algebra of L(1,0) ---------------------------------

// Coefficients on the ordered basis (1, e, f, h, ef).
struct ZhuL10Elt {
    std::array<LevelScalar, 5> c{};

    static constexpr int B1 = 0, BE = 1, BF = 2, BH = 3, BEF = 4;
    static const char* basis_name(int i) {
        static const char* names[5] = {"1", "e", "f", "h", "ef"};
        return names[i];
    }

    static ZhuL10Elt basis(int i) {
        ZhuL10Elt x;
        x.c[i] = Rat(1);
        return x;
    }
    static ZhuL10Elt zero() { return ZhuL10Elt{}; }
    static ZhuL10Elt one() { return basis(B1); }

    bool is_zero() const {
        for (const auto& v : c)
            if (!v.is_zero()) return false;
        return true;
    }
    friend ZhuL10Elt operator+(const ZhuL10Elt& a, const ZhuL10Elt& b) {
        ZhuL10Elt r;
        for (int i = 0; i < 5; ++i) r.c[i] = a.c[i] + b.c[i];
        return r;
    }
    friend ZhuL10Elt operator-(const ZhuL10Elt& a, const ZhuL10Elt& b) {
        ZhuL10Elt r;
        for (int i = 0; i < 5; ++i) r.c[i] = a.c[i] - b.c[i];
        return r;
    }
    friend ZhuL10Elt operator*(const LevelScalar& s, const ZhuL10Elt& a) {
        ZhuL10Elt r;
        for (int i = 0; i < 5; ++i) r.c[i] = s * a.c[i];
        return r;
    }
    friend bool operator==(const ZhuL10Elt& a, const ZhuL10Elt& b) { return a.c == b.c; }

    std::string str() const {
        std::string out;
        bool first = true;
        for (int i = 0; i < 5; ++i) {
            if (c[i].is_zero()) continue;
            std::string cs = c[i].str();
            bool neg = false;
            if (cs.size() > 1 && cs[0] == '-' && cs.find(' ') == std::string::npos) {
                neg = true;
                cs = cs.substr(1);
            }
            if (first) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            first = false;
            if (i == B1) out += cs;
            else if (cs == "1") out += basis_name(i);
            else out += cs + " " + basis_name(i);
        }
        return out.empty() ? "0" : out;
    }
};

namespace detail {

// Left multiplication by a generator in U(sl2)/<e^2>, derived from
// e^2 = f^2 = 0, eh = -e, hf = -f, h^2 = 2ef - h.
inline ZhuL10Elt zhu_left_gen(Gen g, const ZhuL10Elt& y) {
    using Z = ZhuL10Elt;
    ZhuL10Elt r;
    auto add = [&](int idx, const LevelScalar& s) { r.c[idx] += s; };
    switch (g) {
        case Gen::E:
            add(Z::BE, y.c[Z::B1]);                 // e*1
            add(Z::BEF, y.c[Z::BF]);                // e*f = ef
            add(Z::BE, -y.c[Z::BH]);                // e*h = -e
            break;                                   // e*e = 0, e*ef = 0
        case Gen::F:
            add(Z::BF, y.c[Z::B1]);                 // f*1
            add(Z::BEF, y.c[Z::BE]);                // f*e = ef - h
            add(Z::BH, -y.c[Z::BE]);
            add(Z::BF, y.c[Z::BH]);                 // f*h = f
            add(Z::BF, y.c[Z::BEF]);                // f*ef = f
            break;                                   // f*f = 0
        case Gen::H:
            add(Z::BH, y.c[Z::B1]);                 // h*1
            add(Z::BE, y.c[Z::BE]);                 // h*e = e
            add(Z::BF, -y.c[Z::BF]);                // h*f = -f
            add(Z::BEF, LevelScalar(Rat(2)) * y.c[Z::BH]); // h*h = 2ef - h
            add(Z::BH, -y.c[Z::BH]);
            add(Z::BEF, y.c[Z::BEF]);               // h*ef = ef
            break;
    }
    return r;
}

} // namespace detail

// Canonical image of a U(sl2) element in U(sl2)/<e^2> at level 1.
// Coefficients are specialized at k = 1 (pole there is an error).
inline ZhuL10Elt zhu_project(const PbwElt& x) {
    ZhuL10Elt out;
    for (const auto& [m, c] : x.terms()) {
        ZhuL10Elt v = ZhuL10Elt::one();
        for (long i = 0; i < m[2]; ++i) v = detail::zhu_left_gen(Gen::E, v);
        for (long i = 0; i < m[1]; ++i) v = detail::zhu_left_gen(Gen::H, v);
        for (long i = 0; i < m[0]; ++i) v = detail::zhu_left_gen(Gen::F, v);
        out = out + (LevelScalar(c.specialize(Rat(1))) * v);
    }
    return out;
}

inline ZhuL10Elt zhu_mul(const ZhuL10Elt& x, const ZhuL10Elt& y) {
    using Z = ZhuL10Elt;
    ZhuL10Elt out;
    out = out + (x.c[Z::B1] * y);
    out = out + (x.c[Z::BE] * detail::zhu_left_gen(Gen::E, y));
    out = out + (x.c[Z::BF] * detail::zhu_left_gen(Gen::F, y));
    out = out + (x.c[Z::BH] * detail::zhu_left_gen(Gen::H, y));
    out = out + (x.c[Z::BEF] * detail::zhu_left_gen(Gen::E, detail::zhu_left_gen(Gen::F, y)));
    return out;
}

// --- PBW expression grammar --------------------------------------------------
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (factor | '*' factor | '/' scalar-factor)*
//   factor := ('e'|'h'|'f') ['^' INT] | 'k' | INT | '(' expr ')'
//
// Letters may be juxtaposed inside one identifier, e.g. `4fe`, `ef - fe`.

namespace detail {

PbwElt parse_pbw_sum(Lexer& lx);

inline PbwElt parse_pbw_factor(Lexer& lx) {
    if (lx.try_consume('(')) {
        PbwElt v = parse_pbw_sum(lx);
        lx.expect(')');
        return v;
    }
    if (lx.peek_digit()) return PbwElt::scalar(LevelScalar(Rat(lx.parse_uint())));
    if (lx.peek_alpha()) {
        std::string id = lx.parse_ident();
        PbwElt v = PbwElt::one();
        for (std::size_t i = 0; i < id.size(); ++i) {
            char ch = id[i];
            PbwElt letter;
            if (ch == 'k') letter = PbwElt::scalar(LevelScalar::k());
            else if (ch == 'e' || ch == 'h' || ch == 'f') letter = PbwElt::gen(gen_from_char(ch));
            else lx.fail(std::string("unknown PBW symbol '") + ch + "'");
            if (i + 1 == id.size() && lx.try_consume('^')) {
                BigInt n = lx.parse_uint();
                PbwElt p = PbwElt::one();
                for (BigInt t = 0; t < n; ++t) p = pbw_mul(p, letter);
                letter = p;
            }
            v = pbw_mul(v, letter);
        }
        return v;
    }
    lx.fail("expected PBW factor");
}

inline PbwElt parse_pbw_term(Lexer& lx) {
    PbwElt v = parse_pbw_factor(lx);
    for (;;) {
        char c = lx.peek();
        if (c == '*') {
            lx.expect('*');
            v = pbw_mul(v, parse_pbw_factor(lx));
        } else if (c == '/') {
            lx.expect('/');
            PbwElt d = parse_pbw_factor(lx);
            if (d.terms().size() != 1 || d.terms().begin()->first != PbwElt::Mono{0, 0, 0})
                lx.fail("can only divide by a scalar");
            v = (LevelScalar(Rat(1)) / d.terms().begin()->second) * v;
        } else if (c == '(' || std::isdigit(static_cast<unsigned char>(c)) ||
                   std::isalpha(static_cast<unsigned char>(c))) {
            v = pbw_mul(v, parse_pbw_factor(lx));
        } else {
            return v;
        }
    }
}

inline PbwElt parse_pbw_sum(Lexer& lx) {
    bool neg = lx.try_consume('-');
    if (!neg) lx.try_consume('+');
    PbwElt v = parse_pbw_term(lx);
    if (neg) v = -v;
    while (lx.peek() == '+' || lx.peek() == '-') {
        bool minus = lx.get() == '-';
        PbwElt t = parse_pbw_term(lx);
        v = minus ? v - t : v + t;
    }
    return v;
}

} // namespace detail

inline PbwElt parse_pbw_expr(const std::string& text) {
    Lexer lx(text);
    if (lx.eof()) return PbwElt::zero();
    PbwElt v = detail::parse_pbw_sum(lx);
    if (!lx.eof()) lx.fail("trailing input after PBW expression");
    return v;
}

} // namespace mta
