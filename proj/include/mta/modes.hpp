#pragma once

#include "expr_parse.hpp"
#include "sl2.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mta {

// Affine mode a(n); degree is -n (all of e,h,f have conformal weight 1).
struct Mode {
    Gen gen;
    long index;

    long degree() const { return -index; }

    friend bool operator==(const Mode& a, const Mode& b) {
        return a.gen == b.gen && a.index == b.index;
    }
    friend bool operator<(const Mode& a, const Mode& b) {
        if (a.index != b.index) return a.index < b.index;
        return static_cast<int>(a.gen) < static_cast<int>(b.gen);
    }

    std::string str() const {
        return std::string(gen_name(gen)) + "(" + std::to_string(index) + ")";
    }
};

using Word = std::vector<Mode>;

inline long word_degree(const Word& w) {
    long d = 0;
    for (const Mode& m : w) d += m.degree();
    return d;
}

inline std::string word_str(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (const Mode& m : w) s += m.str();
    return s;
}

// Finite linear combination of mode words; the working representation of
// enveloping-algebra elements before any reduction.
class ModeExpr {
public:
    using Terms = std::map<Word, LevelScalar>;

    ModeExpr() = default;
    static ModeExpr zero() { return ModeExpr(); }
    static ModeExpr one() { return scalar(LevelScalar(Rat(1))); }
    static ModeExpr scalar(const LevelScalar& s) {
        ModeExpr e;
        e.add_term(Word{}, s);
        return e;
    }
    static ModeExpr mode(Gen g, long n) { return word(Word{Mode{g, n}}); }
    static ModeExpr word(Word w, LevelScalar c = LevelScalar(Rat(1))) {
        ModeExpr e;
        e.add_term(std::move(w), std::move(c));
        return e;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Word w, LevelScalar c) {
        if (c.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(std::move(w), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend ModeExpr operator+(const ModeExpr& a, const ModeExpr& b) {
        ModeExpr r = a;
        for (const auto& [w, c] : b.terms_) r.add_term(w, c);
        return r;
    }
    friend ModeExpr operator-(const ModeExpr& a, const ModeExpr& b) {
        ModeExpr r = a;
        for (const auto& [w, c] : b.terms_) r.add_term(w, -c);
        return r;
    }
    friend ModeExpr operator-(const ModeExpr& a) { return ModeExpr() - a; }
    friend ModeExpr operator*(const LevelScalar& s, const ModeExpr& a) {
        ModeExpr r;
        for (const auto& [w, c] : a.terms_) r.add_term(w, s * c);
        return r;
    }
    friend bool operator==(const ModeExpr& a, const ModeExpr& b) {
        return a.terms_ == b.terms_;
    }

    // Homogeneous degree, if any; empty expression counts as homogeneous.
    std::optional<long> homogeneous_degree() const {
        std::optional<long> d;
        for (const auto& [w, c] : terms_) {
            long wd = word_degree(w);
            if (!d) d = wd;
            else if (*d != wd) return std::nullopt;
        }
        return d ? d : std::optional<long>(0);
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [w, c] : terms_) {
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
            std::string ws = word_str(w);
            if (w.empty()) {
                out += compound ? "(" + cs + ")" : cs;
            } else if (cs == "1" && !compound) {
                out += ws;
            } else {
                out += (compound ? "(" + cs + ")" : cs) + " " + ws;
            }
        }
        return out;
    }

private:
    Terms terms_;
};

// Free (unreduced) concatenation product.
inline ModeExpr word_multiply(const ModeExpr& a, const ModeExpr& b) {
    ModeExpr r;
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            r.add_term(std::move(w), ca * cb);
        }
    return r;
}

// [a(m), b(n)] = [a,b](m+n) + m delta_{m+n,0} (a|b) level.
// with_central=false drops the delta term (used to diagnose derivations that
// only hold after discarding central contributions).
inline ModeExpr affine_bracket(const Mode& x, const Mode& y, const LevelScalar& level,
                               bool with_central = true) {
    ModeExpr r;
    LieElt br = lie_bracket_basis(x.gen, y.gen);
    for (int i = 0; i < 3; ++i) {
        if (!br.c[i].is_zero())
            r.add_term(Word{Mode{static_cast<Gen>(i), x.index + y.index}}, br.c[i]);
    }
    if (with_central && x.index + y.index == 0) {
        Rat form = invariant_form_basis(x.gen, y.gen);
        if (form != 0) r.add_term(Word{}, LevelScalar(Rat(x.index) * form) * level);
    }
    return r;
}

// Leibniz extension of the bracket across words.
inline ModeExpr ad_action(const Mode& x, const ModeExpr& expr, const LevelScalar& level,
                          bool with_central = true) {
    ModeExpr r;
    for (const auto& [w, c] : expr.terms()) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            ModeExpr mid = affine_bracket(x, w[i], level, with_central);
            if (mid.is_zero()) continue;
            ModeExpr left = ModeExpr::word(Word(w.begin(), w.begin() + i));
            ModeExpr right = ModeExpr::word(Word(w.begin() + i + 1, w.end()));
            r = r + (c * word_multiply(word_multiply(left, mid), right));
        }
    }
    return r;
}

// Commutator [w, a] of a word with an expression, expanded by Leibniz:
// [xY, a] = x[Y, a] + [x, a]Y.
inline ModeExpr word_commutator(const Word& w, const ModeExpr& a, const LevelScalar& level,
                                bool with_central = true) {
    if (w.empty()) return ModeExpr::zero();
    if (w.size() == 1) return ad_action(w[0], a, level, with_central);
    Word rest(w.begin() + 1, w.end());
    ModeExpr head = ModeExpr::mode(w[0].gen, w[0].index);
    return word_multiply(head, word_commutator(rest, a, level, with_central)) +
           word_multiply(ad_action(w[0], a, level, with_central), ModeExpr::word(rest));
}

// Windowed coefficient of z^{-1} in the field e(z)^2: sum of :e(j)e(l): over
// j+l = m-1 with |j|,|l| <= window, smaller index put on the left.
inline ModeExpr quadratic_field_mode(long m, long window) {
    if (window < 0) throw std::invalid_argument("window must be >= 0");
    ModeExpr r;
    for (long j = -window; j <= window; ++j) {
        long l = m - 1 - j;
        if (l < -window || l > window) continue;
        Word w = {Mode{Gen::E, std::min(j, l)}, Mode{Gen::E, std::max(j, l)}};
        r.add_term(std::move(w), LevelScalar(Rat(1)));
    }
    return r;
}

// --- mode expression grammar -------------------------------------------------
//
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor (factor | '*' factor | '/' scalar-factor)*
//   factor  := GEN '(' index ')' | '[' expr ',' expr ']' | '(' expr ')' | scalar
//
// `[x,y]` denotes the commutator xy - yx in the free word algebra. Index
// positions take linear expressions in bound parameters.

namespace detail {

ModeExpr parse_mode_sum(Lexer& lx, const IndexBindings& binds);

inline ModeExpr parse_mode_factor(Lexer& lx, const IndexBindings& binds) {
    if (lx.try_consume('[')) {
        ModeExpr a = parse_mode_sum(lx, binds);
        lx.expect(',');
        ModeExpr b = parse_mode_sum(lx, binds);
        lx.expect(']');
        return word_multiply(a, b) - word_multiply(b, a);
    }
    if (lx.peek() == '(') {
        lx.expect('(');
        ModeExpr e = parse_mode_sum(lx, binds);
        lx.expect(')');
        return e;
    }
    if (lx.peek_digit()) return ModeExpr::scalar(LevelScalar(Rat(lx.parse_uint())));
    if (lx.peek_alpha()) {
        std::string id = lx.parse_ident();
        if (id.size() == 1 && (id == "e" || id == "h" || id == "f") && lx.peek() == '(') {
            lx.expect('(');
            long n = parse_index_expr(lx, binds);
            lx.expect(')');
            return ModeExpr::mode(gen_from_char(id[0]), n);
        }
        if (id == "k") return ModeExpr::scalar(LevelScalar::k());
        if (auto it = binds.find(id); it != binds.end())
            return ModeExpr::scalar(LevelScalar(Rat(it->second)));
        lx.fail("unknown symbol '" + id + "' in mode expression");
    }
    lx.fail("expected mode expression factor");
}

inline ModeExpr parse_mode_term(Lexer& lx, const IndexBindings& binds) {
    ModeExpr v = parse_mode_factor(lx, binds);
    for (;;) {
        char c = lx.peek();
        if (c == '*') {
            lx.expect('*');
            v = word_multiply(v, parse_mode_factor(lx, binds));
        } else if (c == '/') {
            lx.expect('/');
            ModeExpr d = parse_mode_factor(lx, binds);
            if (d.terms().size() != 1 || !d.terms().begin()->first.empty())
                lx.fail("can only divide by a scalar");
            LevelScalar inv = LevelScalar(Rat(1)) / d.terms().begin()->second;
            v = inv * v;
        } else if (c == '(' || c == '[' || std::isdigit(static_cast<unsigned char>(c)) ||
                   c == 'e' || c == 'h' || c == 'f' || c == 'k') {
            v = word_multiply(v, parse_mode_factor(lx, binds));
        } else {
            return v;
        }
    }
}

inline ModeExpr parse_mode_sum(Lexer& lx, const IndexBindings& binds) {
    bool neg = lx.try_consume('-');
    if (!neg) lx.try_consume('+');
    ModeExpr v = parse_mode_term(lx, binds);
    if (neg) v = LevelScalar(Rat(-1)) * v;
    while (lx.peek() == '+' || lx.peek() == '-') {
        bool minus = lx.get() == '-';
        ModeExpr t = parse_mode_term(lx, binds);
        v = minus ? v - t : v + t;
    }
    return v;
}

} // namespace detail

inline ModeExpr parse_mode_expr(const std::string& text, const IndexBindings& binds = {}) {
    Lexer lx(text);
    if (lx.eof()) return ModeExpr::zero();
    ModeExpr v = detail::parse_mode_sum(lx, binds);
    if (!lx.eof()) lx.fail("trailing input after mode expression");
    return v;
}

} // namespace mta
