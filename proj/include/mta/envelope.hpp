#pragma once

#include "modes.hpp"
#include "pbw.hpp"

#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mta {

namespace detail {

enum class DeathRule { None, TrailingPositive, LeadingNegative };

// PBW straightening in the enveloping algebra of sl2-hat at the given level:
// modes are sorted by (index, generator); each out-of-order swap spawns the
// bracket word, so the loop terminates (length decreases or inversions do).
// Words matching the death rule are classes of 0 and are dropped outright.
inline ModeExpr straighten(const ModeExpr& x, const LevelScalar& level, DeathRule death,
                           bool with_central = true) {
    ModeExpr out;
    std::deque<std::pair<Word, LevelScalar>> work(x.terms().begin(), x.terms().end());
    while (!work.empty()) {
        auto [w, c] = std::move(work.front());
        work.pop_front();
        if (!w.empty()) {
            if (death == DeathRule::TrailingPositive && w.back().index > 0) continue;
            if (death == DeathRule::LeadingNegative && w.front().index < 0) continue;
        }
        std::size_t i = 0;
        bool sorted = true;
        for (; i + 1 < w.size(); ++i) {
            if (w[i + 1] < w[i]) {
                sorted = false;
                break;
            }
        }
        if (sorted) {
            out.add_term(std::move(w), std::move(c));
            continue;
        }
        Word swapped = w;
        std::swap(swapped[i], swapped[i + 1]);
        work.emplace_back(std::move(swapped), c);
        ModeExpr br = affine_bracket(w[i], w[i + 1], level, with_central);
        for (const auto& [bw, bc] : br.terms()) {
            Word nw(w.begin(), w.begin() + i);
            nw.insert(nw.end(), bw.begin(), bw.end());
            nw.insert(nw.end(), w.begin() + i + 2, w.end());
            work.emplace_back(std::move(nw), c * bc);
        }
    }
    return out;
}

inline long require_homogeneous(const ModeExpr& x, const char* who) {
    auto d = x.homogeneous_degree();
    if (!d) throw std::invalid_argument(std::string(who) + ": non-homogeneous input " + x.str());
    return *d;
}

} // namespace detail

// Full PBW normal form in U~(sl2-hat, k); the equality workhorse for exact
// derivation checking: x = y in the enveloping algebra iff
// envelope_normalize(x - y) is zero.
inline ModeExpr envelope_normalize(const ModeExpr& x, const LevelScalar& level,
                                   bool with_central = true) {
    return detail::straighten(x, level, detail::DeathRule::None, with_central);
}

struct LeftClass {
    ModeExpr expr; // canonical: indices <= 0, sorted, zero modes trailing
    long degree = 0;
};

struct RightClass {
    ModeExpr expr; // canonical: indices >= 0, sorted, zero modes leading
    long degree = 0;
};

inline LeftClass reduce_mod_left(const ModeExpr& x, const LevelScalar& level) {
    long d = detail::require_homogeneous(x, "reduce_mod_left");
    if (d < 0)
        throw std::invalid_argument("reduce_mod_left: degree must be >= 0, got " +
                                    std::to_string(d));
    return LeftClass{detail::straighten(x, level, detail::DeathRule::TrailingPositive), d};
}

inline RightClass reduce_mod_right(const ModeExpr& x, const LevelScalar& level) {
    long d = detail::require_homogeneous(x, "reduce_mod_right");
    if (d > 0)
        throw std::invalid_argument("reduce_mod_right: degree must be <= 0, got " +
                                    std::to_string(d));
    return RightClass{detail::straighten(x, level, detail::DeathRule::LeadingNegative), d};
}

// Zero-index word -> element of U(sl2).
inline PbwElt zero_mode_word_to_pbw(const ModeExpr& x) {
    PbwElt out;
    for (const auto& [w, c] : x.terms()) {
        PbwElt acc = PbwElt::one();
        for (const Mode& m : w) {
            if (m.index != 0)
                throw std::invalid_argument("expected zero-index word, got " + word_str(w));
            acc = pbw_mul(acc, PbwElt::gen(m.gen));
        }
        out = out + (c * acc);
    }
    return out;
}

// The circled-star pairing: 0 unless degrees cancel, else the degree-0
// reduction of beta * alpha rendered in U(sl2) via a(0) -> a.
inline PbwElt pairing_circledast(const RightClass& beta, const LeftClass& alpha,
                                 const LevelScalar& level) {
    if (beta.degree + alpha.degree != 0) return PbwElt::zero();
    ModeExpr prod = word_multiply(beta.expr, alpha.expr);
    if (prod.is_zero()) return PbwElt::zero();
    LeftClass red = reduce_mod_left(prod, level);
    return zero_mode_word_to_pbw(red.expr);
}

// --- the bidegree-(1,-1) vacuum algebra A_1 ----------------------------------

// Sum of triples a(-1) (x) u (x) b(1); absent a or b means the triple lives in
// bidegree (0,*) or (*,0) respectively.
struct A1Elt {
    struct Triple {
        std::optional<Gen> a; // left a(-1)
        PbwElt u;
        std::optional<Gen> b; // right b(1)
    };
    std::vector<Triple> triples;

    static A1Elt triple(std::optional<Gen> a, PbwElt u, std::optional<Gen> b) {
        A1Elt x;
        x.triples.push_back({a, std::move(u), b});
        return x;
    }

    // Collect middles by (left, right) shape; deterministic order.
    std::map<std::pair<int, int>, PbwElt> collected() const {
        std::map<std::pair<int, int>, PbwElt> m;
        for (const auto& t : triples) {
            int a = t.a ? static_cast<int>(*t.a) : -1;
            int b = t.b ? static_cast<int>(*t.b) : -1;
            auto& slot = m[{a, b}];
            slot = slot + t.u;
        }
        for (auto it = m.begin(); it != m.end();) {
            if (it->second.is_zero()) it = m.erase(it);
            else ++it;
        }
        return m;
    }

    friend bool operator==(const A1Elt& x, const A1Elt& y) {
        return x.collected() == y.collected();
    }

    std::string str() const {
        auto m = collected();
        if (m.empty()) return "0";
        std::string out;
        for (const auto& [key, u] : m) {
            if (!out.empty()) out += " + ";
            std::string us = u.str();
            if (us.find(' ') != std::string::npos || us.find('+') != std::string::npos)
                us = "(" + us + ")";
            std::string left = key.first < 0
                                   ? ""
                                   : std::string(gen_name(static_cast<Gen>(key.first))) + "(-1) (x) ";
            std::string right = key.second < 0
                                    ? ""
                                    : std::string(" (x) ") + gen_name(static_cast<Gen>(key.second)) + "(1)";
            out += left + us + right;
        }
        return out;
    }
};

// a(-1) (x) u (x) b(1)  star  a'(-1) (x) u' (x) b'(1)
//   = a(-1) (x) u ([b,a'] + (b|a') k) u' (x) b'(1).
inline A1Elt a1_star(const A1Elt& x, const A1Elt& y, const LevelScalar& level) {
    A1Elt out;
    for (const auto& tx : x.triples) {
        for (const auto& ty : y.triples) {
            if (tx.b.has_value() != ty.a.has_value()) continue; // bidegree mismatch
            PbwElt mid = PbwElt::one();
            if (tx.b) {
                LieElt br = lie_bracket_basis(*tx.b, *ty.a);
                mid = PbwElt::zero();
                for (int i = 0; i < 3; ++i)
                    if (!br.c[i].is_zero()) mid = mid + (br.c[i] * PbwElt::gen(static_cast<Gen>(i)));
                mid = mid + PbwElt::scalar(LevelScalar(invariant_form_basis(*tx.b, *ty.a)) * level);
            }
            PbwElt u = pbw_mul(pbw_mul(tx.u, mid), ty.u);
            if (!u.is_zero()) out.triples.push_back({tx.a, std::move(u), ty.b});
        }
    }
    return out;
}

} // namespace mta
