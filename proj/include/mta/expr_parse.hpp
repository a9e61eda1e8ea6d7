#pragma once

#include "level_scalar.hpp"

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>

namespace mta {

struct ParseError : std::invalid_argument {
    explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

// Character-level cursor shared by the scalar, mode and PBW grammars.
class Lexer {
public:
    explicit Lexer(std::string text) : s_(std::move(text)) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eof() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    char get() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input: " + s_);
        return s_[pos_++];
    }
    bool try_consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!try_consume(c)) fail(std::string("expected '") + c + "'");
    }
    bool peek_digit() { return std::isdigit(static_cast<unsigned char>(peek())); }
    bool peek_alpha() { return std::isalpha(static_cast<unsigned char>(peek())); }

    BigInt parse_uint() {
        skip_ws();
        if (!peek_digit()) fail("expected integer");
        std::string digits;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            digits += s_[pos_++];
        return BigInt(digits);
    }
    std::string parse_ident() {
        skip_ws();
        if (!peek_alpha()) fail("expected identifier");
        std::string id;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            id += s_[pos_++];
        return id;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
    }

private:
    std::string s_;
    std::size_t pos_ = 0;
};

// Scalar grammar: rationals and polynomials in `k`, with + - * / ^ and
// parentheses; juxtaposition multiplies, e.g. `k(k+2)`.
namespace detail {

LevelScalar parse_scalar_sum(Lexer& lx);

inline LevelScalar parse_scalar_primary(Lexer& lx) {
    if (lx.try_consume('(')) {
        LevelScalar v = parse_scalar_sum(lx);
        lx.expect(')');
        return v;
    }
    if (lx.peek_digit()) return LevelScalar(Rat(lx.parse_uint()));
    if (lx.peek_alpha()) {
        std::string id = lx.parse_ident();
        if (id == "k") return LevelScalar::k();
        lx.fail("unknown scalar symbol '" + id + "'");
    }
    lx.fail("expected scalar");
}

inline bool scalar_factor_follows(Lexer& lx) {
    char c = lx.peek();
    return c == '(' || std::isdigit(static_cast<unsigned char>(c)) || c == 'k';
}

inline LevelScalar parse_scalar_power(Lexer& lx) {
    LevelScalar base = parse_scalar_primary(lx);
    if (lx.try_consume('^')) {
        BigInt n = lx.parse_uint();
        LevelScalar acc = Rat(1);
        for (BigInt i = 0; i < n; ++i) acc *= base;
        return acc;
    }
    return base;
}

inline LevelScalar parse_scalar_product(Lexer& lx) {
    LevelScalar v = parse_scalar_power(lx);
    for (;;) {
        if (lx.try_consume('*')) {
            v *= parse_scalar_power(lx);
        } else if (lx.try_consume('/')) {
            v /= parse_scalar_power(lx);
        } else if (scalar_factor_follows(lx)) {
            v *= parse_scalar_power(lx);
        } else {
            return v;
        }
    }
}

inline LevelScalar parse_scalar_sum(Lexer& lx) {
    bool neg = false;
    if (lx.try_consume('-')) neg = true;
    else lx.try_consume('+');
    LevelScalar v = parse_scalar_product(lx);
    if (neg) v = -v;
    while (lx.peek() == '+' || lx.peek() == '-') {
        bool minus = lx.get() == '-';
        LevelScalar t = parse_scalar_product(lx);
        v = minus ? v - t : v + t;
    }
    return v;
}

} // namespace detail

inline LevelScalar parse_scalar(const std::string& text) {
    Lexer lx(text);
    LevelScalar v = detail::parse_scalar_sum(lx);
    if (!lx.eof()) lx.fail("trailing input after scalar");
    return v;
}

// Linear integer index expressions like `k+n1+n2`, `2r`, `3k+2r-1`, with
// named parameters bound to integers.
using IndexBindings = std::map<std::string, long>;

inline long parse_index_expr(Lexer& lx, const IndexBindings& binds) {
    long total = 0;
    bool first = true;
    for (;;) {
        long sign = 1;
        if (lx.try_consume('-')) sign = -1;
        else if (lx.try_consume('+')) sign = 1;
        else if (!first) break;
        long coeff = 1;
        bool have_coeff = false;
        if (lx.peek_digit()) {
            coeff = static_cast<long>(lx.parse_uint());
            have_coeff = true;
            lx.try_consume('*');
        }
        if (lx.peek_alpha()) {
            std::string id = lx.parse_ident();
            auto it = binds.find(id);
            if (it == binds.end()) lx.fail("unbound index '" + id + "'");
            total += sign * coeff * it->second;
        } else if (have_coeff) {
            total += sign * coeff;
        } else {
            lx.fail("expected index term");
        }
        first = false;
        char c = lx.peek();
        if (c != '+' && c != '-') break;
    }
    return total;
}

} // namespace mta
