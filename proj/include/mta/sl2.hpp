#pragma once

#include "level_scalar.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace mta {

enum class Gen : int { E = 0, H = 1, F = 2 };

inline const char* gen_name(Gen g) {
    switch (g) {
        case Gen::E: return "e";
        case Gen::H: return "h";
        case Gen::F: return "f";
    }
    throw std::logic_error("bad generator");
}

inline Gen gen_from_char(char c) {
    switch (c) {
        case 'e': return Gen::E;
        case 'h': return Gen::H;
        case 'f': return Gen::F;
        default: throw std::invalid_argument(std::string("not an sl2 generator: ") + c);
    }
}

// Element of sl2 in the {e,h,f} basis.
struct LieElt {
    std::array<LevelScalar, 3> c{}; // indexed by Gen

    static LieElt basis(Gen g) {
        LieElt x;
        x.c[static_cast<int>(g)] = Rat(1);
        return x;
    }

    LevelScalar& operator[](Gen g) { return c[static_cast<int>(g)]; }
    const LevelScalar& operator[](Gen g) const { return c[static_cast<int>(g)]; }

    bool is_zero() const {
        return c[0].is_zero() && c[1].is_zero() && c[2].is_zero();
    }

    friend LieElt operator+(const LieElt& a, const LieElt& b) {
        LieElt r;
        for (int i = 0; i < 3; ++i) r.c[i] = a.c[i] + b.c[i];
        return r;
    }
    friend LieElt operator-(const LieElt& a, const LieElt& b) {
        LieElt r;
        for (int i = 0; i < 3; ++i) r.c[i] = a.c[i] - b.c[i];
        return r;
    }
    friend LieElt operator*(const LevelScalar& s, const LieElt& a) {
        LieElt r;
        for (int i = 0; i < 3; ++i) r.c[i] = s * a.c[i];
        return r;
    }
    friend bool operator==(const LieElt& a, const LieElt& b) { return a.c == b.c; }
};

// Structure constants: [e,f]=h, [h,e]=2e, [h,f]=-2f.
inline LieElt lie_bracket_basis(Gen a, Gen b) {
    LieElt r;
    if (a == b) return r;
    auto signed_pair = [&](Gen x, Gen y) { return a == x && b == y; };
    if (signed_pair(Gen::E, Gen::F)) r[Gen::H] = Rat(1);
    else if (signed_pair(Gen::F, Gen::E)) r[Gen::H] = Rat(-1);
    else if (signed_pair(Gen::H, Gen::E)) r[Gen::E] = Rat(2);
    else if (signed_pair(Gen::E, Gen::H)) r[Gen::E] = Rat(-2);
    else if (signed_pair(Gen::H, Gen::F)) r[Gen::F] = Rat(-2);
    else if (signed_pair(Gen::F, Gen::H)) r[Gen::F] = Rat(2);
    return r;
}

inline LieElt lie_bracket(const LieElt& a, const LieElt& b) {
    LieElt r;
    for (int i = 0; i < 3; ++i) {
        if (a.c[i].is_zero()) continue;
        for (int j = 0; j < 3; ++j) {
            if (b.c[j].is_zero()) continue;
            LieElt sb = lie_bracket_basis(static_cast<Gen>(i), static_cast<Gen>(j));
            r = r + (a.c[i] * b.c[j]) * sb;
        }
    }
    return r;
}

// Normalized invariant form: (e|f)=(f|e)=1, (h|h)=2, others 0.
inline Rat invariant_form_basis(Gen a, Gen b) {
    if ((a == Gen::E && b == Gen::F) || (a == Gen::F && b == Gen::E)) return Rat(1);
    if (a == Gen::H && b == Gen::H) return Rat(2);
    return Rat(0);
}

inline LevelScalar invariant_form(const LieElt& a, const LieElt& b) {
    LevelScalar r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r += a.c[i] * b.c[j] * LevelScalar(invariant_form_basis(static_cast<Gen>(i), static_cast<Gen>(j)));
    return r;
}

} // namespace mta
