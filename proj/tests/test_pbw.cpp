#include "mta/pbw.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

using namespace mta;

namespace {

PbwElt random_pbw(std::mt19937& rng, int max_deg = 3) {
    std::uniform_int_distribution<int> nt(1, 3), coef(-3, 3), ex(0, max_deg);
    PbwElt p;
    int n = nt(rng);
    for (int i = 0; i < n; ++i) {
        long a = ex(rng), b = ex(rng), c = ex(rng);
        while (a + b + c > max_deg) {
            a = ex(rng);
            b = ex(rng);
            c = ex(rng);
        }
        int cf = coef(rng);
        if (cf != 0) p.add_term({a, b, c}, LevelScalar(Rat(cf)));
    }
    return p;
}

// Gaussian elimination rank of ZhuL10Elt vectors over the rationals.
long rank_of(std::vector<ZhuL10Elt> rows) {
    long rank = 0;
    for (int col = 0; col < 5 && rank < static_cast<long>(rows.size()); ++col) {
        std::size_t pivot = rows.size();
        for (std::size_t r = rank; r < rows.size(); ++r)
            if (!rows[r].c[col].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        LevelScalar inv = LevelScalar(Rat(1)) / rows[rank].c[col];
        rows[rank] = inv * rows[rank];
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (static_cast<long>(r) == rank || rows[r].c[col].is_zero()) continue;
            rows[r] = rows[r] - (rows[r].c[col] * rows[rank]);
        }
        ++rank;
    }
    return rank;
}

} // namespace

TEST_CASE("PBW straightening relations") {
    PbwElt e = PbwElt::gen(Gen::E), f = PbwElt::gen(Gen::F), h = PbwElt::gen(Gen::H);
    CHECK(pbw_mul(e, f) - pbw_mul(f, e) == h);
    CHECK(pbw_mul(h, e) - pbw_mul(e, h) == LevelScalar(Rat(2)) * e);
    CHECK(pbw_mul(h, f) - pbw_mul(f, h) == LevelScalar(Rat(-2)) * f);
    CHECK(parse_pbw_expr("ef - fe") == h);
    CHECK(parse_pbw_expr("4fe + h^2 + 2h") == casimir());
}

TEST_CASE("PBW product is associative") {
    std::mt19937 rng(17);
    for (int i = 0; i < 200; ++i) {
        PbwElt a = random_pbw(rng), b = random_pbw(rng), c = random_pbw(rng);
        CHECK(pbw_mul(pbw_mul(a, b), c) == pbw_mul(a, pbw_mul(b, c)));
    }
}

TEST_CASE("Casimir is central") {
    PbwElt omega = casimir();
    for (Gen g : {Gen::E, Gen::F, Gen::H})
        CHECK(pbw_mul(omega, PbwElt::gen(g)) == pbw_mul(PbwElt::gen(g), omega));
}

TEST_CASE("transpose is an antiautomorphism exchanging e and f") {
    CHECK(transpose_tau(PbwElt::gen(Gen::E)) == PbwElt::gen(Gen::F));
    CHECK(transpose_tau(PbwElt::gen(Gen::H)) == PbwElt::gen(Gen::H));
    std::mt19937 rng(19);
    for (int i = 0; i < 100; ++i) {
        PbwElt a = random_pbw(rng), b = random_pbw(rng);
        CHECK(transpose_tau(pbw_mul(a, b)) == pbw_mul(transpose_tau(b), transpose_tau(a)));
        CHECK(transpose_tau(transpose_tau(a)) == a);
    }
}

TEST_CASE("witness functional on the cyclic quotient") {
    const LevelScalar k = LevelScalar::k();
    CHECK(witness_phi(PbwElt::one()) == LevelScalar(Rat(1)));
    // h w = -k w, f w = 0
    CHECK(witness_phi(PbwElt::gen(Gen::H)) == -k);
    CHECK(witness_phi(PbwElt::gen(Gen::F)).is_zero());
    PbwElt hk = PbwElt::gen(Gen::H) + PbwElt::scalar(k);
    std::mt19937 rng(23);
    for (int i = 0; i < 100; ++i) {
        PbwElt x = random_pbw(rng), y = random_pbw(rng);
        CHECK(witness_phi(pbw_mul(x, hk) + pbw_mul(y, PbwElt::gen(Gen::F))).is_zero());
    }
}

TEST_CASE("Zhu algebra: 5-dimensional closure and defining relations") {
    using Z = ZhuL10Elt;
    std::vector<Z> basis;
    for (int i = 0; i < 5; ++i) basis.push_back(Z::basis(i));

    std::vector<Z> closure = basis;
    for (const auto& a : basis)
        for (const auto& b : basis) closure.push_back(zhu_mul(a, b));
    CHECK(rank_of(closure) == 5);

    Z e = Z::basis(Z::BE), f = Z::basis(Z::BF), h = Z::basis(Z::BH), ef = Z::basis(Z::BEF);
    CHECK(zhu_mul(e, e).is_zero());
    CHECK(zhu_mul(f, f).is_zero());
    CHECK(zhu_mul(e, h) == LevelScalar(Rat(-1)) * e);
    CHECK(zhu_mul(h, f) == LevelScalar(Rat(-1)) * f);
    CHECK(zhu_mul(h, h) + h == LevelScalar(Rat(2)) * ef);
    CHECK(zhu_mul(e, f) == ef);

    // associativity of the quotient product
    std::mt19937 rng(29);
    std::uniform_int_distribution<int> pick(0, 4);
    for (int i = 0; i < 200; ++i) {
        Z a = Z::basis(pick(rng)), b = Z::basis(pick(rng)), c = Z::basis(pick(rng));
        CHECK(zhu_mul(zhu_mul(a, b), c) == zhu_mul(a, zhu_mul(b, c)));
    }
}

TEST_CASE("projection into the Zhu algebra") {
    CHECK(zhu_project(parse_pbw_expr("h^2 + h - 2ef")).is_zero());
    CHECK(zhu_project(parse_pbw_expr("e^2")).is_zero());
    CHECK(zhu_project(PbwElt::gen(Gen::E)) == ZhuL10Elt::basis(ZhuL10Elt::BE));
    // projection is multiplicative
    std::mt19937 rng(31);
    for (int i = 0; i < 50; ++i) {
        PbwElt a = random_pbw(rng, 2), b = random_pbw(rng, 2);
        CHECK(zhu_project(pbw_mul(a, b)) == zhu_mul(zhu_project(a), zhu_project(b)));
    }
}
