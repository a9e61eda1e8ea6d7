// Acceptance checks: one pass/fail line per criterion, with timing limits.
#include "mta/mta_algebra.hpp"
#include "mta/replay.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <iostream>
#include <random>
#include <vector>

using namespace mta;

namespace {

class Criterion {
public:
    Criterion(int number, std::string title, long limit_ms)
        : number_(number), title_(std::move(title)), limit_ms_(limit_ms),
          start_(std::chrono::steady_clock::now()) {}

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok_ = false;
            if (first_failure_.empty()) first_failure_ = what;
        }
    }

    void finish() {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start_)
                      .count();
        bool in_time = ms < limit_ms_;
        bool pass = ok_ && in_time;
        std::cout << "criterion " << number_ << " (" << title_ << "): "
                  << (pass ? "PASS" : "FAIL") << " in " << ms << " ms (limit " << limit_ms_
                  << " ms)";
        if (!ok_) std::cout << " -- " << first_failure_;
        if (!in_time) std::cout << " -- over time budget";
        std::cout << std::endl;
        INFO("criterion " << number_ << ": " << first_failure_);
        CHECK(pass);
    }

private:
    int number_;
    std::string title_;
    long limit_ms_;
    std::chrono::steady_clock::time_point start_;
    bool ok_ = true;
    std::string first_failure_;
};

long zhu_rank(std::vector<ZhuL10Elt> rows) {
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

ModeExpr M(Gen g, long n) { return ModeExpr::mode(g, n); }

ModeExpr bracket_line_value(const std::string& line) {
    auto pos = line.rfind("] = ");
    if (pos == std::string::npos) return ModeExpr::zero();
    return parse_mode_expr(line.substr(pos + 4));
}

std::vector<DerivationScript> suite_scripts() {
    static std::vector<DerivationScript> scripts = load_scripts(MTA_SCRIPTS_DIR);
    return scripts;
}

const DerivationScript* find_script(const std::vector<DerivationScript>& scripts,
                                    const std::string& id) {
    for (const auto& s : scripts)
        if (s.id == id) return &s;
    return nullptr;
}

} // namespace

TEST_CASE("criterion 1: Zhu algebra closure and relations") {
    Criterion crit(1, "degree-0 algebra closes on 5 basis classes", 1000);
    std::vector<ZhuL10Elt> vecs;
    for (int i = 0; i < 5; ++i) vecs.push_back(ZhuL10Elt::basis(i));
    std::vector<ZhuL10Elt> closure = vecs;
    for (const auto& a : vecs)
        for (const auto& b : vecs) closure.push_back(zhu_mul(a, b));
    crit.require(zhu_rank(closure) == 5, "closure rank != 5");
    crit.require(zhu_rank(vecs) == 5, "basis not independent");

    using Z = ZhuL10Elt;
    Z e = Z::basis(Z::BE), f = Z::basis(Z::BF), h = Z::basis(Z::BH), ef = Z::basis(Z::BEF);
    crit.require(zhu_mul(e, e).is_zero(), "e*e != 0");
    crit.require(zhu_mul(f, f).is_zero(), "f*f != 0");
    crit.require(zhu_mul(e, h) == LevelScalar(Rat(-1)) * e, "e*h != -e");
    crit.require(zhu_mul(h, f) == LevelScalar(Rat(-1)) * f, "h*f != -f");
    crit.require(zhu_mul(h, h) + h == LevelScalar(Rat(2)) * ef, "h*h + h != 2 e*f");
    crit.finish();
}

TEST_CASE("criterion 2: quadratic collapse on the index window") {
    Criterion crit(2, "e(m)e(n) and f(m)f(n) reduce to zero, |m|,|n| <= 10", 1000);
    for (long m = -10; m <= 10; ++m)
        for (long n = -10; n <= 10; ++n) {
            crit.require(reduce_paper(word_multiply(M(Gen::E, m), M(Gen::E, n))).is_zero(),
                         "e-collapse failed");
            crit.require(reduce_paper(word_multiply(M(Gen::F, m), M(Gen::F, n))).is_zero(),
                         "f-collapse failed");
        }
    crit.finish();
}

TEST_CASE("criterion 3: quadratic h-relation on the index window") {
    Criterion crit(3, "h(x)h(y) + h(x+y) - 2e(r)f(x+y-r) reduces to zero", 5000);
    for (long x = -5; x <= 5; ++x)
        for (long y = -5; y <= 5; ++y)
            for (long r = -5; r <= 5; ++r) {
                ModeExpr ex = word_multiply(M(Gen::H, x), M(Gen::H, y)) + M(Gen::H, x + y) -
                              LevelScalar(Rat(2)) *
                                  word_multiply(M(Gen::E, r), M(Gen::F, x + y - r));
                crit.require(reduce_paper(ex).is_zero(), "h-relation failed");
            }
    crit.finish();
}

TEST_CASE("criterion 4: quartic h-word reduction, randomized") {
    Criterion crit(4, "staged h^4 reduction at 500 random tuples plus all-zero", 30000);
    std::mt19937 rng(20240801);
    std::uniform_int_distribution<long> pick(-3, 3);
    for (int i = 0; i < 500; ++i) {
        VerifyReport rep = check_h4(pick(rng), pick(rng), pick(rng), pick(rng), pick(rng),
                                    pick(rng), pick(rng));
        crit.require(rep.overall() == Status::Verified, "random tuple failed");
    }
    crit.require(check_h4(0, 0, 0, 0, 0, 0, 0).overall() == Status::Verified,
                 "all-zero tuple failed");
    crit.finish();
}

TEST_CASE("criterion 5: degree-1 strong unit in the literal regime") {
    Criterion crit(5, "30 unit-law cases, idempotence, negative controls", 5000);
    VerifyReport rep = verify_strong_unit(1, Regime::Literal);
    crit.require(rep.cases.size() == 30, "expected 30 cases");
    crit.require(rep.overall() == Status::Verified, "a unit-law case failed");

    MtaElt u = build_strong_unit(1);
    crit.require(mta_compare(star(u, u, Regime::Literal), u, Regime::Literal).equal,
                 "idempotence failed");

    // per-coefficient negative control: each perturbed coefficient must be
    // caught with a localized divergence
    for (std::size_t t = 0; t < u.triples.size(); ++t) {
        MtaElt bad = u;
        bad.triples[t].mid = bad.triples[t].mid + ZhuL10Elt::one();
        VerifyReport neg = verify_strong_unit(1, Regime::Literal, PairMode::Ordered, bad);
        crit.require(neg.overall() == Status::Failed, "perturbation not caught");
        bool localized = false;
        for (const auto& c : neg.cases)
            for (const auto& line : c.trace)
                if (line.rfind("first divergence: coefficient of", 0) == 0) localized = true;
        crit.require(localized, "no localized divergence trace");
    }
    crit.finish();
}

TEST_CASE("criterion 6: higher-degree candidates, both regimes and pair modes") {
    Criterion crit(6, "d = 2..6 deterministic with localized bracket evidence", 120000);
    for (long d = 2; d <= 6; ++d) {
        ModeExpr expect = LevelScalar(Rat(-1)) * M(Gen::H, 0) +
                          ModeExpr::scalar(LevelScalar(Rat(d)));
        for (Regime regime : {Regime::Literal, Regime::Exact}) {
            for (PairMode pm : {PairMode::Ordered, PairMode::Unordered}) {
                VerifyReport rep = verify_strong_unit(d, regime, pm);
                VerifyReport again = verify_strong_unit(d, regime, pm);
                crit.require(rep.to_json().dump() == again.to_json().dump(),
                             "report not deterministic");
                for (const auto& c : rep.cases) {
                    crit.require(!c.trace.empty() &&
                                     bracket_line_value(c.trace.front()) == expect,
                                 "bracket line != -h(0) + d");
                    if (c.status == Status::Failed)
                        crit.require(c.trace.back().rfind("first divergence:", 0) == 0,
                                     "failure not localized");
                }
                crit.require(rep.count(Status::Failed) > 0,
                             "expected unit-law failures at d >= 2");
            }
        }
    }
    crit.finish();
}

TEST_CASE("criterion 7: derivation script replay") {
    Criterion crit(7, "named scripts replay with the expected statuses", 30000);
    auto scripts = suite_scripts();

    for (const char* id : {"BASECASE", "ALLZERO", "CHECKIDEAL", "H4", "FF-ZERO"}) {
        const DerivationScript* s = find_script(scripts, id);
        crit.require(s != nullptr, std::string(id) + " missing");
        if (s) crit.require(replay_all(*s).overall() == Status::Verified,
                            std::string(id) + " not fully verified");
    }

    for (const char* id : {"FIRSTREL", "SECONDREL", "THIRDREL"}) {
        const DerivationScript* s = find_script(scripts, id);
        crit.require(s != nullptr, std::string(id) + " missing");
        if (!s) continue;
        crit.require(s->samples.size() == 2, std::string(id) + ": expected two samples");
        bool saw_verified = false, saw_flagged = false;
        for (const auto& sample : s->samples) {
            VerifyReport rep = replay(*s, sample.map());
            if (rep.overall() == Status::Verified) saw_verified = true;
            if (rep.overall() == Status::Flagged) {
                bool central = false;
                for (const auto& c : rep.cases) {
                    if (c.status != Status::Flagged) continue;
                    if (c.note.find("central") != std::string::npos) central = true;
                    for (const auto& line : c.trace)
                        if (line.find("central") != std::string::npos) central = true;
                }
                saw_flagged = central;
            }
        }
        crit.require(saw_verified, std::string(id) + ": no verified nondegenerate binding");
        crit.require(saw_flagged,
                     std::string(id) + ": degenerate binding not flagged with central term");
    }

    const DerivationScript* lin = find_script(scripts, "LIN-CHAIN");
    crit.require(lin != nullptr, "LIN-CHAIN missing");
    if (lin) {
        crit.require(lin->algebra == "pbw" && lin->level == "k",
                     "LIN-CHAIN is not a formal-level PBW script");
        VerifyReport rep = replay_all(*lin);
        std::size_t pbw_steps = 0;
        for (std::size_t i = 0; i < lin->steps.size(); ++i) {
            crit.require(rep.cases[i].status == Status::Verified,
                         "LIN-CHAIN step not an exact PBW identity");
            ++pbw_steps;
        }
        crit.require(pbw_steps >= 6, "LIN-CHAIN: too few elimination steps");
    }
    crit.finish();
}

TEST_CASE("criterion 8: nonexistence certificate across levels") {
    Criterion crit(8, "formal and specialized levels, inconclusive at k = -2", 10000);
    for (std::optional<Rat> kv : std::vector<std::optional<Rat>>{
             std::nullopt, Rat(0), Rat(1), Rat(5), Rat(-1, 2)}) {
        VerifyReport rep = nonexistence_certificate(kv);
        crit.require(rep.overall() == Status::Verified, "certificate not verified");
        bool probe = false, witness = false;
        for (const auto& c : rep.cases) {
            if (c.input.find("probe constraint") != std::string::npos &&
                c.status == Status::Verified)
                probe = true;
            if (c.input.find("witness functional") != std::string::npos &&
                c.status == Status::Verified) {
                for (const auto& line : c.trace)
                    if (line.find("200 randomized samples") != std::string::npos) witness = true;
            }
        }
        crit.require(probe, "probe constraint not reproduced");
        crit.require(witness, "witness functional samples missing");
    }
    VerifyReport cr2 = nonexistence_certificate(Rat(-2));
    crit.require(cr2.overall() == Status::Flagged, "k = -2 should be inconclusive");
    bool cited = false;
    for (const auto& c : cr2.cases)
        if (c.status == Status::Flagged &&
            c.input.find("divide by k + 2") != std::string::npos)
            cited = true;
    crit.require(cited, "k = -2 does not cite the division step");
    crit.finish();
}

TEST_CASE("criterion 9: structural soundness of the computational core") {
    Criterion crit(9, "bracket laws, table associativity, confluence, Casimir", 30000);
    std::mt19937 rng(987654321);
    std::uniform_int_distribution<int> g(0, 2), n(-4, 4);
    auto rmode = [&] { return Mode{static_cast<Gen>(g(rng)), n(rng)}; };
    const LevelScalar k = LevelScalar::k();

    // antisymmetry and Jacobi for the affine bracket at formal level
    for (int i = 0; i < 500; ++i) {
        Mode x = rmode(), y = rmode(), z = rmode();
        crit.require((affine_bracket(x, y, k) + affine_bracket(y, x, k)).is_zero(),
                     "bracket not antisymmetric");
        ModeExpr jac = ad_action(x, affine_bracket(y, z, k), k) +
                       ad_action(y, affine_bracket(z, x, k), k) +
                       ad_action(z, affine_bracket(x, y, k), k);
        crit.require(envelope_normalize(jac, k).is_zero(), "Jacobi failed");
    }

    // associativity of the literal relation table
    std::uniform_int_distribution<int> bk(0, 4), bm(-3, 3);
    auto rsym = [&] {
        BasisKind kind = static_cast<BasisKind>(bk(rng));
        return BasisSym{kind, kind == BasisKind::One ? 0 : bm(rng)};
    };
    for (int i = 0; i < 500; ++i) {
        LoopElt a = LoopElt::sym(rsym()), b = LoopElt::sym(rsym()), c = LoopElt::sym(rsym());
        crit.require(loop_mul(loop_mul(a, b), c) == loop_mul(a, loop_mul(b, c)),
                     "table not associative");
    }

    // confluence: left fold (reduce_paper) vs right fold on 4-letter words
    for (int i = 0; i < 200; ++i) {
        Word w = {rmode(), rmode(), rmode(), rmode()};
        LoopElt right = LoopElt::one();
        for (auto it = w.rbegin(); it != w.rend(); ++it)
            right = loop_mul(reduce_paper(ModeExpr::mode(it->gen, it->index)), right);
        crit.require(reduce_paper(ModeExpr::word(w)) == right, "fold strategies diverge");
    }

    // Casimir: central, and the k(k+2)-shift is nonzero over formal k
    PbwElt omega = casimir();
    for (Gen gen : {Gen::E, Gen::F, Gen::H})
        crit.require(pbw_mul(omega, PbwElt::gen(gen)) == pbw_mul(PbwElt::gen(gen), omega),
                     "Casimir not central");
    PbwElt shifted = omega - PbwElt::scalar(k * (k + LevelScalar(Rat(2))));
    crit.require(!shifted.is_zero(), "Casimir shift vanished");
    crit.finish();
}

TEST_CASE("criterion 10: relation audit stability and consistency with replay") {
    Criterion crit(10, "window-5 audit is byte-stable and nondegenerate-clean", 10000);
    DiscrepancyReport base = audit_relations(5, 1);
    DiscrepancyReport rerun = audit_relations(5, 4);
    crit.require(base.to_json().dump() == rerun.to_json().dump(),
                 "audit output varies with job count or rerun");
    crit.require(base.empty_nondegenerate(), "nondegenerate discrepancy in audit");

    // the relation instances actually consumed by the replay suite: every
    // nondegenerate one must carry no correction
    std::vector<RelationInstance> used;
    for (const auto& s : suite_scripts()) replay_all(s, &used);
    crit.require(!used.empty(), "no relation instances collected from replay");
    for (const auto& ri : used)
        if (!ri.degenerate)
            crit.require(ri.corr.is_zero(), "nondegenerate instance with correction: " + ri.str());
    crit.finish();
}
