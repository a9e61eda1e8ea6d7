#pragma once

#include "l10.hpp"
#include "mta_algebra.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mta {

// --- derivation scripts -------------------------------------------------------
//
// Scripts are shipped as data files, one step per line:
//
//     BEFORE ==> AFTER @ JUSTIFICATION(idx=..., ...)
//
// with directives `@id`, `@algebra modes|pbw`, `@level 1|k`, `@params`,
// `@sample`, `@context` and `#` comments. Each step is re-checked from scratch:
// the BEFORE/AFTER difference must vanish under the cited rule in the exact
// enveloping-algebra sense, and relation citations additionally re-derive the
// cited instance from the ideal to certify it carries no correction term.

struct Justification {
    std::string kind; // exact | ad | bracket | rel | h4 | pbw
    std::vector<std::pair<std::string, std::string>> args; // key=expr; key "" = bare token

    std::string str() const {
        if (args.empty()) return kind;
        std::string out = kind + "(";
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) out += ", ";
            if (!args[i].first.empty()) out += args[i].first + "=";
            out += args[i].second;
        }
        return out + ")";
    }

    std::string arg(const std::string& key) const {
        for (const auto& [k, v] : args)
            if (k == key) return v;
        throw std::invalid_argument("justification " + kind + ": missing argument '" + key + "'");
    }
    bool has_arg(const std::string& key) const {
        for (const auto& [k, v] : args)
            if (k == key) return true;
        return false;
    }
};

struct ScriptStep {
    std::string before;
    std::string after;
    Justification just;
};

struct SampleBinding {
    std::vector<std::pair<std::string, long>> binds;

    IndexBindings map() const {
        IndexBindings m;
        for (const auto& [k, v] : binds) m[k] = v;
        return m;
    }
    std::string str() const {
        std::string out;
        for (const auto& [k, v] : binds) {
            if (!out.empty()) out += ", ";
            out += k + "=" + std::to_string(v);
        }
        return out;
    }
};

struct DerivationScript {
    std::string id;
    std::string algebra = "modes"; // modes | pbw
    std::string level = "1";       // scalar literal or the token `k`
    std::vector<std::string> params;
    std::vector<SampleBinding> samples;
    std::string context;
    std::vector<ScriptStep> steps;

    LevelScalar level_scalar() const {
        return level == "k" ? LevelScalar::k() : LevelScalar(rat_from_string(level));
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
}

inline Justification parse_justification(const std::string& text, int line_no) {
    Justification j;
    std::string t = trim(text);
    std::size_t p = t.find('(');
    if (p == std::string::npos) {
        j.kind = t;
    } else {
        if (t.back() != ')')
            throw std::invalid_argument("script line " + std::to_string(line_no) +
                                        ": malformed justification '" + t + "'");
        j.kind = trim(t.substr(0, p));
        std::string inner = t.substr(p + 1, t.size() - p - 2);
        for (const std::string& piece : split_top(inner, ',')) {
            if (piece.empty()) continue;
            std::size_t eq = piece.find('=');
            if (eq == std::string::npos) j.args.emplace_back("", piece);
            else j.args.emplace_back(trim(piece.substr(0, eq)), trim(piece.substr(eq + 1)));
        }
    }
    static const std::vector<std::string> kinds = {"exact", "ad", "bracket", "rel", "h4", "pbw"};
    if (std::find(kinds.begin(), kinds.end(), j.kind) == kinds.end())
        throw std::invalid_argument("script line " + std::to_string(line_no) +
                                    ": unknown justification kind '" + j.kind + "'");
    return j;
}

} // namespace detail

inline DerivationScript parse_script(const std::string& text) {
    DerivationScript s;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line[0] == '@') {
            std::size_t sp = line.find(' ');
            std::string key = sp == std::string::npos ? line : line.substr(0, sp);
            std::string val = sp == std::string::npos ? "" : detail::trim(line.substr(sp + 1));
            if (key == "@id") s.id = val;
            else if (key == "@algebra") s.algebra = val;
            else if (key == "@level") s.level = val;
            else if (key == "@context") s.context = val;
            else if (key == "@params") {
                for (const std::string& p : detail::split_top(val, ','))
                    if (!p.empty()) s.params.push_back(p);
            } else if (key == "@sample") {
                SampleBinding sb;
                for (const std::string& p : detail::split_top(val, ',')) {
                    std::size_t eq = p.find('=');
                    if (eq == std::string::npos)
                        throw std::invalid_argument("script line " + std::to_string(line_no) +
                                                    ": malformed sample binding '" + p + "'");
                    sb.binds.emplace_back(detail::trim(p.substr(0, eq)),
                                          std::stol(detail::trim(p.substr(eq + 1))));
                }
                s.samples.push_back(std::move(sb));
            } else {
                throw std::invalid_argument("script line " + std::to_string(line_no) +
                                            ": unknown directive '" + key + "'");
            }
            continue;
        }
        std::size_t arrow = line.find("==>");
        if (arrow == std::string::npos)
            throw std::invalid_argument("script line " + std::to_string(line_no) +
                                        ": expected 'BEFORE ==> AFTER @ JUSTIFICATION'");
        std::size_t at = line.rfind('@');
        if (at == std::string::npos || at < arrow)
            throw std::invalid_argument("script line " + std::to_string(line_no) +
                                        ": missing '@ JUSTIFICATION'");
        ScriptStep st;
        st.before = detail::trim(line.substr(0, arrow));
        st.after = detail::trim(line.substr(arrow + 3, at - arrow - 3));
        st.just = detail::parse_justification(line.substr(at + 1), line_no);
        if (st.before.empty() || st.after.empty())
            throw std::invalid_argument("script line " + std::to_string(line_no) +
                                        ": empty step side");
        s.steps.push_back(std::move(st));
    }
    if (s.id.empty()) throw std::invalid_argument("script has no @id");
    if (s.algebra != "modes" && s.algebra != "pbw")
        throw std::invalid_argument("script " + s.id + ": unknown algebra '" + s.algebra + "'");
    return s;
}

inline std::string serialize_script(const DerivationScript& s) {
    std::string out = "@id " + s.id + "\n@algebra " + s.algebra + "\n@level " + s.level + "\n";
    if (!s.params.empty()) {
        out += "@params ";
        for (std::size_t i = 0; i < s.params.size(); ++i)
            out += (i ? ", " : "") + s.params[i];
        out += "\n";
    }
    if (!s.context.empty()) out += "@context " + s.context + "\n";
    for (const auto& sb : s.samples) out += "@sample " + sb.str() + "\n";
    for (const auto& st : s.steps)
        out += st.before + " ==> " + st.after + " @ " + st.just.str() + "\n";
    return out;
}

inline DerivationScript load_script_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open script file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_script(buf.str());
}

inline std::vector<DerivationScript> load_scripts(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& ent : std::filesystem::directory_iterator(dir))
        if (ent.is_regular_file() && ent.path().extension() == ".txt")
            files.push_back(ent.path());
    std::sort(files.begin(), files.end());
    std::vector<DerivationScript> out;
    out.reserve(files.size());
    for (const auto& f : files) out.push_back(load_script_file(f));
    return out;
}

// --- step checking ------------------------------------------------------------

namespace detail {

struct StepOutcome {
    Status status = Status::Verified;
    std::vector<std::string> trace;
    std::string note;
};

inline long eval_index(const std::string& expr, const IndexBindings& binds) {
    Lexer lx(expr);
    long v = parse_index_expr(lx, binds);
    if (!lx.eof()) lx.fail("trailing input after index expression");
    return v;
}

inline bool is_level_one(const LevelScalar& level) {
    LevelScalar d = level;
    d += -LevelScalar(Rat(1));
    return d.is_zero();
}

// exact / ad / bracket: the difference must be 0 in the enveloping algebra.
inline StepOutcome check_envelope_step(const ModeExpr& diff, const LevelScalar& level) {
    StepOutcome o;
    ModeExpr residual = envelope_normalize(diff, level);
    if (residual.is_zero()) {
        o.trace.push_back("exact in the enveloping algebra");
        return o;
    }
    if (envelope_normalize(diff, level, false).is_zero()) {
        o.status = Status::Flagged;
        o.note = "holds only after dropping central terms; exact residual: " + residual.str();
        return o;
    }
    if (is_level_one(level) && reduce_paper(diff).is_zero()) {
        o.status = Status::Flagged;
        o.note = "holds only under the literal index-shift reduction; exact residual: " +
                 residual.str();
        return o;
    }
    o.status = Status::Failed;
    o.note = "does not follow from the cited rule; exact residual: " + residual.str();
    return o;
}

inline RelationInstance cited_instance(const Justification& j, const IndexBindings& binds) {
    std::string family = j.args.empty() ? "" : (j.args[0].first.empty() ? j.args[0].second : "");
    if (family.empty()) throw std::invalid_argument("rel justification: missing family");
    if (family == "firstRel")
        return exact_first_rel(eval_index(j.arg("k"), binds), eval_index(j.arg("n1"), binds),
                               eval_index(j.arg("n2"), binds));
    if (family == "hh")
        return exact_hh_rel(eval_index(j.arg("x"), binds), eval_index(j.arg("y"), binds),
                            eval_index(j.arg("r"), binds));
    return exact_pair_rel(family, eval_index(j.arg("x"), binds), eval_index(j.arg("y"), binds));
}

inline void describe_instance(const RelationInstance& ri, StepOutcome& o) {
    std::string ix;
    for (std::size_t i = 0; i < ri.indices.size(); ++i)
        ix += (i ? "," : "") + std::to_string(ri.indices[i]);
    if (ri.corr.is_zero()) {
        o.trace.push_back("cited relation " + ri.family + "(" + ix + ") is exact in the ideal");
    } else {
        o.status = worst(o.status, Status::Flagged);
        o.trace.push_back("cited relation " + ri.family + "(" + ix +
                          ") holds only literally; exact central correction: " + ri.corr.str() +
                          (ri.degenerate ? " (degenerate index: a central delta fires)" : ""));
        if (o.note.empty())
            o.note = "relation " + ri.family + "(" + ix + ") carries the central term " +
                     ri.corr.str();
    }
}

// rel(family, ...): global literal check plus an exactness certificate for the
// cited instance(s). With no index arguments, the family is applied word-wise
// to the left-hand side (collapse families only).
inline StepOutcome check_rel_step(const ModeExpr& before, const ModeExpr& diff,
                                  const Justification& j, const IndexBindings& binds,
                                  std::vector<RelationInstance>* used) {
    StepOutcome o;
    if (!reduce_paper(diff).is_zero()) {
        o.status = Status::Failed;
        o.note = "sides differ even under the literal reduction: " + reduce_paper(diff).str();
        return o;
    }
    o.trace.push_back("literal reduction of both sides agrees");
    std::vector<RelationInstance> instances;
    bool indexed = false;
    for (const auto& [k, v] : j.args)
        if (!k.empty()) indexed = true;
    if (indexed) {
        instances.push_back(cited_instance(j, binds));
    } else {
        std::string family = j.args.empty() ? "" : j.args[0].second;
        if (family != "ee" && family != "ff")
            throw std::invalid_argument("rel(" + family + ") requires explicit indices");
        Gen g = family == "ee" ? Gen::E : Gen::F;
        for (const auto& [w, c] : before.terms()) {
            if (w.size() != 2 || w[0].gen != g || w[1].gen != g)
                throw std::invalid_argument("rel(" + family +
                                            ") applies only to two-letter words of that family");
            instances.push_back(exact_pair_rel(family, w[0].index, w[1].index));
        }
    }
    for (const auto& ri : instances) {
        describe_instance(ri, o);
        if (used) used->push_back(ri);
    }
    return o;
}

// h4(a,b,c,u,p,q,t): the quartic h-word lemma. Checks the step literally and
// certifies the six relation instances its staged proof consumes.
inline StepOutcome check_h4_step(const ModeExpr& diff, const Justification& j,
                                 const IndexBindings& binds,
                                 std::vector<RelationInstance>* used) {
    StepOutcome o;
    if (!reduce_paper(diff).is_zero()) {
        o.status = Status::Failed;
        o.note = "sides differ even under the literal reduction: " + reduce_paper(diff).str();
        return o;
    }
    o.trace.push_back("literal reduction of both sides agrees");
    long a = eval_index(j.arg("a"), binds), b = eval_index(j.arg("b"), binds);
    long c = eval_index(j.arg("c"), binds), u = eval_index(j.arg("u"), binds);
    long p = eval_index(j.arg("p"), binds), q = eval_index(j.arg("q"), binds);
    long t = eval_index(j.arg("t"), binds);
    std::vector<RelationInstance> instances = {
        exact_hh_rel(a, b, p),          exact_pair_rel("fh", a + b - p, c),
        exact_pair_rel("fh", a + b + c - p, u), exact_hh_rel(a + b, c, q),
        exact_pair_rel("fh", a + b + c - q, u), exact_hh_rel(a + b + c, u, t),
    };
    for (const auto& ri : instances) {
        describe_instance(ri, o);
        if (used) used->push_back(ri);
    }
    return o;
}

inline StepOutcome check_step(const DerivationScript& s, const ScriptStep& st,
                              const IndexBindings& binds,
                              std::vector<RelationInstance>* used) {
    if (s.algebra == "pbw") {
        if (st.just.kind != "pbw")
            throw std::invalid_argument("script " + s.id + ": pbw scripts require @ pbw steps");
        StepOutcome o;
        PbwElt diff = parse_pbw_expr(st.before) - parse_pbw_expr(st.after);
        if (diff.is_zero()) {
            o.trace.push_back("exact identity in U(sl2) over formal k");
        } else {
            o.status = Status::Failed;
            o.note = "sides differ in U(sl2); difference: " + diff.str();
        }
        return o;
    }
    const LevelScalar level = s.level_scalar();
    ModeExpr before = parse_mode_expr(st.before, binds);
    ModeExpr after = parse_mode_expr(st.after, binds);
    ModeExpr diff = before - after;
    if (st.just.kind == "rel") return check_rel_step(before, diff, st.just, binds, used);
    if (st.just.kind == "h4") return check_h4_step(diff, st.just, binds, used);
    return check_envelope_step(diff, level); // exact | ad | bracket
}

// Script-specific recomputation cases that tie a transcript back to the
// engine's own constructions.
inline void append_builtin_checks(const DerivationScript& s, const IndexBindings& binds,
                                  VerifyReport& rep) {
    (void)binds;
    if (s.id == "CHECKIDEAL") {
        const long specs[][2] = {{0, 2}, {1, 2}};
        for (std::size_t i = 0; i < 2 && i < s.steps.size(); ++i) {
            ModeExpr transcribed = parse_mode_expr(s.steps[i].before, binds);
            ModeExpr computed = quadratic_field_mode(specs[i][0], specs[i][1]);
            CaseResult cr;
            cr.input = "transcribed sum matches quadratic_field_mode(m=" +
                       std::to_string(specs[i][0]) + ", window=" + std::to_string(specs[i][1]) +
                       ")";
            bool ok = transcribed == computed;
            cr.status = ok ? Status::Verified : Status::Failed;
            cr.trace.push_back("computed: " + computed.str());
            rep.cases.push_back(std::move(cr));
        }
    }
    if (s.id == "THMA-EXPANSION") {
        ConstraintSystem sys = vacuum_constraints();
        const Constraint* target = nullptr;
        for (const auto& c : sys.constraints)
            if (c.b == Gen::E && c.beta == Gen::E) target = &c;
        PbwElt hk = PbwElt::gen(Gen::H) + PbwElt::scalar(LevelScalar::k());
        PbwElt m2e = LevelScalar(Rat(-2)) * PbwElt::gen(Gen::E);
        bool ok = target && target->terms.size() == 2 && target->terms[0].first == hk &&
                  target->terms[0].second == "x_fe" && target->terms[1].first == m2e &&
                  target->terms[1].second == "x_he" && target->rhs == PbwElt::one();
        CaseResult cr;
        cr.input = "probe constraint recomputed from the unit ansatz";
        cr.status = ok ? Status::Verified : Status::Failed;
        if (target) cr.trace.push_back(target->str());
        rep.cases.push_back(std::move(cr));
    }
    if (s.id == "LIN-CHAIN") {
        // Which lambda/mu/nu labeling do the displayed starting equations use?
        // Recompute the three probe actions from the affine bracket and test
        // both the direct labeling and the cyclic relabeling.
        const LevelScalar k = LevelScalar::k();
        auto row = [&](Gen beta) {
            detail::LinEq eq{};
            const Gen gs[3] = {Gen::E, Gen::F, Gen::H};
            for (int i = 0; i < 3; ++i)
                eq[i] = zero_mode_word_to_pbw(affine_bracket(Mode{gs[i], 1}, Mode{beta, -1}, k));
            return eq;
        };
        detail::LinEq act_h = row(Gen::H), act_e = row(Gen::E), act_f = row(Gen::F);
        const PbwElt E = PbwElt::gen(Gen::E), F = PbwElt::gen(Gen::F), H = PbwElt::gen(Gen::H);
        detail::LinEq lin1 = {PbwElt::scalar(k), LevelScalar(Rat(-1)) * E, F};
        detail::LinEq lin2 = {LevelScalar(Rat(2)) * E, PbwElt::zero(),
                              LevelScalar(Rat(-1)) * (H - PbwElt::scalar(k))};
        detail::LinEq lin3 = {LevelScalar(Rat(-2)) * F, H + PbwElt::scalar(k), PbwElt::zero()};
        bool direct = detail::lin_equal(act_h, detail::lin_scale(lin1, Rat(2))) &&
                      detail::lin_equal(act_e, lin2) && detail::lin_equal(act_f, lin3);
        auto relabel = [](const detail::LinEq& e) { return detail::LinEq{e[2], e[0], e[1]}; };
        bool cyclic = detail::lin_equal(relabel(act_h), detail::lin_scale(lin1, Rat(2))) &&
                      detail::lin_equal(relabel(act_e), lin2) &&
                      detail::lin_equal(relabel(act_f), lin3);
        CaseResult cr;
        cr.input = "displayed starting equations 1-3: labeling vs recomputed actions";
        cr.trace.push_back("recomputed h(-1) action: " + detail::lin_str(act_h));
        cr.trace.push_back("recomputed e(-1) action: " + detail::lin_str(act_e));
        cr.trace.push_back("recomputed f(-1) action: " + detail::lin_str(act_f));
        cr.trace.push_back(std::string("direct labeling: ") + (direct ? "match" : "mismatch"));
        cr.trace.push_back(std::string("cyclic relabeling (lambda,mu,nu) -> (nu,lambda,mu): ") +
                           (cyclic ? "match (equation 1 up to overall scale 2)" : "mismatch"));
        if (!direct && cyclic) {
            cr.status = Status::Flagged;
            cr.note = "the displayed coefficient labeling does not match a direct recomputation "
                      "of the three actions; the elimination consumes the cyclically relabeled "
                      "system, which does match";
        } else if (direct) {
            cr.status = Status::Verified;
        } else {
            cr.status = Status::Failed;
            cr.note = "neither labeling matches the recomputed actions";
        }
        rep.cases.push_back(std::move(cr));

        VerifyReport cert = nonexistence_certificate(std::nullopt);
        CaseResult el;
        el.input = "elimination chain recomputed over formal k";
        el.status = cert.overall();
        el.trace.push_back("certificate cases verified: " +
                           std::to_string(cert.count(Status::Verified)) + "/" +
                           std::to_string(cert.cases.size()));
        rep.cases.push_back(std::move(el));
    }
}

} // namespace detail

// Replays one script at one parameter binding. Every step is attempted; the
// prefix labels cases with the binding so multi-sample reports stay readable.
inline VerifyReport replay(const DerivationScript& s, const IndexBindings& binds,
                           std::vector<RelationInstance>* used = nullptr) {
    VerifyReport rep;
    rep.claim = "script " + s.id;
    rep.regime = "Replay";
    for (const std::string& p : s.params)
        if (!binds.count(p))
            throw std::invalid_argument("script " + s.id + ": unbound parameter '" + p + "'");
    std::string prefix;
    if (!binds.empty()) {
        for (const auto& [k, v] : binds)
            prefix += (prefix.empty() ? "" : ",") + k + "=" + std::to_string(v);
        prefix = "[" + prefix + "] ";
    }
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
        const ScriptStep& st = s.steps[i];
        CaseResult cr;
        cr.input = prefix + "step " + std::to_string(i + 1) + ": " + st.before + " ==> " +
                   st.after + " @ " + st.just.str();
        detail::StepOutcome o = detail::check_step(s, st, binds, used);
        cr.status = o.status;
        cr.trace = std::move(o.trace);
        cr.note = std::move(o.note);
        rep.cases.push_back(std::move(cr));
    }
    detail::append_builtin_checks(s, binds, rep);
    return rep;
}

// Replays a script at every @sample binding (or once with no bindings).
inline VerifyReport replay_all(const DerivationScript& s,
                               std::vector<RelationInstance>* used = nullptr) {
    if (s.samples.empty()) return replay(s, IndexBindings{}, used);
    VerifyReport rep;
    rep.claim = "script " + s.id;
    rep.regime = "Replay";
    for (const auto& sample : s.samples) {
        VerifyReport one = replay(s, sample.map(), used);
        for (auto& c : one.cases) rep.cases.push_back(std::move(c));
    }
    return rep;
}

// Scripts replay independently in parallel; steps within a script are
// sequential. Report order follows script order regardless of job count.
inline std::vector<VerifyReport> replay_suite(const std::vector<DerivationScript>& scripts,
                                              unsigned jobs = 1) {
    return parallel_map_indexed<VerifyReport>(
        scripts.size(), jobs, [&](std::size_t i) { return replay_all(scripts[i]); });
}

} // namespace mta
