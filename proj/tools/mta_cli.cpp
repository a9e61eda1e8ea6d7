// Command-line front end: reductions, unit construction, verification sweeps,
// relation audits, and derivation-script replays, with machine-readable JSON
// certificates. Exit codes: 0 all verified, 2 flagged cases present, 3 failed
// cases present, 1 usage or parse error.

#include "mta/replay.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace mta;

struct OutputOpts {
    std::string format = "text";
    std::string output; // empty = stdout
    bool with_metadata = true;
};

void add_output_flags(CLI::App* cmd, OutputOpts& oo) {
    cmd->add_option("--format", oo.format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--output", oo.output, "Write the report/expression to this path");
    cmd->add_flag("!--no-metadata", oo.with_metadata,
                  "Omit the metadata block (timestamps etc.) from JSON output");
}

void emit(const OutputOpts& oo, const std::string& text_form, const nlohmann::json& json_form) {
    std::string payload = oo.format == "json" ? json_form.dump(2) + "\n" : text_form;
    if (oo.output.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(oo.output);
        if (!f) throw std::runtime_error("cannot open output path " + oo.output);
        f << payload;
    }
}

std::string now_iso8601() {
    char buf[32];
    std::time_t t = std::time(nullptr);
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
    return buf;
}

int emit_report(const OutputOpts& oo, VerifyReport rep) {
    rep.metadata["generated_at"] = now_iso8601();
    emit(oo, rep.text(), rep.to_json(oo.with_metadata));
    return rep.exit_code();
}

LevelScalar parse_level(const std::string& s) {
    return s == "k" ? LevelScalar::k() : LevelScalar(rat_from_string(s));
}

} // namespace

int main(int argc, char** argv) {
    using namespace mta;
    CLI::App app{"Exact symbolic engine for mode transition algebras of the level-1 sl2 "
                 "vacuum module quotient"};
    app.require_subcommand(1);

    // --- reduce ---------------------------------------------------------------
    std::string reduce_expr, reduce_regime = "literal", reduce_level = "1";
    OutputOpts reduce_out;
    auto* c_reduce = app.add_subcommand(
        "reduce", "Reduce a mode expression (literal relation table or exact envelope)");
    c_reduce->add_option("expr", reduce_expr, "Mode expression, e.g. 'e(2)e(-1)'")->required();
    c_reduce->add_option("--regime", reduce_regime, "literal | exact")
        ->check(CLI::IsMember({"literal", "exact"}));
    c_reduce->add_option("--level", reduce_level, "Level: rational literal or 'k'");
    add_output_flags(c_reduce, reduce_out);

    // --- bracket ----------------------------------------------------------------
    std::string br_lhs, br_rhs, br_level = "1";
    OutputOpts br_out;
    auto* c_bracket =
        app.add_subcommand("bracket", "Commutator of two mode expressions, exact central terms");
    c_bracket->add_option("lhs", br_lhs)->required();
    c_bracket->add_option("rhs", br_rhs)->required();
    c_bracket->add_option("--level", br_level, "Level: rational literal or 'k'");
    add_output_flags(c_bracket, br_out);

    // --- zhu ---------------------------------------------------------------------
    std::string zhu_expr;
    OutputOpts zhu_out;
    auto* c_zhu = app.add_subcommand(
        "zhu", "Project a U(sl2) expression into the 5-dimensional Zhu algebra");
    c_zhu->add_option("expr", zhu_expr, "PBW expression, e.g. 'h^2 + h - 2ef'")->required();
    add_output_flags(c_zhu, zhu_out);

    // --- unit ----------------------------------------------------------------------
    long unit_d = 1;
    std::string unit_pairs = "ordered";
    OutputOpts unit_out;
    auto* c_unit = app.add_subcommand("unit", "Print the degree-d strong unit candidate");
    c_unit->add_option("--d", unit_d, "Degree")->required()->check(CLI::PositiveNumber);
    c_unit->add_option("--pairs", unit_pairs, "Pair-sum mode")
        ->check(CLI::IsMember({"ordered", "unordered"}));
    add_output_flags(c_unit, unit_out);

    // --- verify-unit ------------------------------------------------------------------
    long vu_d = 1;
    long vu_window = 0;
    std::string vu_regime = "exact", vu_pairs = "ordered";
    OutputOpts vu_out;
    auto* c_vunit =
        app.add_subcommand("verify-unit", "Verify the unit laws of the degree-d candidate");
    c_vunit->add_option("--d", vu_d, "Degree")->required()->check(CLI::PositiveNumber);
    c_vunit->add_option("--regime", vu_regime, "literal | exact")
        ->check(CLI::IsMember({"literal", "exact"}));
    c_vunit->add_option("--pairs", vu_pairs, "Pair-sum mode")
        ->check(CLI::IsMember({"ordered", "unordered"}));
    c_vunit->add_option("--window", vu_window,
                        "Index window (must be >= 2d so all brackets fit; default 2d)");
    add_output_flags(c_vunit, vu_out);

    // --- verify-nonexistence ----------------------------------------------------------
    std::string ne_level = "k";
    OutputOpts ne_out;
    auto* c_ne = app.add_subcommand(
        "verify-nonexistence",
        "Certificate that the level-k vacuum algebra has no degree-1 strong unit");
    c_ne->add_option("--level", ne_level, "Level: rational literal or 'k' (formal)");
    add_output_flags(c_ne, ne_out);

    // --- audit-relations ------------------------------------------------------------
    long audit_window = 5;
    unsigned audit_jobs = 0;
    OutputOpts audit_out;
    auto* c_audit = app.add_subcommand(
        "audit-relations",
        "Compare the literal relation table against exact ideal derivations over a window");
    c_audit->add_option("--window", audit_window, "Index window")->check(CLI::PositiveNumber);
    c_audit->add_option("--jobs", audit_jobs, "Worker threads (0 = auto)");
    add_output_flags(c_audit, audit_out);

    // --- replay -----------------------------------------------------------------------
    std::string replay_dir = MTA_SCRIPTS_DIR;
    std::vector<std::string> replay_ids;
    unsigned replay_jobs = 0;
    OutputOpts replay_out;
    auto* c_replay =
        app.add_subcommand("replay", "Replay derivation scripts step by step against the engine");
    c_replay->add_option("--scripts", replay_dir, "Directory of .txt derivation scripts");
    c_replay->add_option("ids", replay_ids, "Script ids to replay (default: all)");
    c_replay->add_option("--jobs", replay_jobs, "Worker threads (0 = auto)");
    add_output_flags(c_replay, replay_out);

    // --- selftest ------------------------------------------------------------------------
    unsigned self_jobs = 0;
    OutputOpts self_out;
    auto* c_self = app.add_subcommand("selftest", "Quick engine sanity sweep");
    c_self->add_option("--jobs", self_jobs, "Worker threads (0 = auto)");
    add_output_flags(c_self, self_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1; // exit 1 for any usage/parse error
    }

    try {
        if (c_reduce->parsed()) {
            ModeExpr x = parse_mode_expr(reduce_expr);
            std::string result = reduce_regime == "literal"
                                     ? reduce_paper(x).str()
                                     : envelope_normalize(x, parse_level(reduce_level)).str();
            emit(reduce_out, result + "\n",
                 nlohmann::json{{"input", reduce_expr},
                                {"regime", reduce_regime},
                                {"result", result}});
            return 0;
        }
        if (c_bracket->parsed()) {
            LevelScalar level = parse_level(br_level);
            ModeExpr a = parse_mode_expr(br_lhs), b = parse_mode_expr(br_rhs);
            ModeExpr comm = word_multiply(a, b) - word_multiply(b, a);
            std::string result = envelope_normalize(comm, level).str();
            emit(br_out, result + "\n",
                 nlohmann::json{
                     {"lhs", br_lhs}, {"rhs", br_rhs}, {"level", br_level}, {"result", result}});
            return 0;
        }
        if (c_zhu->parsed()) {
            std::string result = zhu_project(parse_pbw_expr(zhu_expr)).str();
            emit(zhu_out, result + "\n",
                 nlohmann::json{{"input", zhu_expr}, {"result", result}});
            return 0;
        }
        if (c_unit->parsed()) {
            PairMode pm = unit_pairs == "ordered" ? PairMode::Ordered : PairMode::Unordered;
            std::string result = build_strong_unit(unit_d, pm).str();
            emit(unit_out, result + "\n",
                 nlohmann::json{{"d", unit_d}, {"pairs", unit_pairs}, {"candidate", result}});
            return 0;
        }
        if (c_vunit->parsed()) {
            if (vu_window == 0) vu_window = 2 * vu_d;
            if (vu_window < 2 * vu_d) {
                std::cerr << "error: --window must be >= 2d (" << 2 * vu_d
                          << ") so every bracket encountered fits\n";
                return 1;
            }
            Regime regime = vu_regime == "literal" ? Regime::Literal : Regime::Exact;
            PairMode pm = vu_pairs == "ordered" ? PairMode::Ordered : PairMode::Unordered;
            VerifyReport rep = verify_strong_unit(vu_d, regime, pm);
            rep.metadata["window"] = vu_window;
            return emit_report(vu_out, std::move(rep));
        }
        if (c_ne->parsed()) {
            std::optional<Rat> kv;
            if (ne_level != "k") kv = rat_from_string(ne_level);
            return emit_report(ne_out, nonexistence_certificate(kv));
        }
        if (c_audit->parsed()) {
            DiscrepancyReport rep = audit_relations(audit_window, audit_jobs);
            bool nondeg = false;
            for (const auto& e : rep.entries) nondeg = nondeg || !e.degenerate;
            std::string text = "relation audit, window " + std::to_string(rep.window) + ": " +
                               std::to_string(rep.entries.size()) + " discrepancies (" +
                               (rep.empty_nondegenerate() ? "all at degenerate indices"
                                                          : "non-degenerate entries present") +
                               ")\n";
            for (const auto& e : rep.entries) {
                text += "  " + e.family + "(";
                for (std::size_t i = 0; i < e.indices.size(); ++i)
                    text += (i ? "," : "") + std::to_string(e.indices[i]);
                text += "): literal vs exact differ by " + e.difference +
                        (e.degenerate ? " [degenerate]" : "") + "\n";
            }
            emit(audit_out, text, rep.to_json());
            return rep.entries.empty() ? 0 : (nondeg ? 3 : 2);
        }
        if (c_replay->parsed()) {
            std::vector<DerivationScript> scripts = load_scripts(replay_dir);
            if (!replay_ids.empty()) {
                std::vector<DerivationScript> filtered;
                for (const auto& id : replay_ids) {
                    auto it = std::find_if(scripts.begin(), scripts.end(),
                                           [&](const auto& s) { return s.id == id; });
                    if (it == scripts.end())
                        throw std::invalid_argument("unknown script id " + id);
                    filtered.push_back(*it);
                }
                scripts = std::move(filtered);
            }
            std::vector<VerifyReport> reps = replay_suite(scripts, replay_jobs);
            VerifyReport combined;
            combined.claim = "derivation script replay suite";
            combined.regime = "Replay";
            nlohmann::json arr = nlohmann::json::array();
            std::string text;
            for (auto& r : reps) {
                text += r.text();
                arr.push_back(r.to_json(false));
                for (auto& c : r.cases) {
                    c.input = r.claim + ": " + c.input;
                    combined.cases.push_back(std::move(c));
                }
            }
            nlohmann::json j{{"claim", combined.claim},
                             {"regime", combined.regime},
                             {"scripts", std::move(arr)}};
            if (replay_out.with_metadata) j["metadata"] = {{"generated_at", now_iso8601()}};
            emit(replay_out, text, j);
            return combined.exit_code();
        }
        if (c_self->parsed()) {
            VerifyReport rep;
            rep.claim = "engine selftest";
            rep.regime = "Exact";
            auto add = [&](const std::string& input, bool ok, std::string trace = "") {
                CaseResult cr;
                cr.input = input;
                cr.status = ok ? Status::Verified : Status::Failed;
                if (!trace.empty()) cr.trace.push_back(std::move(trace));
                rep.cases.push_back(std::move(cr));
            };
            const LevelScalar one = Rat(1);
            ModeExpr fe = affine_bracket(Mode{Gen::F, 1}, Mode{Gen::E, -1}, one);
            add("[f(1), e(-1)] = -h(0) + 1",
                fe == LevelScalar(Rat(-1)) * ModeExpr::mode(Gen::H, 0) + ModeExpr::one(),
                fe.str());
            add("reduce e(2)e(-1) = 0", reduce_paper(parse_mode_expr("e(2)e(-1)")).is_zero());
            DiscrepancyReport audit = audit_relations(2, self_jobs);
            add("relation audit (window 2) clean at non-degenerate indices",
                audit.empty_nondegenerate(),
                std::to_string(audit.entries.size()) + " degenerate-index discrepancies");
            VerifyReport unit1 = verify_strong_unit(1, Regime::Literal);
            add("degree-1 unit verifies literally (30 cases)",
                unit1.all_verified() && unit1.cases.size() == 30);
            auto scripts = load_scripts(MTA_SCRIPTS_DIR);
            add("derivation scripts load and parse", scripts.size() >= 21,
                std::to_string(scripts.size()) + " scripts");
            return emit_report(self_out, std::move(rep));
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 1;
}
