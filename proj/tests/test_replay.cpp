#include "mta/replay.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <string>

using namespace mta;

namespace {

std::vector<DerivationScript> suite_scripts() {
    static std::vector<DerivationScript> scripts = load_scripts(MTA_SCRIPTS_DIR);
    return scripts;
}

struct Expected {
    Status overall;
    std::size_t verified, flagged, failed;
};

// Frozen per-script outcome pattern: the named derivations replay clean, the
// three-index relation transcripts flag their degenerate sample, and the unit
// transcripts fail exactly at their displayed central constants.
const std::map<std::string, Expected> kExpected = {
    {"ALLZERO", {Status::Verified, 2, 0, 0}},
    {"BASECASE", {Status::Verified, 4, 0, 0}},
    {"CHECKIDEAL", {Status::Verified, 4, 0, 0}},
    {"FF-ZERO", {Status::Verified, 2, 0, 0}},
    {"FIRSTREL", {Status::Flagged, 2, 2, 0}},
    {"H4", {Status::Verified, 12, 0, 0}},
    {"HH-FROM-SECONDREL", {Status::Flagged, 3, 1, 0}},
    {"LEFTUNIT-E", {Status::Failed, 14, 2, 2}},
    {"LEFTUNIT-F", {Status::Failed, 14, 2, 2}},
    {"LEFTUNIT-H", {Status::Failed, 12, 0, 2}},
    {"LEFTUNIT-HH", {Status::Flagged, 24, 2, 0}},
    {"LEFTUNIT-HH-EQUAL", {Status::Flagged, 8, 2, 0}},
    {"LIN-CHAIN", {Status::Flagged, 7, 1, 0}},
    {"RIGHTUNIT-E", {Status::Failed, 14, 2, 2}},
    {"RIGHTUNIT-F", {Status::Failed, 14, 2, 2}},
    {"RIGHTUNIT-H", {Status::Failed, 12, 0, 2}},
    {"RIGHTUNIT-HH", {Status::Flagged, 18, 4, 0}},
    {"RIGHTUNIT-HH-EQUAL", {Status::Flagged, 4, 4, 0}},
    {"SECONDREL", {Status::Flagged, 1, 1, 0}},
    {"THIRDREL", {Status::Flagged, 1, 1, 0}},
    {"THMA-EXPANSION", {Status::Verified, 10, 0, 0}},
};

} // namespace

TEST_CASE("script corpus loads and round-trips through the serializer") {
    auto scripts = suite_scripts();
    REQUIRE(scripts.size() == kExpected.size());
    for (const auto& s : scripts) {
        REQUIRE(kExpected.count(s.id));
        std::string text = serialize_script(s);
        DerivationScript back = parse_script(text);
        CHECK(back.id == s.id);
        CHECK(serialize_script(back) == text);
    }
}

TEST_CASE("parser rejects malformed scripts") {
    CHECK_THROWS_AS(parse_script("@id X\n@algebra tensor\n"), std::invalid_argument);
    DerivationScript s = parse_script("@id X\n@params r\ne(r) ==> e(r) @ exact\n");
    CHECK_THROWS_AS(replay(s, IndexBindings{}), std::invalid_argument); // r unbound
}

TEST_CASE("suite replays to the frozen status pattern") {
    auto scripts = suite_scripts();
    auto reports = replay_suite(scripts, 2);
    REQUIRE(reports.size() == scripts.size());
    for (std::size_t i = 0; i < scripts.size(); ++i) {
        const Expected& ex = kExpected.at(scripts[i].id);
        INFO("script " << scripts[i].id);
        CHECK(reports[i].overall() == ex.overall);
        CHECK(reports[i].count(Status::Verified) == ex.verified);
        CHECK(reports[i].count(Status::Flagged) == ex.flagged);
        CHECK(reports[i].count(Status::Failed) == ex.failed);
    }
}

TEST_CASE("suite output is independent of the job count") {
    auto scripts = suite_scripts();
    auto r1 = replay_suite(scripts, 1);
    auto r4 = replay_suite(scripts, 4);
    REQUIRE(r1.size() == r4.size());
    for (std::size_t i = 0; i < r1.size(); ++i)
        CHECK(r1[i].to_json().dump() == r4[i].to_json().dump());
}

TEST_CASE("degenerate relation samples exhibit the dropped central term") {
    auto scripts = suite_scripts();
    for (const auto& s : scripts) {
        if (s.id != "FIRSTREL") continue;
        VerifyReport rep = replay_all(s);
        bool exhibited = false;
        for (const auto& c : rep.cases) {
            if (c.status != Status::Flagged) continue;
            for (const auto& line : c.trace)
                if (line.find("exact central correction: -2 e(1)") != std::string::npos)
                    exhibited = true;
        }
        CHECK(exhibited);
    }
}

TEST_CASE("unit transcripts fail exactly at the displayed central constants") {
    auto scripts = suite_scripts();
    for (const auto& s : scripts) {
        if (s.id.find("UNIT-E") == std::string::npos && s.id.find("UNIT-F") == std::string::npos &&
            s.id.find("UNIT-H") == std::string::npos)
            continue;
        if (s.id.find("HH") != std::string::npos) continue; // quartic scripts only flag
        VerifyReport rep = replay_all(s);
        for (const auto& c : rep.cases) {
            if (c.status != Status::Failed) continue;
            // the failing steps are the opening bracket expansions whose
            // displayed central constant is off for d >= 2
            CHECK(c.note.find("does not follow from the cited rule") != std::string::npos);
            CHECK(c.input.find("[") != std::string::npos);
        }
    }
}

TEST_CASE("relation instances consumed by a replay are collectable") {
    auto scripts = suite_scripts();
    for (const auto& s : scripts) {
        if (s.id != "H4") continue;
        std::vector<RelationInstance> used;
        VerifyReport rep = replay_all(s, &used);
        CHECK(rep.overall() == Status::Verified);
        CHECK(!used.empty());
        for (const auto& ri : used) {
            CHECK(!ri.degenerate);
            CHECK(ri.corr.is_zero());
        }
    }
}
