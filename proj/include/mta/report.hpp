#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace mta {

enum class Status { Verified, Flagged, Failed };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::Verified: return "verified";
        case Status::Flagged: return "flagged";
        case Status::Failed: return "failed";
    }
    return "?";
}

inline Status worst(Status a, Status b) {
    return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

struct CaseResult {
    std::string input;
    Status status = Status::Verified;
    std::vector<std::string> trace;
    std::string note;
};

// Machine-readable certificate for one replayed or recomputed claim.
struct VerifyReport {
    std::string claim;
    std::string regime; // Literal | Exact | Replay
    std::vector<CaseResult> cases;
    nlohmann::json metadata = nlohmann::json::object(); // timestamps etc., excluded from comparison

    Status overall() const {
        Status s = Status::Verified;
        for (const auto& c : cases) s = worst(s, c.status);
        return s;
    }
    bool all_verified() const { return overall() == Status::Verified; }
    std::size_t count(Status s) const {
        std::size_t n = 0;
        for (const auto& c : cases)
            if (c.status == s) ++n;
        return n;
    }

    // 0 all verified, 2 flagged present, 3 failures present.
    int exit_code() const {
        switch (overall()) {
            case Status::Verified: return 0;
            case Status::Flagged: return 2;
            case Status::Failed: return 3;
        }
        return 1;
    }

    nlohmann::json to_json(bool with_metadata = true) const {
        nlohmann::json cs = nlohmann::json::array();
        for (const auto& c : cases) {
            nlohmann::json jc{{"input", c.input},
                              {"status", status_name(c.status)},
                              {"trace", c.trace}};
            if (!c.note.empty()) jc["note"] = c.note;
            cs.push_back(std::move(jc));
        }
        nlohmann::json j{{"claim", claim}, {"regime", regime}, {"cases", std::move(cs)}};
        if (with_metadata && !metadata.empty()) j["metadata"] = metadata;
        return j;
    }

    std::string text() const {
        std::string out = claim + " [" + regime + "] " + status_name(overall()) + "\n";
        for (const auto& c : cases) {
            out += "  [" + std::string(status_name(c.status)) + "] " + c.input + "\n";
            for (const auto& t : c.trace) out += "      " + t + "\n";
            if (!c.note.empty()) out += "      note: " + c.note + "\n";
        }
        return out;
    }
};

} // namespace mta
