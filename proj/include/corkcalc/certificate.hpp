#pragma once

#include "corkcalc/error.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace corkcalc {

using Json = nlohmann::json;

/// One named assertion with the range it was verified over.
struct CheckRecord {
    std::string name;
    std::string range;
    bool pass = false;
    std::string witness;  // violating instance, when failed
    std::string details;  // extra reproducible facts (counts, orders, ...)

    Json to_json() const {
        Json j;
        j["name"] = name;
        j["range"] = range;
        j["outcome"] = pass ? "pass" : "fail";
        if (!witness.empty()) j["witness"] = witness;
        if (!details.empty()) j["details"] = details;
        return j;
    }
    static CheckRecord from_json(const Json& j) {
        CheckRecord c;
        c.name = j.at("name").get<std::string>();
        c.range = j.at("range").get<std::string>();
        c.pass = j.at("outcome").get<std::string>() == "pass";
        if (j.contains("witness")) c.witness = j.at("witness").get<std::string>();
        if (j.contains("details")) c.details = j.at("details").get<std::string>();
        return c;
    }
};

struct ChainRecord {
    std::string op;
    Json params;  // operation parameters, enough to replay

    Json to_json() const {
        Json j;
        j["op"] = op;
        j["params"] = params;
        return j;
    }
    static ChainRecord from_json(const Json& j) {
        ChainRecord r;
        r.op = j.at("op").get<std::string>();
        r.params = j.value("params", Json::object());
        return r;
    }
};

/// Replayable record of a construction chain, the assertions checked along
/// it, and the non-computational facts the conclusions rest on.
struct Certificate {
    std::vector<ChainRecord> chain;
    std::vector<CheckRecord> checks;
    std::vector<std::string> axioms;
    Json attachments = Json::object();  // replayable payloads (labels, tables)

    bool passed() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    CheckRecord& add_check(std::string name, std::string range, bool pass,
                           std::string witness = "", std::string details = "") {
        checks.push_back(CheckRecord{std::move(name), std::move(range), pass, std::move(witness), std::move(details)});
        return checks.back();
    }

    void add_chain(std::string op, Json params = Json::object()) {
        chain.push_back(ChainRecord{std::move(op), std::move(params)});
    }

    void add_axiom(std::string a) { axioms.push_back(std::move(a)); }

    /// Appends another certificate's records, prefixing its check names.
    void absorb(const Certificate& other, const std::string& prefix = "") {
        for (const auto& r : other.chain) chain.push_back(r);
        for (auto c : other.checks) {
            if (!prefix.empty()) c.name = prefix + c.name;
            checks.push_back(std::move(c));
        }
        for (const auto& a : other.axioms) axioms.push_back(a);
    }

    Json to_json() const {
        Json j;
        j["chain"] = Json::array();
        for (const auto& r : chain) j["chain"].push_back(r.to_json());
        j["checks"] = Json::array();
        for (const auto& c : checks) j["checks"].push_back(c.to_json());
        j["axioms"] = axioms;
        if (!attachments.empty()) j["attachments"] = attachments;
        j["passed"] = passed();
        return j;
    }

    static Certificate from_json(const Json& j) {
        Certificate c;
        for (const auto& r : j.value("chain", Json::array())) c.chain.push_back(ChainRecord::from_json(r));
        for (const auto& k : j.value("checks", Json::array())) c.checks.push_back(CheckRecord::from_json(k));
        for (const auto& a : j.value("axioms", Json::array())) c.axioms.push_back(a.get<std::string>());
        c.attachments = j.value("attachments", Json::object());
        return c;
    }
};

}  // namespace corkcalc
