#pragma once

#include "corkcalc/io.hpp"
#include "corkcalc/ledger.hpp"
#include "corkcalc/wreath.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <string>
#include <vector>

namespace corkcalc {

inline std::string tool_version() { return "corkcalc 0.1.0"; }

inline std::string iso_timestamp_utc() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
#if defined(_WIN32)
    gmtime_s(&tm, &t);
#else
    gmtime_r(&t, &tm);
#endif
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900, tm.tm_mon + 1,
                  tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

/// Wraps a certificate into the on-disk document. Everything except
/// `generated_at` is a deterministic function of the request.
inline Json certificate_document(const Json& request, const Certificate& cert) {
    Json doc;
    doc["format"] = 1;
    doc["tool"] = tool_version();
    doc["generated_at"] = iso_timestamp_utc();
    doc["request"] = request;
    doc["certificate"] = cert.to_json();
    return doc;
}

struct PipelineResult {
    Json document;
    bool pass = false;
};

namespace pipelinedetail {

inline void check_bounds(const Json& request, std::size_t r, const std::vector<int>& ns, int m) {
    if (request.value("force", false)) return;
    if (r > 4) throw Error("bounds: chain length r > 4 (pass force to override)");
    for (int n : ns)
        if (n < 2 || n > 6) throw Error("bounds: block parameter n out of [2,6] (pass force to override)");
    if (m < 0 || m > 3) throw Error("bounds: m out of [1,3] (pass force to override)");
}

struct BlockChain {
    BlockAction amplified;
    Certificate cert;
    bool ok = false;
};

/// zn blocks glued left-to-right: `ns` lists the cyclic orders base-first, so
/// the resulting group is Z_{ns[0]} wr Z_{ns[1]} wr ... wr Z_{ns[r-1]}.
inline BlockChain build_block_chain(const std::vector<int>& ns) {
    BlockChain out;
    BlockAction cur = zn_block(ns.front());
    out.cert.absorb(cur.certificate);
    for (std::size_t k = 1; k < ns.size(); ++k) {
        BlockAction top = zn_block(ns[k]);
        out.cert.absorb(top.certificate);
        BlockAction glued = wreath_glue(top.action, cur.action);
        out.cert.absorb(glued.certificate);
        if (!glued.certificate.passed()) {
            out.amplified = std::move(glued);
            return out;
        }
        cur = std::move(glued);
    }
    BlockAction amplified = p1_to_p2(cur.action, out.cert);
    out.cert.absorb(amplified.certificate);
    out.amplified = std::move(amplified);
    out.ok = out.cert.passed();
    return out;
}

inline GroupPtr load_group(const Json& request) { return group_from_json(request.at("group")); }

inline std::vector<int> series_block_orders(const SubnormalSeries& ser) {
    std::vector<int> ns;
    for (auto it = ser.quotient_orders.rbegin(); it != ser.quotient_orders.rend(); ++it)
        ns.push_back(static_cast<int>(*it));
    return ns;
}

}  // namespace pipelinedetail

inline PipelineResult run_request(const Json& request);

namespace pipelinedetail {

inline PipelineResult run_catalog(const Json& request) {
    Certificate cert;
    cert.add_chain("catalog");
    Json entries = Json::array();
    for (const auto& e : catalog()) {
        auto order = group_order(e.group);
        entries.push_back(Json{{"name", e.name},
                               {"description", e.description},
                               {"order", order ? Json(order->str()) : Json("infinite")}});
    }
    cert.attachments["entries"] = std::move(entries);
    cert.add_check("catalog listing", std::to_string(catalog().size()) + " entries", true);
    return {certificate_document(request, cert), true};
}

inline PipelineResult run_embed(const Json& request) {
    Certificate cert;
    GroupPtr g = load_group(request);
    cert.add_chain("load-group", Json{{"group", request.at("group")}});
    DerivedSeries ds = derived_series(g);
    cert.add_chain("derived-series");
    cert.add_check("derived series terminates at 1", "brute-force commutator closure", ds.solvable, "",
                   ds.solvable ? std::to_string(ds.series.subgroups.size() - 1) + " steps"
                               : "stable perfect subgroup of order " + std::to_string(ds.stable_subgroup.size()));
    if (!ds.solvable) return {certificate_document(request, cert), false};

    SubnormalSeries ser = prime_cyclic_series(g);
    cert.add_chain("prime-cyclic-series", Json{{"quotient_orders", ser.quotient_orders}});
    cert.add_check("series quotients are cyclic of prime order",
                   std::to_string(ser.length()) + " steps, normality by conjugation of all pairs", true);

    SeriesEmbedding se = series_embed(g, ser);
    cert.absorb(se.certificate);
    cert.attachments["embedding"] = hom_to_json(se.embedding);
    cert.attachments["target"] = group_to_json(se.target);
    return {certificate_document(request, cert), cert.passed()};
}

inline PipelineResult run_block(const Json& request) {
    std::vector<int> ns = request.at("n").get<std::vector<int>>();
    if (ns.empty()) throw Error("block: at least one n required");
    check_bounds(request, ns.size(), ns, 1);
    BlockChain chain = build_block_chain(ns);
    Certificate cert = std::move(chain.cert);
    if (chain.ok) {
        auto order = group_order(chain.amplified.action.group);
        cert.add_check("wreath group order", "closed form |N|^{|H|} |H| iterated", true, "",
                       order ? order->str() : "");
        cert.attachments["block"] = chain.amplified.block.to_json();
        cert.attachments["group"] = group_to_json(chain.amplified.action.group);
    }
    return {certificate_document(request, cert), cert.passed()};
}

inline PipelineResult run_cork(const Json& request) {
    const std::string mode = request.value("mode", "weak");
    const int m = request.value("m", 1);
    const std::size_t ball_n = request.value("ball", 200u);
    Certificate cert;
    GroupPtr g = load_group(request);
    cert.add_chain("load-group", Json{{"group", request.at("group")}, {"mode", mode}});

    if (mode == "equivariant") {
        check_bounds(request, 0, {}, m);
        if (!is_finite_group(g)) throw Error("cork --mode equivariant: finite groups only");
        GroupPtr wreath = wreath_product(free_abelian_group(m), g);
        LedgerConfig cfg{wreath, regular_orbit(g), "equivariant", ball_n, true};
        cert.absorb(effectiveness_certificate(cfg));
        CayleyComplexReport rep = cayley_complex(g);
        cert.add_chain("cayley-complex", Json{{"group", spec_name(*g)}});
        cert.add_check("cork complex connected",
                       std::to_string(rep.vertices) + " vertices, " + std::to_string(rep.handle_edges) +
                           " handle edges in " + std::to_string(rep.doubled_pairs) + " doubled pairs",
                       rep.connected);
        cert.attachments["cayley"] = rep.to_json();
        return {certificate_document(request, cert), cert.passed()};
    }

    // weak and stein-shadow both run the solvable pipeline
    DerivedSeries ds = derived_series(g);
    cert.add_check("group solvable", "derived series", ds.solvable);
    if (!ds.solvable) return {certificate_document(request, cert), false};
    SubnormalSeries ser = prime_cyclic_series(g);
    SeriesEmbedding se = series_embed(g, ser);
    cert.absorb(se.certificate);

    std::vector<int> ns = series_block_orders(ser);
    check_bounds(request, ns.size(), ns, m);
    BlockChain chain = build_block_chain(ns);
    cert.absorb(chain.cert);
    if (!chain.ok) return {certificate_document(request, cert), false};
    if (!specs_equal(chain.amplified.action.group, se.target))
        throw Error("cork: block pipeline group differs from the embedding target");

    if (mode == "stein-shadow") {
        cert.absorb(stein_shadow_certificate(chain.amplified.action.group, action_orbit(chain.amplified.action), ball_n));
    } else if (mode == "weak") {
        GroupPtr wreath = wreath_product(free_abelian_group(m), chain.amplified.action.group);
        LedgerConfig cfg{wreath, action_orbit(chain.amplified.action), "weak", ball_n, true};
        cert.absorb(effectiveness_certificate(cfg));
    } else {
        throw Error("cork: unknown mode '" + mode + "'");
    }
    return {certificate_document(request, cert), cert.passed()};
}

}  // namespace pipelinedetail

/// Runs a request document and produces the certificate document.
inline PipelineResult run_request(const Json& request) {
    const std::string cmd = request.at("command").get<std::string>();
    if (cmd == "catalog") return pipelinedetail::run_catalog(request);
    if (cmd == "embed") return pipelinedetail::run_embed(request);
    if (cmd == "block") return pipelinedetail::run_block(request);
    if (cmd == "cork") return pipelinedetail::run_cork(request);
    throw Error("unknown command '" + cmd + "'");
}

/// Replays a certificate document: re-runs its embedded request and compares
/// everything except the timestamp, byte for byte.
inline PipelineResult run_verify(const Json& original) {
    Certificate cert;
    Json request = original.at("request");
    cert.add_chain("verify", Json{{"command", request.value("command", "")}});
    PipelineResult fresh = run_request(request);
    Json a = original;
    Json b = fresh.document;
    a.erase("generated_at");
    b.erase("generated_at");
    bool match = a.dump() == b.dump();
    cert.add_check("replay reproduces the certificate", "byte comparison excluding the timestamp", match);
    bool original_passed = original.value("certificate", Json::object()).value("passed", false);
    cert.add_check("replayed checks pass", "re-run", fresh.pass && original_passed);
    Json verify_request{{"command", "verify"}};
    return {certificate_document(verify_request, cert), match && fresh.pass && original_passed};
}

}  // namespace corkcalc
