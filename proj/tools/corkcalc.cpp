#include "corkcalc/corkcalc.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using corkcalc::Json;

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw corkcalc::Error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

/// `--group` accepts a catalog name or a path to a group document.
Json group_argument(const std::string& arg) {
    if (arg.size() > 5 && arg.substr(arg.size() - 5) == ".json") return load_json_file(arg);
    return Json(arg);
}

int finish(const corkcalc::PipelineResult& result, const std::string& out_path) {
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << result.document.dump(2) << "\n";
    } else {
        std::cout << result.document.dump(2) << "\n";
    }
    const auto& cert = result.document["certificate"];
    for (const auto& c : cert.value("checks", Json::array()))
        std::cerr << (c.value("outcome", "") == "pass" ? "  pass  " : "  FAIL  ") << c.value("name", "")
                  << "  [" << c.value("range", "") << "]\n";
    std::cerr << (result.pass ? "PASS" : "FAIL") << (out_path.empty() ? "" : "  -> " + out_path) << "\n";
    return result.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"corkcalc: wreath-product arithmetic, embedding certificates and cork-twist ledgers"};
    app.require_subcommand(1);

    std::string group, out_path, mode = "weak", cert_path;
    std::vector<int> ns;
    int m = 1, window = 100;
    std::size_t ball = 200;
    bool force = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "write the certificate document to this path");
        cmd->add_flag("--force", force, "override the default parameter bounds");
    };

    CLI::App* cat = app.add_subcommand("catalog", "list the built-in groups");
    add_common(cat);

    CLI::App* embed = app.add_subcommand("embed", "prime-cyclic series and iterated wreath embedding");
    embed->add_option("--group", group, "catalog name or group document path")->required();
    add_common(embed);

    CLI::App* block = app.add_subcommand("block", "build and certify the block chain for Z_{n1} wr ... wr Z_{nr}");
    block->add_option("--n", ns, "cyclic orders, base first")->required()->expected(-1);
    block->add_option("--window", window, "verification window radius for countable leaf sets");
    add_common(block);

    CLI::App* cork = app.add_subcommand("cork", "full cork-twist ledger with effectiveness certificate");
    cork->add_option("--group", group, "catalog name or group document path")->required();
    cork->add_option("--m", m, "rank of the free-abelian twist part");
    cork->add_option("--ball", ball, "number of group elements to enumerate");
    cork->add_option("--mode", mode, "weak | equivariant | stein-shadow");
    cork->add_option("--window", window, "verification window radius");
    add_common(cork);

    CLI::App* verify = app.add_subcommand("verify", "replay a certificate document and compare");
    verify->add_option("certificate", cert_path, "certificate document path")->required();
    add_common(verify);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cat->parsed()) {
            Json request{{"command", "catalog"}};
            corkcalc::PipelineResult r = corkcalc::run_request(request);
            for (const auto& e : r.document["certificate"]["attachments"]["entries"])
                std::cout << e.value("name", "") << "\t" << e.value("order", Json("?")).get<std::string>() << "\t"
                          << e.value("description", "") << "\n";
            if (!out_path.empty()) {
                std::ofstream outf(out_path);
                outf << r.document.dump(2) << "\n";
            }
            return r.pass ? 0 : 1;
        }
        if (embed->parsed()) {
            Json request{{"command", "embed"}, {"group", group_argument(group)}};
            if (force) request["force"] = true;
            return finish(corkcalc::run_request(request), out_path);
        }
        if (block->parsed()) {
            Json request{{"command", "block"}, {"n", ns}, {"window", window}};
            if (force) request["force"] = true;
            return finish(corkcalc::run_request(request), out_path);
        }
        if (cork->parsed()) {
            Json request{{"command", "cork"}, {"group", group_argument(group)}, {"m", m},
                         {"ball", ball},      {"mode", mode},                   {"window", window}};
            if (force) request["force"] = true;
            return finish(corkcalc::run_request(request), out_path);
        }
        if (verify->parsed()) {
            Json doc = load_json_file(cert_path);
            return finish(corkcalc::run_verify(doc), out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
