// Command-line front end: parse graphs, run the freeness / toughness /
// scattering / Hamiltonicity queries, generate certified families, and
// re-verify emitted certificates.
//
// Exit codes: 0 success, 1 semantic failure with a witness, 2 parse error,
// 3 resource limit (enumeration cap or search budget).

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "toughham/cograph_ham.hpp"
#include "toughham/cycle_builder.hpp"
#include "toughham/io.hpp"
#include "toughham/oracles.hpp"

using namespace toughham;
using nlohmann::json;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

json document(const std::string& query, json parameters, json result, json witness,
              const std::vector<std::string>& transcript, long long ms) {
    json doc;
    doc["query"] = query;
    doc["parameters"] = std::move(parameters);
    doc["result"] = std::move(result);
    doc["witness"] = std::move(witness);
    doc["transcript"] = transcript;
    doc["timing_ms"] = ms;
    return doc;
}

std::vector<int> parse_parts(const std::string& text) {
    std::vector<int> parts;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) parts.push_back(std::stoi(cur));
    return parts;
}

int cmd_free_check(const std::string& file) {
    Timer timer;
    Graph g = load_graph(file);
    auto p4 = find_induced_p4(g);
    auto p4p1 = find_induced_p4_union_p1(g);
    json witness;
    if (p4) witness["p4"] = p4->vertices;
    if (p4p1) witness["p4_union_p1"] = p4p1->vertices;
    json result;
    result["p4_free"] = !p4.has_value();
    result["p4_union_p1_free"] = !p4p1.has_value();
    std::cout << document("free-check", {{"file", file}}, result, witness, {}, timer.ms())
              << "\n";
    return (p4 || p4p1) ? 1 : 0;
}

int cmd_toughness(const std::string& file, const std::string& wrt_file,
                  const std::string& t_text, int cap) {
    Timer timer;
    Graph g = load_graph(file);
    if (cap > 0) config().enumeration_cap = cap;
    if (wrt_file.empty()) {
        auto cert = toughness(g);
        json witness;
        if (cert.witness) witness = set_to_json(*cert.witness);
        std::cout << document("toughness", {{"file", file}}, cert.value.to_string(), witness,
                              {}, timer.ms())
                  << "\n";
        return 0;
    }
    VertexSet s = load_vertex_set(wrt_file, g.vertex_count());
    Rational t = Rational::parse(t_text);
    auto violation = is_t_tough_wrt(g, s, t);
    json witness;
    if (violation) witness = violation_to_json(*violation);
    std::cout << document("toughness-wrt",
                          {{"file", file}, {"set", wrt_file}, {"t", t.to_string()}},
                          violation ? "violated" : "satisfied", witness, {}, timer.ms())
              << "\n";
    return violation ? 1 : 0;
}

int cmd_scattering(const std::string& file, int cap) {
    Timer timer;
    Graph g = load_graph(file);
    if (cap > 0) config().enumeration_cap = cap;
    auto cert = scattering(g);
    json witness;
    if (cert.witness) witness = set_to_json(*cert.witness);
    std::cout << document("scattering", {{"file", file}},
                          cert.value ? json(*cert.value) : json("-inf"), witness, {},
                          timer.ms())
              << "\n";
    return 0;
}

int cmd_hamcycle(const std::string& file, const std::string& t_text, bool assume_tough,
                 bool verify) {
    Timer timer;
    Graph g = load_graph(file);
    Rational t = Rational::parse(t_text);
    json params = {{"file", file}, {"t", t.to_string()}, {"assume_tough", assume_tough}};
    if (auto wtn = find_induced_p4_union_p1(g)) {
        std::cout << document("hamcycle", params, "not-p4p1-free",
                              {{"p4_union_p1", wtn->vertices}}, {}, timer.ms())
                  << "\n";
        return 1;
    }
    auto evidence = assume_tough ? ToughnessEvidence::Asserted : ToughnessEvidence::BruteForce;
    auto res = main_hamiltonian(g, t, evidence);
    if (res.ok()) {
        bool checked = res.certificate->verify(g);
        if (verify && g.vertex_count() <= config().oracle_cap)
            checked = checked && oracle::ham_cycle(g).has_value();
        json result;
        result["cycle"] = res.certificate->cycle.vertices;
        result["verified"] = checked;
        std::cout << document("hamcycle", params, result, {}, res.certificate->transcript,
                              timer.ms())
                  << "\n";
        return checked ? 0 : 1;
    }
    if (res.search_exhausted) {
        std::cout << document("hamcycle", params, "search-exhausted", {}, res.transcript,
                              timer.ms())
                  << "\n";
        return 3;
    }
    std::cout << document("hamcycle", params, "hypothesis-violation",
                          violation_to_json(*res.violation), res.transcript, timer.ms())
              << "\n";
    return 1;
}

int cmd_cograph_ham(const std::string& file, bool want_path, bool want_cycle,
                    std::vector<int> connect) {
    Timer timer;
    Graph g = load_graph(file);
    json params = {{"file", file}};
    auto infeasible_doc = [&](const char* query, const ScatteringCertificate& cert) {
        json witness;
        witness["scattering"] = cert.value ? json(*cert.value) : json("-inf");
        if (cert.witness) witness["set"] = set_to_json(*cert.witness);
        std::cout << document(query, params, "infeasible", witness, {}, timer.ms()) << "\n";
        return 1;
    };
    if (!connect.empty()) {
        auto r = jung_ham_connected(g, connect[0], connect[1]);
        if (auto* p = std::get_if<Path>(&r)) {
            std::cout << document("cograph-ham-connect", params, {{"path", p->vertices}}, {},
                                  {}, timer.ms())
                      << "\n";
            return 0;
        }
        return infeasible_doc("cograph-ham-connect", std::get<Infeasible>(r).certificate);
    }
    if (want_cycle) {
        auto r = jung_ham_cycle(g);
        if (auto* c = std::get_if<Cycle>(&r)) {
            std::cout << document("cograph-ham-cycle", params, {{"cycle", c->vertices}}, {},
                                  {}, timer.ms())
                      << "\n";
            return 0;
        }
        return infeasible_doc("cograph-ham-cycle", std::get<Infeasible>(r).certificate);
    }
    (void)want_path;
    auto r = jung_ham_path(g);
    if (auto* p = std::get_if<Path>(&r)) {
        std::cout << document("cograph-ham-path", params, {{"path", p->vertices}}, {}, {},
                              timer.ms())
                  << "\n";
        return 0;
    }
    return infeasible_doc("cograph-ham-path", std::get<Infeasible>(r).certificate);
}

int cmd_gen(const std::string& family, std::vector<std::string> args, const std::string& out,
            std::uint64_t seed) {
    Timer timer;
    FamilySpec spec;
    spec.tag = family;
    spec.seed = seed;
    for (const auto& a : args)
        for (int p : parse_parts(a)) spec.params.push_back(p);
    auto inst = generate(spec);
    save_graph(out, inst.graph);
    json result;
    result["n"] = inst.graph.vertex_count();
    result["m"] = inst.graph.edge_count();
    result["spec"] = inst.spec.to_string();
    if (inst.toughness) result["toughness"] = inst.toughness->value.to_string();
    result["p4_free"] = inst.p4_free;
    result["p4_union_p1_free"] = inst.p4_union_p1_free;
    std::cout << document("gen", {{"family", family}, {"out", out}}, result, {}, {},
                          timer.ms())
              << "\n";
    return 0;
}

int cmd_verify(const std::string& graph_file, const std::string& cert_file) {
    Timer timer;
    Graph g = load_graph(graph_file);
    std::ifstream in(cert_file);
    if (!in) throw MalformedInput("cannot open " + cert_file);
    json doc = json::parse(in);
    std::string query = doc.value("query", "");
    auto fail = [&](const std::string& why) {
        std::cout << document("verify", {{"certificate", cert_file}}, "rejected",
                              {{"reason", why}}, {}, timer.ms())
                  << "\n";
        return 1;
    };
    auto pass = [&]() {
        std::cout << document("verify", {{"certificate", cert_file}}, "accepted", {}, {},
                              timer.ms())
                  << "\n";
        return 0;
    };

    if (query == "hamcycle" || query == "cograph-ham-cycle") {
        if (!doc["result"].is_object() || !doc["result"].contains("cycle"))
            return fail("no cycle in the certificate");
        std::vector<int> vs = doc["result"]["cycle"].get<std::vector<int>>();
        if (int(vs.size()) != g.vertex_count()) return fail("cycle does not span the graph");
        for (std::size_t i = 0; i < vs.size(); ++i) {
            int u = vs[i], v = vs[(i + 1) % vs.size()];
            if (u < 0 || u >= g.vertex_count()) return fail("vertex out of range");
            if (!g.adjacent(u, v))
                return fail("missing edge " + std::to_string(u) + "-" + std::to_string(v));
        }
        Cycle c(vs);
        if (!c.is_hamiltonian(g)) return fail("repeated vertex");
        return pass();
    }
    if (query == "cograph-ham-path" || query == "cograph-ham-connect") {
        std::vector<int> vs = doc["result"]["path"].get<std::vector<int>>();
        Path p(vs);
        if (!p.verify(g) || p.length() != g.vertex_count()) return fail("invalid path");
        return pass();
    }
    if (query == "free-check") {
        if (doc["witness"].contains("p4")) {
            InducedWitness w{Pattern::P4, doc["witness"]["p4"].get<std::vector<int>>()};
            if (!w.verify(g)) return fail("p4 witness does not verify");
        }
        if (doc["witness"].contains("p4_union_p1")) {
            InducedWitness w{Pattern::P4UnionP1,
                             doc["witness"]["p4_union_p1"].get<std::vector<int>>()};
            if (!w.verify(g)) return fail("p4+p1 witness does not verify");
        }
        return pass();
    }
    if (query == "toughness") {
        std::string value = doc["result"].get<std::string>();
        if (value == "inf") return g.is_complete() ? pass() : fail("graph is not complete");
        VertexSet w(g.vertex_count());
        for (int v : doc["witness"].get<std::vector<int>>()) w.insert(v);
        int c = component_count(g, w);
        if (c < 2) return fail("witness is not a cutset");
        if (Rational(w.count(), c) != Rational::parse(value)) return fail("ratio mismatch");
        return pass();
    }
    if (query == "scattering") {
        if (doc["result"].is_string()) return g.is_complete() ? pass() : fail("not complete");
        VertexSet w(g.vertex_count());
        for (int v : doc["witness"].get<std::vector<int>>()) w.insert(v);
        int c = component_count(g, w);
        if (c < 2) return fail("witness is not a cutset");
        if (c - w.count() != doc["result"].get<int>()) return fail("value mismatch");
        return pass();
    }
    return fail("unknown certificate query: " + query);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"constructive Hamiltonicity toolkit for tough graphs"};
    app.require_subcommand(1);

    if (const char* budget = std::getenv("TOUGHHAM_NODE_BUDGET")) {
        config().cycle_node_budget = std::atoll(budget);
        config().matching_node_budget = std::atoll(budget);
    }

    std::string file, wrt_file, t_text = "23", out_file;
    int cap = 0;
    bool assume_tough = false, verify_flag = false, want_path = false, want_cycle = false;
    std::vector<int> connect;
    std::string family;
    std::vector<std::string> gen_args;
    std::uint64_t seed = 0;
    std::string cert_file;

    auto* free_cmd = app.add_subcommand("free-check", "forbidden induced pattern check");
    free_cmd->add_option("file", file)->required();

    auto* tough_cmd = app.add_subcommand("toughness", "exact toughness or the wrt check");
    tough_cmd->add_option("file", file)->required();
    tough_cmd->add_option("--wrt", wrt_file, "vertex set file for the relative check");
    tough_cmd->add_option("--t", t_text, "bound for the relative check");
    tough_cmd->add_option("--cap", cap, "enumeration cap override");

    auto* scat_cmd = app.add_subcommand("scattering", "exact scattering number");
    scat_cmd->add_option("file", file)->required();
    scat_cmd->add_option("--cap", cap);

    auto* ham_cmd = app.add_subcommand("hamcycle", "Hamiltonian cycle pipeline");
    ham_cmd->add_option("file", file)->required();
    ham_cmd->add_option("--t", t_text, "toughness parameter (rational)");
    ham_cmd->add_flag("--assume-tough", assume_tough, "skip the toughness certification");
    ham_cmd->add_flag("--certify", "certify toughness by enumeration (default)");
    ham_cmd->add_flag("--verify", verify_flag, "re-check the output with the oracle");

    auto* cog_cmd = app.add_subcommand("cograph-ham", "constructive results for P4-free graphs");
    cog_cmd->add_option("file", file)->required();
    cog_cmd->add_flag("--path", want_path);
    cog_cmd->add_flag("--cycle", want_cycle);
    cog_cmd->add_option("--connect", connect, "two endpoints")->expected(2);

    auto* gen_cmd = app.add_subcommand("gen", "generate a certified family member");
    gen_cmd->add_option("family", family)->required();
    gen_cmd->add_option("params", gen_args, "sizes, comma lists allowed");
    gen_cmd->add_option("-o,--out", out_file)->required();
    gen_cmd->add_option("--seed", seed);

    auto* verify_cmd = app.add_subcommand("verify", "re-check an emitted certificate");
    verify_cmd->add_option("graph", file)->required();
    verify_cmd->add_option("certificate", cert_file)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (free_cmd->parsed()) return cmd_free_check(file);
        if (tough_cmd->parsed()) return cmd_toughness(file, wrt_file, t_text, cap);
        if (scat_cmd->parsed()) return cmd_scattering(file, cap);
        if (ham_cmd->parsed()) return cmd_hamcycle(file, t_text, assume_tough, verify_flag);
        if (cog_cmd->parsed()) return cmd_cograph_ham(file, want_path, want_cycle, connect);
        if (gen_cmd->parsed()) return cmd_gen(family, gen_args, out_file, seed);
        if (verify_cmd->parsed()) return cmd_verify(file, cert_file);
    } catch (const MalformedInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InstanceTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const SearchExhaustedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const HypothesisError& e) {
        std::cout << violation_to_json(e.violation()) << "\n";
        return 1;
    }
    return 0;
}
