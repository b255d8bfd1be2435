#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mcsf/component_ilp.hpp"
#include "mcsf/eptas.hpp"
#include "mcsf/fpt_h.hpp"
#include "mcsf/oracle.hpp"
#include "mcsf/reductions.hpp"
#include "mcsf/treewidth_dp.hpp"
#include "mcsf/vc_ilp.hpp"

namespace mcsf::cli {

using nlohmann::json;

enum ExitCode { ok = 0, failed = 1, parse_error = 2, precondition_error = 3, resource_error = 4 };

inline std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PreconditionError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PreconditionError("cannot write " + path);
    out << text;
}

struct RunReport {
    std::string instance_digest;
    std::string algorithm;
    std::string answer;  // size, or yes/no for the decision solver
    std::vector<int> vector;  // star sizes, non-increasing
    double elapsed_ms = 0;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> parameters;

    friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline void to_json(json& j, const RunReport& r) {
    j = json{{"instance_digest", r.instance_digest}, {"algorithm", r.algorithm}, {"answer", r.answer},
             {"vector", r.vector},   {"elapsed_ms", r.elapsed_ms},       {"seed", r.seed},
             {"parameters", r.parameters}};
}

inline void from_json(const json& j, RunReport& r) {
    j.at("instance_digest").get_to(r.instance_digest);
    j.at("algorithm").get_to(r.algorithm);
    j.at("answer").get_to(r.answer);
    j.at("vector").get_to(r.vector);
    j.at("elapsed_ms").get_to(r.elapsed_ms);
    j.at("seed").get_to(r.seed);
    j.at("parameters").get_to(r.parameters);
}

inline json certificate_json(const Certificate& c) {
    return json{{"star_sizes", c.forest.sizes()}, {"emb1", c.emb1.stars}, {"emb2", c.emb2.stars}};
}

inline Certificate certificate_from_json(const json& j) {
    Certificate c;
    c.forest = StarForest(j.at("star_sizes").get<std::vector<int>>());
    c.emb1.stars = j.at("emb1").get<std::vector<std::vector<Vertex>>>();
    c.emb2.stars = j.at("emb2").get<std::vector<std::vector<Vertex>>>();
    return c;
}

// Empty string when valid.
inline std::string check_certificate(const Instance& inst, const Certificate& c) {
    if (c.emb1.shape().sizes() != c.forest.sizes() || c.emb2.shape().sizes() != c.forest.sizes())
        return "shape mismatch between the forest and its embeddings";
    auto r1 = verify_embedding(inst.g1, c.forest, c.emb1);
    if (!r1.ok) return "G1: " + r1.violation;
    auto r2 = verify_embedding(inst.g2, c.forest, c.emb2);
    if (!r2.ok) return "G2: " + r2.violation;
    return {};
}

inline json labels_json(const red::LabeledInstance& li) {
    json j{{"kind", li.kind}, {"g1", li.names1}, {"g2", li.names2}, {"params", li.params}};
    if (!li.kway.items.empty()) j["kway"] = {{"items", li.kway.items}, {"k", li.kway.k}, {"C", li.kway.C}};
    return j;
}

struct SolveOptions {
    std::string algo = "auto";
    int k = -1;  // derived from the instance when negative
    double epsilon = 0.5;
    std::string mode = "auto";
    long trials = 0;
    double fail_prob = 0.01;
    std::uint64_t seed = 0;
    std::string dump_decomposition;
};

inline int min_cover_size(const Graph& g) {
    for (int k = 0;; ++k)
        if (min_vertex_cover(g, k)) return k;
}

inline std::string auto_choice(const Instance& inst) {
    if (inst.g1.vertex_count() <= default_oracle_limit && inst.g2.vertex_count() <= default_oracle_limit)
        return "oracle";
    if (std::max(max_component_size(inst.g1), max_component_size(inst.g2)) <= max_component_bound) return "cc";
    if (min_vertex_cover(inst.g1, 3) && min_vertex_cover(inst.g2, 3)) return "vc";
    return "tw";
}

struct SolveOutcome {
    RunReport report;
    std::optional<Certificate> certificate;
};

inline EmbedMode parse_mode(const std::string& mode) {
    if (mode == "auto") return EmbedMode::automatic;
    if (mode == "exact") return EmbedMode::exact;
    if (mode == "randomized") return EmbedMode::randomized;
    throw PreconditionError("unknown mode " + mode);
}

// Exact embeddings of the star forest with vector v into both graphs.
inline std::optional<Certificate> witness(const Instance& inst, const StarCountVector& v) {
    Certificate c;
    c.forest = StarForest::from_vector(v);
    auto e1 = embeds_star_forest(inst.g1, c.forest, EmbedMode::exact);
    auto e2 = embeds_star_forest(inst.g2, c.forest, EmbedMode::exact);
    if (!e1 || !e2) return std::nullopt;
    c.emb1 = *e1;
    c.emb2 = *e2;
    return c;
}

inline SolveOutcome solve_instance(const Instance& inst, const std::string& digest, const SolveOptions& opt,
                                   bool want_certificate) {
    SolveOutcome out;
    RunReport& r = out.report;
    r.instance_digest = digest;
    r.seed = opt.seed;
    std::string algo = opt.algo;
    if (algo == "auto") {
        algo = auto_choice(inst);
        r.parameters["auto_choice"] = algo;
    }
    r.algorithm = algo;
    const auto start = std::chrono::steady_clock::now();
    std::optional<StarCountVector> vec;
    if (algo == "oracle") {
        auto res = opt_common_brute(inst.g1, inst.g2);
        vec = res.vector;
        out.certificate = Certificate{res.forest(), res.emb1, res.emb2};
    } else if (algo == "fpt-h") {
        ColorCodingConfig cfg{opt.trials, opt.fail_prob, opt.seed};
        auto res = solve_h(inst, cfg, parse_mode(opt.mode));
        r.answer = res.yes ? "yes" : "no";
        r.parameters["h"] = std::to_string(inst.h);
        r.parameters["mode"] = opt.mode;
        r.parameters["route"] = res.route;
        if (res.certificate) {
            r.vector = res.certificate->forest.sizes();
            out.certificate = res.certificate;
        }
    } else if (algo == "vc") {
        const int k = opt.k >= 0 ? opt.k : std::max(min_cover_size(inst.g1), min_cover_size(inst.g2));
        r.parameters["k"] = std::to_string(k);
        vec = solve_vc(inst.g1, inst.g2, k).vector;
    } else if (algo == "cc") {
        const int k =
            opt.k >= 0 ? opt.k : std::max({1, max_component_size(inst.g1), max_component_size(inst.g2)});
        r.parameters["k"] = std::to_string(k);
        vec = solve_cc(inst.g1, inst.g2, k).vector;
    } else if (algo == "td-deg") {
        vec = solve_td_deg(inst.g1, inst.g2).vector;
    } else if (algo == "tw") {
        auto res = tw::solve_tw(inst.g1, inst.g2);
        r.parameters["width1"] = std::to_string(res.width1);
        r.parameters["width2"] = std::to_string(res.width2);
        vec = res.vector;
        if (!opt.dump_decomposition.empty()) {
            std::ostringstream text;
            text << "G1\n";
            tw::write_decomposition(text, tw::heuristic_decomposition(inst.g1));
            text << "G2\n";
            tw::write_decomposition(text, tw::heuristic_decomposition(inst.g2));
            write_file(opt.dump_decomposition, text.str());
        }
    } else if (algo == "eptas") {
        auto res = solve_eptas(inst.g1, inst.g2, {opt.epsilon});
        r.parameters["epsilon"] = json(opt.epsilon).dump();
        r.parameters["k"] = std::to_string(res.k);
        r.parameters["r1"] = std::to_string(res.r1);
        r.parameters["r2"] = std::to_string(res.r2);
        vec = res.vector;
    } else {
        throw PreconditionError("unknown algorithm " + algo);
    }
    if (vec) {
        r.answer = std::to_string(vec->total_vertices());
        r.vector = StarForest::from_vector(*vec).sizes();
        if (want_certificate && !out.certificate) out.certificate = witness(inst, *vec);
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

inline std::uint64_t default_seed() {
    if (const char* env = std::getenv("MCSF_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw PreconditionError(std::string("MCSF_SEED is not an integer: ") + env);
        }
    }
    return 0;
}

inline std::string join_sizes(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
    return out;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string part; std::getline(in, part, sep);)
        if (!part.empty()) out.push_back(part);
    return out;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Maximum common star forest solver"};
    app.require_subcommand(1);

    std::string instance_path, certificate_path;
    SolveOptions opt;
    std::optional<std::uint64_t> seed_flag;

    auto* solve = app.add_subcommand("solve", "Solve an instance and print a JSON report");
    solve->add_option("instance", instance_path, "Instance file")->required();
    solve->add_option("--algo", opt.algo, "Algorithm")
        ->check(CLI::IsMember({"auto", "oracle", "fpt-h", "vc", "cc", "td-deg", "tw", "eptas"}));
    solve->add_option("--k", opt.k, "Cover bound (vc) or component bound (cc)");
    solve->add_option("--epsilon", opt.epsilon, "Approximation parameter for eptas");
    solve->add_option("--mode", opt.mode, "Embedding mode for fpt-h")
        ->check(CLI::IsMember({"auto", "exact", "randomized"}));
    solve->add_option("--trials", opt.trials, "Colour-coding trials, 0 for automatic");
    solve->add_option("--fail-prob", opt.fail_prob, "Failure probability for automatic trials");
    solve->add_option("--seed", seed_flag, "Random seed (default: MCSF_SEED or 0)");
    solve->add_option("--dump-decomposition", opt.dump_decomposition, "Write tree decompositions (tw)");
    solve->add_option("--certificate", certificate_path, "Write a certificate JSON when one is found");

    std::string verify_instance, verify_cert;
    auto* verify = app.add_subcommand("verify", "Check a certificate against an instance");
    verify->add_option("instance", verify_instance, "Instance file")->required();
    verify->add_option("certificate", verify_cert, "Certificate JSON")->required();

    auto* gen = app.add_subcommand("gen", "Generate a reduction instance");
    gen->require_subcommand(1);
    std::string gen_graph, gen_out, gen_cert, gen_items;
    int gen_k = 1;
    long gen_capacity = 0;
    bool gen_rescale = false;
    auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out,-o", gen_out, "Instance file to write (labels go to <out>.labels.json)")->required();
    };
    auto* g_dom = gen->add_subcommand("domset", "Dominating set of size k");
    g_dom->add_option("--graph", gen_graph, "Input graph file")->required();
    g_dom->add_option("--k", gen_k, "Dominating set bound")->required();
    add_out(g_dom);
    auto* g_p3 = gen->add_subcommand("p3", "P3 factor");
    g_p3->add_option("--graph", gen_graph, "Input graph file")->required();
    add_out(g_p3);
    std::vector<CLI::App*> kway_subs;
    for (const char* name : {"kway-td5", "kway-pw4"}) {
        auto* sub = gen->add_subcommand(name, "k-way partition");
        sub->add_option("--items", gen_items, "Comma separated items")->required();
        sub->add_option("--k", gen_k, "Number of bins")->required();
        sub->add_option("--capacity", gen_capacity, "Bin capacity C")->required();
        sub->add_flag("--rescale", gen_rescale, "Multiply items and capacity by 2k+10 first");
        sub->add_option("--certificate", gen_cert, "Write the forward certificate when a partition exists");
        add_out(sub);
        kway_subs.push_back(sub);
    }

    std::string bench_dir, bench_algos = "auto", bench_csv;
    auto* bench = app.add_subcommand("bench", "Run solvers over a directory of instances, CSV output");
    bench->add_option("dir", bench_dir, "Directory of instance files")->required();
    bench->add_option("--algos", bench_algos, "Comma separated algorithms");
    bench->add_option("--csv", bench_csv, "CSV file (default: standard output)");
    bench->add_option("--seed", seed_flag, "Random seed (default: MCSF_SEED or 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        opt.seed = seed_flag ? *seed_flag : default_seed();
        if (*solve) {
            const std::string text = read_file(instance_path);
            const auto inst = parse_instance(text);
            auto res = solve_instance(inst, fnv1a_digest(text), opt, !certificate_path.empty());
            if (!certificate_path.empty()) {
                if (res.certificate) write_file(certificate_path, certificate_json(*res.certificate).dump() + "\n");
                else err << "no certificate available\n";
            }
            out << json(res.report).dump(2) << "\n";
            return ok;
        }
        if (*verify) {
            const auto inst = parse_instance(read_file(verify_instance));
            Certificate cert;
            try {
                cert = certificate_from_json(json::parse(read_file(verify_cert)));
            } catch (const json::exception& e) {
                throw ParseError(0, std::string("certificate: ") + e.what());
            }
            const auto why = check_certificate(inst, cert);
            if (!why.empty()) {
                err << "invalid: " << why << "\n";
                return failed;
            }
            out << "valid: common star forest on " << cert.forest.total_vertices() << " vertices (h = " << inst.h
                << ")\n";
            return ok;
        }
        if (*gen) {
            red::LabeledInstance li;
            std::optional<Certificate> cert;
            if (*g_dom) li = red::gen_domset(parse_graph(read_file(gen_graph)), gen_k);
            else if (*g_p3) li = red::gen_p3(parse_graph(read_file(gen_graph)));
            else {
                red::KwayInstance kw{{}, gen_k, gen_capacity};
                for (const auto& s : split(gen_items, ',')) {
                    try {
                        kw.items.push_back(std::stol(s));
                    } catch (const std::exception&) {
                        throw PreconditionError("item '" + s + "' is not an integer");
                    }
                }
                if (gen_rescale) kw = red::rescale(kw);
                li = kway_subs[0]->parsed() ? red::gen_kway_td5(kw) : red::gen_kway_pw4(kw);
                if (!gen_cert.empty()) {
                    if (auto part = red::kway_brute(li.kway)) cert = red::embed_from_partition(li, *part);
                    else err << "no partition exists; no certificate written\n";
                }
            }
            write_file(gen_out, serialize_instance(li.instance));
            write_file(gen_out + ".labels.json", labels_json(li).dump() + "\n");
            if (cert) write_file(gen_cert, certificate_json(*cert).dump() + "\n");
            out << li.kind << ": " << li.instance.g1.vertex_count() << " + " << li.instance.g2.vertex_count()
                << " vertices, h = " << li.instance.h << "\n";
            return ok;
        }
        if (*bench) {
            std::vector<std::filesystem::path> files;
            for (const auto& entry : std::filesystem::directory_iterator(bench_dir))
                if (entry.is_regular_file() && entry.path().extension() != ".json") files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            std::ostringstream csv;
            csv << "digest,algo,answer,vector,elapsed_ms,seed\n";
            for (const auto& file : files) {
                const std::string text = read_file(file.string());
                const std::string digest = fnv1a_digest(text);
                for (const auto& algo : split(bench_algos, ',')) {
                    SolveOptions o = opt;
                    o.algo = algo;
                    RunReport r;
                    try {
                        r = solve_instance(parse_instance(text), digest, o, false).report;
                    } catch (const ParseError&) {
                        r = {digest, algo, "error:2", {}, 0, o.seed, {}};
                    } catch (const PreconditionError&) {
                        r = {digest, algo, "error:3", {}, 0, o.seed, {}};
                    } catch (const ResourceError&) {
                        r = {digest, algo, "error:4", {}, 0, o.seed, {}};
                    }
                    csv << r.instance_digest << ',' << algo << ',' << r.answer << ',' << join_sizes(r.vector) << ','
                        << r.elapsed_ms << ',' << r.seed << "\n";
                }
            }
            if (bench_csv.empty()) out << csv.str();
            else write_file(bench_csv, csv.str());
            return ok;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return parse_error;
    } catch (const PreconditionError& e) {
        err << "precondition failed: " << e.what() << "\n";
        return precondition_error;
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << "\n";
        return resource_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return failed;
    }
    return failed;
}

} // namespace mcsf::cli
