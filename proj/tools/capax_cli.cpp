// capax - span capacities of graphs: solver, constructions, classifiers,
// and certificate verification.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "capax/capax.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadArguments = 2;
constexpr int kExitResourceLimit = 3;
constexpr int kExitVerificationFailed = 4;

struct GraphSource {
    std::string file;
    std::string family;

    capax::Graph load() const {
        if (!file.empty() == !family.empty())
            throw capax::PreconditionError("provide exactly one of --graph and --family");
        if (!family.empty()) return capax::make_family(family);
        std::ifstream in(file);
        if (!in) throw capax::PreconditionError("cannot open graph file: " + file);
        std::ostringstream text;
        text << in.rdbuf();
        return capax::parse_graph(text.str());
    }
};

void add_graph_source(CLI::App* cmd, GraphSource& src) {
    cmd->add_option("--graph", src.file, "graph file (edge-list format: \"n m\" then m lines \"u v\")");
    cmd->add_option("--family", src.family,
                    "family descriptor: path:n, cycle:n, complete:n, complete_bipartite:r,s, petersen");
}

capax::MovementRule parse_rule(const std::string& s) {
    auto rule = capax::movement_rule_from_string(s);
    if (!rule) throw capax::PreconditionError("unknown rule \"" + s + "\"");
    return *rule;
}

std::size_t default_node_limit() {
    if (const char* env = std::getenv("CAPAX_NODE_LIMIT")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return capax::kDefaultNodeLimit;
}

void emit(const capax::json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw capax::PreconditionError("cannot write " + out_path);
        out << j.dump(2) << "\n";
    }
}

void write_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw capax::PreconditionError("cannot write " + out_path);
        out << text;
    }
}

std::vector<capax::MovementRule> rules_for(const std::string& spec) {
    if (spec == "all")
        return {capax::MovementRule::strong, capax::MovementRule::direct,
                capax::MovementRule::cartesian};
    return {parse_rule(spec)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"capax - multi-player graph tour capacities"};
    app.require_subcommand(1);

    std::size_t node_limit = default_node_limit();
    app.add_option("--node-limit", node_limit,
                   "maximum configuration nodes per search (env CAPAX_NODE_LIMIT)")
        ->capture_default_str();

    int exit_code = kExitOk;

    // ---- capacity ---------------------------------------------------------
    auto* cmd_capacity = app.add_subcommand("capacity", "compute a d-capacity with witness tour");
    GraphSource cap_src;
    add_graph_source(cmd_capacity, cap_src);
    std::string cap_rule = "direct";
    int cap_d = 1;
    std::string cap_out, cap_witness_out;
    cmd_capacity->add_option("--rule", cap_rule, "strong|direct|cartesian")->capture_default_str();
    cmd_capacity->add_option("--d", cap_d, "minimum pairwise distance")->capture_default_str();
    cmd_capacity->add_option("--out", cap_out, "write report JSON here instead of stdout");
    cmd_capacity->add_option("--witness-out", cap_witness_out, "also write the witness certificate");
    cmd_capacity->callback([&] {
        capax::Graph g = cap_src.load();
        auto rep = capax::capacity(g, cap_d, parse_rule(cap_rule), node_limit);
        emit(capax::capacity_report_json(rep), cap_out);
        if (!cap_witness_out.empty() && rep.witness)
            write_text(capax::tour_certificate(*rep.witness, rep.rule, rep.min_distance).dump() + "\n",
                       cap_witness_out);
    });

    // ---- span --------------------------------------------------------------
    auto* cmd_span = app.add_subcommand("span", "compute the vertex span of a variant");
    GraphSource span_src;
    add_graph_source(cmd_span, span_src);
    std::string span_rule = "strong";
    std::string span_out;
    cmd_span->add_option("--rule", span_rule, "strong|direct|cartesian")->capture_default_str();
    cmd_span->add_option("--out", span_out, "write report JSON here instead of stdout");
    cmd_span->callback([&] {
        capax::Graph g = span_src.load();
        int value = capax::span(g, parse_rule(span_rule), node_limit);
        capax::json j;
        j["rule"] = span_rule;
        j["span"] = value;
        emit(j, span_out);
    });

    // ---- classify ----------------------------------------------------------
    auto* cmd_classify = app.add_subcommand("classify", "topfull classification with certificate");
    GraphSource cls_src;
    add_graph_source(cmd_classify, cls_src);
    std::string cls_variant = "all";
    std::string cls_out, cls_witness_out;
    cmd_classify->add_option("--variant", cls_variant, "strong|direct|cartesian|all")
        ->capture_default_str();
    cmd_classify->add_option("--out", cls_out, "write verdict JSON here instead of stdout");
    cmd_classify->add_option("--witness-out", cls_witness_out,
                             "also write the witness certificate of the (single) variant");
    cmd_classify->callback([&] {
        capax::Graph g = cls_src.load();
        auto classify_one = [&](capax::MovementRule rule) -> capax::TopfullVerdict {
            switch (rule) {
                case capax::MovementRule::strong: {
                    capax::TopfullVerdict v;
                    v.variant = capax::MovementRule::strong;
                    v.is_topfull = true;  // every connected graph
                    v.witness = capax::strong_topfull_tour(g);
                    return v;
                }
                case capax::MovementRule::direct: return capax::is_direct_topfull(g);
                case capax::MovementRule::cartesian: return capax::is_cartesian_topfull(g);
            }
            throw capax::PreconditionError("unreachable");
        };

        if (cls_variant == "all") {
            capax::json arr = capax::json::array();
            for (auto rule : rules_for("all")) {
                if (rule == capax::MovementRule::cartesian &&
                    (g.n < 3 || capax::is_path_graph(g)))
                    continue;  // undefined for paths
                arr.push_back(capax::topfull_verdict_json(classify_one(rule)));
            }
            emit(arr, cls_out);
        } else {
            auto verdict = classify_one(parse_rule(cls_variant));
            emit(capax::topfull_verdict_json(verdict), cls_out);
            if (!cls_witness_out.empty() && verdict.witness)
                write_text(
                    capax::tour_certificate(*verdict.witness, verdict.variant, 1).dump() + "\n",
                    cls_witness_out);
        }
    });

    // ---- construct ---------------------------------------------------------
    auto* cmd_construct =
        app.add_subcommand("construct", "emit a tour certificate from a named generator");
    GraphSource con_src;
    add_graph_source(cmd_construct, con_src);
    std::string con_generator;
    int con_n = 0, con_d = 1, con_r = 0, con_s = 0;
    std::string con_cycle, con_out;
    cmd_construct
        ->add_option("--generator", con_generator,
                     "cycle-direct|cycle-cartesian|complete-bipartite|hamiltonian-bipartite|"
                     "strong-topfull|direct-topfull|cartesian-topfull")
        ->required();
    cmd_construct->add_option("--n", con_n, "cycle length for the cycle generators");
    cmd_construct->add_option("--d", con_d, "distance parameter for the cycle generators");
    cmd_construct->add_option("--r", con_r, "left part size for complete-bipartite");
    cmd_construct->add_option("--s", con_s, "right part size for complete-bipartite");
    cmd_construct->add_option("--cycle", con_cycle,
                              "comma-separated hamiltonian cycle for hamiltonian-bipartite");
    cmd_construct->add_option("--out", con_out, "write the certificate here instead of stdout");
    cmd_construct->callback([&] {
        capax::March tour;
        capax::MovementRule rule;
        int claimed = 1;
        if (con_generator == "cycle-direct") {
            tour = capax::cycle_tour_direct(con_n, con_d);
            rule = capax::MovementRule::direct;
            claimed = con_d;
        } else if (con_generator == "cycle-cartesian") {
            tour = capax::cycle_tour_cartesian(con_n, con_d);
            rule = capax::MovementRule::cartesian;
            claimed = con_d;
        } else if (con_generator == "complete-bipartite") {
            tour = capax::complete_bipartite_tour(con_r, con_s);
            rule = capax::MovementRule::direct;
            claimed = 2;
        } else if (con_generator == "hamiltonian-bipartite") {
            std::optional<std::vector<int>> cyc;
            if (!con_cycle.empty()) {
                std::vector<int> parsed;
                std::stringstream ss(con_cycle);
                std::string tok;
                while (std::getline(ss, tok, ',')) parsed.push_back(std::stoi(tok));
                cyc = parsed;
            }
            tour = capax::hamiltonian_bipartite_tour(con_src.load(), cyc);
            rule = capax::MovementRule::strong;
            claimed = 2;
        } else if (con_generator == "strong-topfull") {
            tour = capax::strong_topfull_tour(con_src.load());
            rule = capax::MovementRule::strong;
        } else if (con_generator == "direct-topfull") {
            tour = capax::direct_topfull_tour(con_src.load());
            rule = capax::MovementRule::direct;
        } else if (con_generator == "cartesian-topfull") {
            tour = capax::cartesian_topfull_tour(con_src.load());
            rule = capax::MovementRule::cartesian;
        } else {
            throw capax::PreconditionError("unknown generator \"" + con_generator + "\"");
        }
        write_text(capax::tour_certificate(tour, rule, claimed).dump() + "\n", con_out);
    });

    // ---- verify ------------------------------------------------------------
    auto* cmd_verify = app.add_subcommand("verify", "check a tour certificate against a graph");
    GraphSource ver_src;
    add_graph_source(cmd_verify, ver_src);
    std::string ver_cert, ver_out;
    int ver_require_min = -1;
    bool ver_exact_min = false;
    bool ver_allow_non_tour = false;
    cmd_verify->add_option("--certificate", ver_cert, "certificate JSON file")->required();
    cmd_verify->add_option("--require-min", ver_require_min,
                           "override the certificate's claimed minimum distance");
    cmd_verify->add_flag("--exact-min", ver_exact_min,
                         "require the achieved minimum to equal the claim exactly");
    cmd_verify->add_flag("--allow-non-tour", ver_allow_non_tour,
                         "accept valid marches that do not visit every vertex");
    cmd_verify->add_option("--out", ver_out, "write report JSON here instead of stdout");
    cmd_verify->callback([&] {
        capax::Graph g = ver_src.load();
        std::ifstream in(ver_cert);
        if (!in) throw capax::PreconditionError("cannot open certificate: " + ver_cert);
        capax::json j = capax::json::parse(in, nullptr, true);
        auto cert = capax::parse_tour_certificate(j);

        int required = ver_require_min >= 0 ? ver_require_min : cert.claimed_min;
        auto rep = capax::validate_march(g, cert.march, cert.rule, required);
        capax::json out = capax::validation_report_json(rep);
        bool pass = rep.ok() && (ver_allow_non_tour || rep.is_tour);
        if (ver_exact_min && rep.min_distance != std::optional<int>(required)) pass = false;
        out["verified"] = pass;
        emit(out, ver_out);
        if (!pass) exit_code = kExitVerificationFailed;
    });

    // ---- sweep ---------------------------------------------------------------
    auto* cmd_sweep = app.add_subcommand(
        "sweep", "capacity table over a family grid (CSV, compared to closed forms)");
    std::string sweep_family = "cycle";
    int sweep_n_min = 3, sweep_n_max = 8;
    std::string sweep_rules = "all";
    std::string sweep_out;
    std::uint64_t sweep_seed = 0;
    cmd_sweep->add_option("--family", sweep_family, "cycle|path")->capture_default_str();
    cmd_sweep->add_option("--n-min", sweep_n_min)->capture_default_str();
    cmd_sweep->add_option("--n-max", sweep_n_max)->capture_default_str();
    cmd_sweep->add_option("--rules", sweep_rules, "strong|direct|cartesian|all")
        ->capture_default_str();
    cmd_sweep->add_option("--seed", sweep_seed, "recorded in the header for reproducibility")
        ->capture_default_str();
    cmd_sweep->add_option("--out", sweep_out, "write CSV here instead of stdout");
    cmd_sweep->callback([&] {
        if (sweep_family != "cycle" && sweep_family != "path")
            throw capax::PreconditionError("sweep supports --family cycle|path");
        if (sweep_n_min < (sweep_family == "cycle" ? 3 : 2) || sweep_n_max < sweep_n_min)
            throw capax::PreconditionError("bad n range");

        std::ostringstream csv;
        csv << "# seed=" << sweep_seed << " node_limit=" << node_limit << "\n";
        csv << "family,n,d,rule,capacity,below_two,closed_form,match\n";
        for (int n = sweep_n_min; n <= sweep_n_max; ++n) {
            capax::Graph g =
                sweep_family == "cycle" ? capax::cycle_graph(n) : capax::path_graph(n);
            for (auto rule : rules_for(sweep_rules)) {
                if (rule == capax::MovementRule::cartesian && sweep_family == "path") continue;
                int d_max = sweep_family == "cycle" ? capax::cycle_span(n, rule)
                                                    : capax::path_span(n, rule);
                for (int d = 1; d <= d_max; ++d) {
                    auto formula = capax::closed_form_capacity(
                        capax::FamilySpec{sweep_family == "cycle"
                                              ? capax::FamilySpec::Kind::cycle
                                              : capax::FamilySpec::Kind::path,
                                          n, 0},
                        d, rule);
                    csv << sweep_family << "," << n << "," << d << "," << capax::to_string(rule)
                        << ",";
                    try {
                        auto rep = capax::capacity(g, d, rule, node_limit);
                        csv << rep.capacity << "," << (rep.below_two_flag ? 1 : 0) << ",";
                        if (formula.applicable)
                            csv << formula.value << ","
                                << (formula.value == rep.capacity ? "yes" : "NO");
                        else
                            csv << ",";
                    } catch (const capax::NodeLimitError&) {
                        csv << "limit,,";
                        if (formula.applicable) csv << formula.value;
                        csv << ",";
                    }
                    csv << "\n";
                }
            }
        }
        write_text(csv.str(), sweep_out);
    });

    // ---- enumerate-check -------------------------------------------------------
    auto* cmd_enum = app.add_subcommand(
        "enumerate-check", "exhaustive classifier-vs-solver equivalence over small graphs");
    int enum_max_n = 5;
    int enum_sample_n = 6, enum_sample_count = 0;
    std::uint64_t enum_seed = 20250607;
    cmd_enum->add_option("--max-n", enum_max_n, "exhaustive up to this order (<= 6)")
        ->capture_default_str();
    cmd_enum->add_option("--sample-n", enum_sample_n)->capture_default_str();
    cmd_enum->add_option("--sample-count", enum_sample_count, "random graphs at --sample-n")
        ->capture_default_str();
    cmd_enum->add_option("--seed", enum_seed)->capture_default_str();
    cmd_enum->callback([&] {
        auto summary = capax::run_equivalence_check(enum_max_n, enum_sample_n, enum_sample_count,
                                                    enum_seed, node_limit);
        std::cout << "graphs checked: " << summary.graphs_checked << "\n";
        for (const auto& m : summary.mismatches) std::cout << "MISMATCH " << m << "\n";
        std::cout << (summary.ok() ? "PASS" : "FAIL") << ": classifier/solver equivalence\n";
        if (!summary.ok()) exit_code = kExitVerificationFailed;
    });

    // Let --node-limit be given before or after the subcommand name.
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadArguments;
    } catch (const capax::NodeLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResourceLimit;
    } catch (const capax::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArguments;
    } catch (const capax::PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArguments;
    } catch (const capax::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArguments;
    } catch (const capax::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArguments;
    }
    return exit_code;
}
