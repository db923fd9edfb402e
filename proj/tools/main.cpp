#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <lcmident/lcmident.hpp>

namespace {

using Json = nlohmann::ordered_json;
using namespace lcmident;

struct Options {
    std::uint64_t seed = 1;
    unsigned trials = 3;
    int output_vertex = 0;  // 0 = smallest output
    std::string format = "json";
    bool verify = false;
};

Json model_echo(const ModelDocument& doc) { return Json::parse(serialize_model_document(doc)); }

Json json_of_monomial(const std::map<Param, int>& exponents) {
    Json j = Json::object();
    for (const auto& [param, power] : exponents) j[param.name()] = power;
    return j;
}

std::string text_of_monomial(const std::map<Param, int>& exponents) {
    if (exponents.empty()) return "1";
    std::string s;
    for (const auto& [param, power] : exponents) {
        if (!s.empty()) s += "*";
        s += param.name();
        if (power != 1) s += "^" + std::to_string(power);
    }
    return s;
}

Json json_of_poly(const Polynomial<Rational>& p) {
    Json coeffs = Json::array();
    for (int k = 0; k <= p.degree(); ++k)
        coeffs.push_back(p.coeff(static_cast<std::size_t>(k)).str());
    if (p.is_zero()) coeffs.push_back("0");
    return Json{{"degree", p.degree()}, {"coefficients", coeffs}};
}

Json json_of_point(const CompartmentModel& model, const ParameterPoint& point) {
    Json j = Json::object();
    const auto values = point.aligned(model);
    const auto& params = model.params();
    for (std::size_t s = 0; s < params.size(); ++s) j[params[s].name()] = values[s].str();
    return j;
}

Json structure_flags(const CompartmentModel& model) {
    const bool sc = is_strongly_connected(model.graph());
    const auto isc = model.n() <= 62
                         ? inductively_strongly_connected(model.graph(), 1)
                         : std::nullopt;
    bool leaks_covered = true;
    for (const int v : model.leaks())
        if (model.inputs().count(v) == 0 && model.outputs().count(v) == 0) leaks_covered = false;
    Json j;
    j["strongly_connected"] = sc;
    j["isc_ordering"] = isc ? Json(*isc) : Json(nullptr);
    j["edges"] = model.edge_count();
    j["leaks"] = model.leaks().size();
    j["edge_count_is_2v_minus_2"] =
        model.edge_count() == 2 * static_cast<std::size_t>(model.n()) - 2;
    j["single_leak"] = model.leaks().size() == 1;
    j["first_in_in_and_out"] =
        model.inputs().count(1) != 0 && model.outputs().count(1) != 0;
    j["leaks_within_in_union_out"] = leaks_covered;
    return j;
}

Json report_of_analysis(const IdentReport& report) {
    Json j;
    j["n_params"] = report.n_params;
    j["n_coeffs"] = report.n_coeffs;
    j["n_nonconstant"] = report.n_nonconstant;
    j["trial_ranks"] = report.trial_ranks;
    j["rank"] = report.rank;
    j["verdict"] = to_string(report.verdict);
    j["certified"] = report.certified;
    return j;
}

void emit(const Json& j, const Options& opt, const std::string& text) {
    if (opt.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

std::string verdict_text(const IdentReport& r) {
    std::string s = to_string(r.verdict);
    if (r.verdict == Verdict::Unidentifiable) s += " (probabilistic)";
    if (r.certified) s += " (rank certificate)";
    return s;
}

int cmd_analyze(const ModelDocument& doc, const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    const CompartmentModel model = doc.to_model();
    const IdentReport report = analyze(model, opt.seed, opt.trials);

    Json j;
    j["schema_version"] = 1;
    j["command"] = "analyze";
    j["model"] = model_echo(doc);
    j["seed"] = opt.seed;
    j["trials"] = opt.trials;
    const Json analysis = report_of_analysis(report);
    for (const auto& [key, value] : analysis.items()) j[key] = value;
    j["structure"] = structure_flags(model);
    j["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();

    std::string text;
    text += "model: " + (doc.name.empty() ? std::string("(unnamed)") : doc.name) + " (" +
            std::to_string(model.n()) + " compartments, " + std::to_string(model.edge_count()) +
            " edges)\n";
    text += "parameters: " + std::to_string(report.n_params) +
            ", coefficients: " + std::to_string(report.n_coeffs) + " (" +
            std::to_string(report.n_nonconstant) + " nonconstant)\n";
    text += "rank: " + std::to_string(report.rank) + " (trials:";
    for (const int r : report.trial_ranks) text += " " + std::to_string(r);
    text += "), seed: " + std::to_string(opt.seed) + "\n";
    text += "verdict: " + verdict_text(report) + "\n";
    emit(j, opt, text);
    return 0;
}

int cmd_check_icm(const ModelDocument& doc, const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    const CompartmentModel model = doc.to_model();
    const IcmCheck check = check_icm(model, opt.seed);

    Json j;
    j["schema_version"] = 1;
    j["command"] = "check-icm";
    j["model"] = model_echo(doc);
    j["seed"] = opt.seed;
    j["is_icm"] = check.is_icm;
    j["conditions"] = Json{{"strongly_connected", check.strongly_connected},
                           {"in_out_is_first", check.in_out_is_first},
                           {"leaks_everywhere", check.leaks_everywhere},
                           {"rank", check.rank},
                           {"expected_rank", check.expected_rank}};
    j["isc_ordering"] = check.isc_ordering ? Json(*check.isc_ordering) : Json(nullptr);
    j["edge_count_is_2v_minus_2"] = check.edge_count_saturated;
    j["isc_shortcut"] = check.isc_shortcut;
    j["reasons"] = check.reasons;
    j["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();

    std::string text;
    text += std::string("identifiable cycle model: ") + (check.is_icm ? "yes" : "no") + "\n";
    if (check.rank >= 0)
        text += "coefficient-map rank: " + std::to_string(check.rank) + " of |E|+1 = " +
                std::to_string(check.expected_rank) + "\n";
    if (check.isc_ordering) {
        text += "isc ordering:";
        for (const int v : *check.isc_ordering) text += " " + std::to_string(v);
        text += "\n";
    } else {
        text += "isc ordering: none\n";
    }
    for (const auto& r : check.reasons) text += "note: " + r + "\n";
    emit(j, opt, text);
    return 0;
}

int cmd_ioeq(const ModelDocument& doc, const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    const CompartmentModel model = doc.to_model();
    int output = opt.output_vertex;
    if (output == 0) {
        if (model.outputs().empty()) throw Error("model has no outputs");
        output = *model.outputs().begin();
    }

    IoEquationResult result = [&]() {
        if (const auto fixed = doc.fixed_point()) return io_equation(model, *fixed, output);
        return io_equation(model, opt.seed, output);
    }();
    const IoEquationT<Rational>& eq = result.equation;

    Json j;
    j["schema_version"] = 1;
    j["command"] = "ioeq";
    j["model"] = model_echo(doc);
    j["seed"] = opt.seed;
    j["output"] = output;
    j["point"] = json_of_point(model, result.point);
    j["gcd_degree"] = eq.gcd_degree;
    j["warnings"] = eq.warnings;
    j["lhs"] = json_of_poly(eq.lhs);
    Json rhs = Json::object();
    for (const auto& [input, poly] : eq.rhs) rhs[std::to_string(input)] = json_of_poly(poly);
    j["rhs"] = rhs;
    j["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();

    std::string text;
    text += "input-output equation for y_" + std::to_string(output) + ", gcd degree " +
            std::to_string(eq.gcd_degree) + "\n";
    text += "lhs degree " + std::to_string(eq.lhs.degree()) + ", coefficients (ascending):";
    for (int k = 0; k <= eq.lhs.degree(); ++k)
        text += " " + eq.lhs.coeff(static_cast<std::size_t>(k)).str();
    text += "\n";
    for (const auto& [input, poly] : eq.rhs) {
        text += "rhs u_" + std::to_string(input) + " degree " + std::to_string(poly.degree()) +
                ", coefficients (ascending):";
        for (int k = 0; k <= poly.degree(); ++k)
            text += " " + poly.coeff(static_cast<std::size_t>(k)).str();
        if (poly.is_zero()) text += " 0";
        text += "\n";
    }
    for (const auto& w : eq.warnings) text += "warning: " + w + "\n";
    emit(j, opt, text);
    return 0;
}

int cmd_cycles(const ModelDocument& doc, const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    const CompartmentModel model = doc.to_model();
    const auto cycles = simple_cycles(model.graph());

    Json j;
    j["schema_version"] = 1;
    j["command"] = "cycles";
    j["model"] = model_echo(doc);
    Json selfs = Json::array();
    for (int v = 1; v <= model.n(); ++v) selfs.push_back("a(" + std::to_string(v) + "," +
                                                         std::to_string(v) + ")");
    j["self_cycles"] = selfs;
    Json cyc = Json::array();
    for (const auto& cycle : cycles) {
        std::map<Param, int> mono;
        for (std::size_t t = 0; t < cycle.size(); ++t)
            mono[Param::edge(cycle[t], cycle[(t + 1) % cycle.size()])] += 1;
        cyc.push_back(Json{{"vertices", cycle}, {"monomial", json_of_monomial(mono)}});
    }
    j["cycles"] = cyc;

    std::string basis_note;
    if (is_strongly_connected(model.graph())) {
        const auto basis = cycle_space_basis(model.graph());
        Json b = Json::array();
        for (const auto& cycle : basis) {
            b.push_back(Json{{"vertices", cycle},
                             {"indicator", cycle_indicator(model.graph(), cycle)}});
        }
        j["basis"] = b;
        j["basis_size"] = basis.size();
    } else {
        j["basis"] = nullptr;
        basis_note = "cycle space basis requires strong connectivity";
        j["basis_note"] = basis_note;
    }
    j["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();

    std::string text;
    text += std::to_string(cycles.size()) + " cycles + " + std::to_string(model.n()) +
            " self-cycles";
    if (j.contains("basis_size"))
        text += ", basis size " + std::to_string(j["basis_size"].get<std::size_t>());
    text += "\n";
    for (const auto& cycle : cycles) {
        text += "cycle:";
        for (const int v : cycle) text += " " + std::to_string(v);
        text += "\n";
    }
    if (!basis_note.empty()) text += "note: " + basis_note + "\n";
    emit(j, opt, text);
    return 0;
}

int cmd_reparam(const ModelDocument& doc, const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    const CompartmentModel model = doc.to_model();
    const ScalingReparam reparam = scaling_reparam(model, opt.seed);

    Json j;
    j["schema_version"] = 1;
    j["command"] = "reparam";
    j["model"] = model_echo(doc);
    j["seed"] = opt.seed;
    Json parents = Json::object();
    for (int v = 1; v <= model.n(); ++v)
        parents[std::to_string(v)] = reparam.tree_parent[static_cast<std::size_t>(v)];
    j["tree_parent"] = parents;
    Json scales = Json::object();
    for (int v = 1; v <= model.n(); ++v)
        scales[std::to_string(v)] =
            json_of_monomial(reparam.scale_exponents[static_cast<std::size_t>(v)]);
    j["scales"] = scales;

    Json matrix = Json::array();
    for (int row = 1; row <= model.n(); ++row) {
        Json row_json = Json::array();
        for (int col = 1; col <= model.n(); ++col) {
            const ReparamEntry* found = nullptr;
            for (const auto& entry : reparam.entries)
                if (entry.row == row && entry.col == col) found = &entry;
            if (found == nullptr) {
                row_json.push_back(nullptr);
            } else if (found->diagonal) {
                Json d = Json::object();
                d["a(" + std::to_string(row) + "," + std::to_string(row) + ")"] = 1;
                row_json.push_back(d);
            } else {
                row_json.push_back(json_of_monomial(found->exponents));
            }
        }
        matrix.push_back(row_json);
    }
    j["matrix"] = matrix;
    j["has_negative_exponents"] = reparam.has_negative_exponents;
    j["entries_identifiable"] = reparam.entries_identifiable;
    j["warnings"] = reparam.warnings;
    j["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();

    std::string text;
    text += "scaling reparametrization along the shortest-path tree from vertex 1\n";
    for (int v = 1; v <= model.n(); ++v)
        text += "scale s_" + std::to_string(v) + " = " +
                text_of_monomial(reparam.scale_exponents[static_cast<std::size_t>(v)]) + "\n";
    for (int row = 1; row <= model.n(); ++row) {
        text += "row " + std::to_string(row) + ":";
        for (int col = 1; col <= model.n(); ++col) {
            const ReparamEntry* found = nullptr;
            for (const auto& entry : reparam.entries)
                if (entry.row == row && entry.col == col) found = &entry;
            if (found == nullptr)
                text += " 0";
            else if (found->diagonal)
                text += " a(" + std::to_string(row) + "," + std::to_string(row) + ")";
            else
                text += " " + text_of_monomial(found->exponents);
        }
        text += "\n";
    }
    emit(j, opt, text);
    return 0;
}

int cmd_suggest(const ModelDocument& doc, const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    const CompartmentModel model = doc.to_model();
    const auto suggestions = suggest_variants(model, opt.seed, opt.trials);

    Json j;
    j["schema_version"] = 1;
    j["command"] = "suggest";
    j["model"] = model_echo(doc);
    j["seed"] = opt.seed;
    Json list = Json::array();
    for (const auto& s : suggestions) {
        Json item;
        item["description"] = s.description;
        item["verdict"] = to_string(s.report.verdict);
        item["rank"] = s.report.rank;
        item["n_params"] = s.report.n_params;
        item["model"] = model_echo(document_from_model(s.model));
        list.push_back(item);
    }
    j["suggestions"] = list;
    j["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();

    std::string text;
    text += std::to_string(suggestions.size()) + " verified identifiable variants\n";
    for (const auto& s : suggestions)
        text += "- " + s.description + " (" + std::to_string(s.report.n_params) +
                " parameters, rank " + std::to_string(s.report.rank) + ")\n";
    emit(j, opt, text);
    return 0;
}

int cmd_compose(const std::string& spec_path, const Options& opt) {
    const ComposeSpec spec = parse_compose_spec(read_file(spec_path));
    const CompartmentModel composed = tiered_union(spec.to_union_spec());
    const ModelDocument doc = document_from_model(composed, spec.name);

    if (!opt.verify) {
        // The pure model document, ready to be piped into other commands.
        std::cout << serialize_model_document(doc);
        return 0;
    }

    const auto start = std::chrono::steady_clock::now();
    const TierModels tiers = tier_submodels(spec.to_union_spec());
    Json j;
    j["schema_version"] = 1;
    j["command"] = "compose";
    j["model"] = model_echo(doc);
    j["seed"] = opt.seed;
    j["tier1"] = report_of_analysis(analyze(tiers.tier1, opt.seed, opt.trials));
    j["tier2"] = report_of_analysis(analyze(tiers.tier2, opt.seed, opt.trials));
    j["union"] = report_of_analysis(analyze(composed, opt.seed, opt.trials));
    j["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();

    std::string text;
    text += "composed model with " + std::to_string(composed.n()) + " compartments\n";
    text += "tier1 verdict: " + j["tier1"]["verdict"].get<std::string>() + "\n";
    text += "tier2 verdict: " + j["tier2"]["verdict"].get<std::string>() + "\n";
    text += "union verdict: " + j["union"]["verdict"].get<std::string>() + "\n";
    emit(j, opt, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact structural identifiability analysis of linear compartment models"};
    app.require_subcommand(1);

    Options opt;
    std::string model_path;
    std::string spec_path;

    const auto add_common = [&](CLI::App* sub, bool wants_model = true) {
        if (wants_model)
            sub->add_option("model", model_path, "model document (JSON)")->required();
        sub->add_option("--seed", opt.seed, "seed for the deterministic point sampler");
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"json", "text"}));
    };

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "Jacobian-rank identifiability test");
    add_common(analyze_cmd);
    analyze_cmd->add_option("--trials", opt.trials, "number of random evaluation points");

    CLI::App* icm_cmd = app.add_subcommand("check-icm", "identifiable-cycle-model conditions");
    add_common(icm_cmd);

    CLI::App* ioeq_cmd = app.add_subcommand("ioeq", "input-output equation at a point");
    add_common(ioeq_cmd);
    ioeq_cmd->add_option("--output", opt.output_vertex, "output compartment (default: smallest)");

    CLI::App* cycles_cmd = app.add_subcommand("cycles", "simple cycles and cycle-space basis");
    add_common(cycles_cmd);

    CLI::App* reparam_cmd =
        app.add_subcommand("reparam", "monomial scaling reparametrization");
    add_common(reparam_cmd);

    CLI::App* suggest_cmd =
        app.add_subcommand("suggest", "theorem-guaranteed identifiable variants");
    add_common(suggest_cmd);
    suggest_cmd->add_option("--trials", opt.trials, "number of random evaluation points");

    CLI::App* compose_cmd = app.add_subcommand("compose", "build a tiered union of two models");
    compose_cmd->add_option("spec", spec_path, "compose spec document (JSON)")->required();
    compose_cmd->add_option("--seed", opt.seed, "seed for the deterministic point sampler");
    compose_cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    compose_cmd->add_option("--trials", opt.trials, "number of random evaluation points");
    compose_cmd->add_flag("--verify", opt.verify,
                          "analyze both tiers and the union instead of printing the model");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    // The environment overrides --seed so CI can pin every run.
    if (const char* env_seed = std::getenv("LCMIDENT_SEED")) {
        try {
            opt.seed = std::stoull(env_seed);
        } catch (const std::exception&) {
            std::cerr << "error: LCMIDENT_SEED must be an unsigned integer\n";
            return 2;
        }
    }

    try {
        if (app.got_subcommand("compose")) return cmd_compose(spec_path, opt);

        const ModelDocument doc = parse_model_document(read_file(model_path));
        if (app.got_subcommand("analyze")) return cmd_analyze(doc, opt);
        if (app.got_subcommand("check-icm")) return cmd_check_icm(doc, opt);
        if (app.got_subcommand("ioeq")) return cmd_ioeq(doc, opt);
        if (app.got_subcommand("cycles")) return cmd_cycles(doc, opt);
        if (app.got_subcommand("reparam")) return cmd_reparam(doc, opt);
        if (app.got_subcommand("suggest")) return cmd_suggest(doc, opt);
        std::cerr << "error: unknown subcommand\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "analysis error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "analysis error: " << e.what() << "\n";
        return 3;
    }
}
