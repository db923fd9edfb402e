#include "lcmident/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lcmident/errors.hpp"

namespace lcmident {

namespace {

using Json = nlohmann::ordered_json;

int require_int(const Json& j, const std::string& key) {
    if (!j.contains(key)) throw ParseError("missing field '" + key + "'");
    if (!j.at(key).is_number_integer()) throw ParseError("field '" + key + "' must be an integer");
    return j.at(key).get<int>();
}

std::vector<int> require_vertex_list(const Json& j, const std::string& key) {
    if (!j.contains(key)) throw ParseError("missing field '" + key + "'");
    if (!j.at(key).is_array()) throw ParseError("field '" + key + "' must be an array");
    std::vector<int> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number_integer()) throw ParseError("field '" + key + "' must hold integers");
        out.push_back(v.get<int>());
    }
    return out;
}

Rational rational_from_json(const Json& j, const std::string& context) {
    if (j.is_string()) return Rational::from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw ParseError(context + " must be a rational string \"p/q\" or an integer");
}

ModelDocument model_document_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("model document must be a JSON object");
    ModelDocument doc;
    doc.schema_version = require_int(j, "schema_version");
    if (doc.schema_version != 1)
        throw ParseError("unsupported schema_version " + std::to_string(doc.schema_version));
    if (j.contains("name")) {
        if (!j.at("name").is_string()) throw ParseError("field 'name' must be a string");
        doc.name = j.at("name").get<std::string>();
    }
    doc.compartments = require_int(j, "compartments");
    if (!j.contains("edges") || !j.at("edges").is_array())
        throw ParseError("missing or malformed field 'edges'");
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw ParseError("each edge must be a pair [from, to]");
        doc.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    doc.inputs = require_vertex_list(j, "inputs");
    doc.outputs = require_vertex_list(j, "outputs");
    doc.leaks = require_vertex_list(j, "leaks");

    if (j.contains("parameters")) {
        const Json& params = j.at("parameters");
        if (!params.is_object()) throw ParseError("field 'parameters' must be an object");
        if (params.contains("edges")) {
            for (const auto& entry : params.at("edges")) {
                if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number_integer() ||
                    !entry[1].is_number_integer())
                    throw ParseError("each edge value must be [from, to, \"p/q\"]");
                doc.edge_values.push_back({entry[0].get<int>(), entry[1].get<int>(),
                                           rational_from_json(entry[2], "edge value")});
            }
        }
        if (params.contains("leaks")) {
            for (const auto& entry : params.at("leaks")) {
                if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer())
                    throw ParseError("each leak value must be [compartment, \"p/q\"]");
                doc.leak_values.push_back(
                    {entry[0].get<int>(), rational_from_json(entry[1], "leak value")});
            }
        }
    }
    return doc;
}

Json model_document_to_json(const ModelDocument& doc) {
    Json j;
    j["schema_version"] = doc.schema_version;
    if (!doc.name.empty()) j["name"] = doc.name;
    j["compartments"] = doc.compartments;
    Json edges = Json::array();
    for (const auto& [from, to] : doc.edges) edges.push_back(Json::array({from, to}));
    j["edges"] = std::move(edges);
    j["inputs"] = doc.inputs;
    j["outputs"] = doc.outputs;
    j["leaks"] = doc.leaks;
    if (!doc.edge_values.empty() || !doc.leak_values.empty()) {
        Json params;
        if (!doc.edge_values.empty()) {
            Json list = Json::array();
            for (const auto& ev : doc.edge_values)
                list.push_back(Json::array({ev.from, ev.to, ev.value.str()}));
            params["edges"] = std::move(list);
        }
        if (!doc.leak_values.empty()) {
            Json list = Json::array();
            for (const auto& lv : doc.leak_values)
                list.push_back(Json::array({lv.compartment, lv.value.str()}));
            params["leaks"] = std::move(list);
        }
        j["parameters"] = std::move(params);
    }
    return j;
}

Json parse_json(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON document");
    return j;
}

}  // namespace

void ModelDocument::canonicalize() {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    const auto sort_unique = [](std::vector<int>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    sort_unique(inputs);
    sort_unique(outputs);
    sort_unique(leaks);
    std::sort(edge_values.begin(), edge_values.end(), [](const auto& a, const auto& b) {
        return std::make_pair(a.from, a.to) < std::make_pair(b.from, b.to);
    });
    std::sort(leak_values.begin(), leak_values.end(),
              [](const auto& a, const auto& b) { return a.compartment < b.compartment; });
}

CompartmentModel ModelDocument::to_model() const {
    return CompartmentModel(Digraph(compartments, edges),
                            std::set<int>(inputs.begin(), inputs.end()),
                            std::set<int>(outputs.begin(), outputs.end()),
                            std::set<int>(leaks.begin(), leaks.end()));
}

std::optional<ParameterPoint> ModelDocument::fixed_point() const {
    if (edge_values.empty() && leak_values.empty()) return std::nullopt;
    ParameterPoint point;
    for (const auto& ev : edge_values) point.edge_rates[{ev.from, ev.to}] = ev.value;
    for (const auto& lv : leak_values) point.leak_rates[lv.compartment] = lv.value;
    if (point.edge_rates.size() != edges.size() || point.leak_rates.size() != leaks.size())
        return std::nullopt;  // partial assignments are ignored
    return point;
}

ModelDocument parse_model_document(const std::string& text) {
    ModelDocument doc = model_document_from_json(parse_json(text));
    doc.canonicalize();
    doc.to_model();  // validates ranges, duplicate edges, self-loops
    return doc;
}

std::string serialize_model_document(const ModelDocument& doc) {
    return model_document_to_json(doc).dump(2) + "\n";
}

ModelDocument document_from_model(const CompartmentModel& model, const std::string& name) {
    ModelDocument doc;
    doc.name = name;
    doc.compartments = model.n();
    doc.edges = model.graph().edges();
    doc.inputs.assign(model.inputs().begin(), model.inputs().end());
    doc.outputs.assign(model.outputs().begin(), model.outputs().end());
    doc.leaks.assign(model.leaks().begin(), model.leaks().end());
    doc.canonicalize();
    return doc;
}

TieredUnionSpec ComposeSpec::to_union_spec() const {
    return {m1.to_model(), m2.to_model(), w1, w2};
}

ComposeSpec parse_compose_spec(const std::string& text) {
    const Json j = parse_json(text);
    if (!j.is_object()) throw ParseError("compose spec must be a JSON object");
    ComposeSpec spec;
    spec.schema_version = require_int(j, "schema_version");
    if (spec.schema_version != 1)
        throw ParseError("unsupported schema_version " + std::to_string(spec.schema_version));
    if (j.contains("name")) {
        if (!j.at("name").is_string()) throw ParseError("field 'name' must be a string");
        spec.name = j.at("name").get<std::string>();
    }
    if (!j.contains("m1") || !j.contains("m2"))
        throw ParseError("compose spec requires inline models 'm1' and 'm2'");
    spec.m1 = model_document_from_json(j.at("m1"));
    spec.m1.canonicalize();
    spec.m2 = model_document_from_json(j.at("m2"));
    spec.m2.canonicalize();
    spec.w1 = require_vertex_list(j, "w1");
    spec.w2 = require_vertex_list(j, "w2");
    spec.to_union_spec();  // validates both models
    return spec;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace lcmident
