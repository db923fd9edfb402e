#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcmident/model.hpp"
#include "lcmident/transforms.hpp"

namespace lcmident {

/// On-disk model description.  Rationals travel as strings "p/q" so exactness
/// survives the wire; canonicalization sorts edges and vertex sets, making
/// parse -> serialize idempotent byte for byte.
struct ModelDocument {
    int schema_version = 1;
    std::string name;  // empty = absent
    int compartments = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> inputs;
    std::vector<int> outputs;
    std::vector<int> leaks;

    struct EdgeValue {
        int from = 0;
        int to = 0;
        Rational value;
    };
    struct LeakValue {
        int compartment = 0;
        Rational value;
    };
    std::vector<EdgeValue> edge_values;  // optional fixed parameter values
    std::vector<LeakValue> leak_values;

    void canonicalize();
    CompartmentModel to_model() const;

    /// The fixed parameter point, when the document pins every rate.
    std::optional<ParameterPoint> fixed_point() const;
};

ModelDocument parse_model_document(const std::string& text);
std::string serialize_model_document(const ModelDocument& doc);

ModelDocument document_from_model(const CompartmentModel& model, const std::string& name = "");

/// Tiered-union build instruction: two inline model documents plus the
/// bridge lists (w2 in m2's own numbering).
struct ComposeSpec {
    int schema_version = 1;
    std::string name;
    ModelDocument m1;
    ModelDocument m2;
    std::vector<int> w1;
    std::vector<int> w2;

    TieredUnionSpec to_union_spec() const;
};

ComposeSpec parse_compose_spec(const std::string& text);

std::string read_file(const std::string& path);

}  // namespace lcmident
