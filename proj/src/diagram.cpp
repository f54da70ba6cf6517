#include "intertwine/diagram.hpp"

#include <algorithm>

#include "intertwine/errors.hpp"

namespace intertwine {

namespace {

const char* port_name(Port p) {
    switch (p) {
        case Port::Initial: return "initial";
        case Port::Target: return "target";
        case Port::Internal: return "internal";
        case Port::Through: return "through";
    }
    return "unknown";
}

}  // namespace

void Diagram::validate() const {
    std::vector<int> seen(edges.size() + 1, 0);
    for (const auto& e : edges) {
        if (e.order_index < 1 || e.order_index > static_cast<int>(edges.size()) || seen[e.order_index]++) {
            throw StructureError("diagram order indices must form 1..K");
        }
        if (e.from < 0 || e.to < 0 || e.from >= static_cast<int>(vertices.size()) ||
            e.to >= static_cast<int>(vertices.size())) {
            throw StructureError("diagram edge refers to a missing vertex");
        }
        const auto& a = vertices[e.from];
        const auto& b = vertices[e.to];
        if (e.kind == EdgeKind::J && (a.rep_label != b.rep_label || a.axis != b.axis)) {
            throw StructureError("J-edge must join vertices with equal labels on one axis");
        }
        if (e.kind == EdgeKind::A && a.rep_label == b.rep_label) {
            throw StructureError("A-edge must join vertices with distinct labels");
        }
    }
}

Diagram word_to_diagram(const OperatorWord& w, int dim, const std::vector<Symbol>& labels) {
    Diagram d;
    d.dim = dim > 0 ? dim : w.max_axis();
    if (d.dim > 3 || d.dim < w.max_axis()) throw StructureError("word_to_diagram: bad dimension");
    if (static_cast<int>(labels.size()) < d.dim) throw StructureError("word_to_diagram: too few labels");
    std::vector<int> current(d.dim);
    std::vector<bool> opened(d.dim, false);
    for (int k = 0; k < d.dim; ++k) {
        current[k] = k;
        d.vertices.push_back({k, labels[k], Port::Through, k + 1});
    }
    int order = 0;
    for (const auto& f : w.factors) {
        const auto* e = std::get_if<LinExpr>(&f.exponent);
        if (!e) throw StructureError("word_to_diagram: exponents must be symbolic");
        ++order;
        if (f.kind == FactorKind::J) {
            const int k = f.axis_k - 1;
            const int id = static_cast<int>(d.vertices.size());
            d.vertices.push_back({id, labels[k], Port::Target, f.axis_k});
            auto& old = d.vertices[current[k]];
            old.port = opened[k] ? Port::Internal : Port::Initial;
            d.edges.push_back({current[k], id, *e, order, EdgeKind::J});
            current[k] = id;
            opened[k] = true;
        } else if (f.kind == FactorKind::A) {
            d.edges.push_back({current[f.axis_k - 1], current[f.axis_l - 1], *e, order, EdgeKind::A});
        } else {
            throw StructureError("word_to_diagram: T factors have no diagram form");
        }
    }
    d.validate();
    return d;
}

OperatorWord diagram_to_word(const Diagram& d) {
    d.validate();
    std::vector<const DiagramEdge*> sorted;
    for (const auto& e : d.edges) sorted.push_back(&e);
    std::sort(sorted.begin(), sorted.end(),
              [](const DiagramEdge* a, const DiagramEdge* b) { return a->order_index < b->order_index; });
    OperatorWord w;
    for (const auto* e : sorted) {
        const int k = d.vertices[e->from].axis;
        if (e->kind == EdgeKind::J) {
            w.factors.push_back(OperatorFactor::J(k, e->exponent));
        } else {
            w.factors.push_back(OperatorFactor::A(k, d.vertices[e->to].axis, e->exponent));
        }
    }
    return w;
}

nlohmann::json diagram_to_json(const Diagram& d) {
    nlohmann::json j;
    j["dim"] = d.dim;
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : d.vertices) {
        j["vertices"].push_back(
            {{"id", v.id}, {"rep_label", symbol_name(v.rep_label)}, {"port", port_name(v.port)}, {"axis", v.axis}});
    }
    j["edges"] = nlohmann::json::array();
    for (const auto& e : d.edges) {
        j["edges"].push_back({{"from", e.from},
                              {"to", e.to},
                              {"exponent", e.exponent.to_string()},
                              {"order_index", e.order_index},
                              {"kind", e.kind == EdgeKind::J ? "J" : "A"}});
    }
    return j;
}

}  // namespace intertwine
