#pragma once

#include <vector>

#include <json.hpp>

#include "intertwine/operators.hpp"

namespace intertwine {

/// Initial vertices are the arguments of the input function, target
/// vertices the arguments of the output. A vertex on an axis that no J
/// factor touches is both (Through).
enum class Port { Initial, Target, Internal, Through };

struct DiagramVertex {
    int id;
    Symbol rep_label;
    Port port;
    int axis;
};

enum class EdgeKind { J, A };

/// J-edges run from the old variable of an axis to the new one; A-edges
/// join the current variables of two axes.
struct DiagramEdge {
    int from;
    int to;
    LinExpr exponent;
    int order_index;  // 1 for the factor that acts first
    EdgeKind kind;
};

struct Diagram {
    int dim = 0;
    std::vector<DiagramVertex> vertices;
    std::vector<DiagramEdge> edges;

    // StructureError unless order indices are 1..K, J-edges join equal
    // labels on one axis and A-edges join distinct labels.
    void validate() const;
};

/// One variable per axis to start with; every J_k opens a new variable on
/// axis k. Labels follow the strand of each axis (p, q, r for axes 1, 2, 3
/// unless `labels` is given). `dim` defaults to the largest axis used.
/// StructureError for numeric exponents or T factors.
Diagram word_to_diagram(const OperatorWord& w, int dim = 0,
                        const std::vector<Symbol>& labels = {Symbol::p, Symbol::q, Symbol::r});

/// Reads the edges in order-index sequence.
OperatorWord diagram_to_word(const Diagram& d);

nlohmann::json diagram_to_json(const Diagram& d);

}  // namespace intertwine
