#include <doctest.h>

#include <algorithm>

#include "intertwine/diagram.hpp"
#include "intertwine/errors.hpp"

using namespace intertwine;

namespace {

int count_port(const Diagram& d, Port p) {
    return static_cast<int>(std::count_if(d.vertices.begin(), d.vertices.end(),
                                          [p](const DiagramVertex& v) { return v.port == p; }));
}

}  // namespace

TEST_CASE("the R word is a quadrilateral") {
    const OperatorWord w = r_matrix_word(LinExpr::symbol(Symbol::theta), LinExpr::symbol(Symbol::p),
                                         LinExpr::symbol(Symbol::q), 1, 2);
    const Diagram d = word_to_diagram(w);
    CHECK(d.dim == 2);
    CHECK(d.vertices.size() == 4);
    CHECK(d.edges.size() == 4);
    CHECK(count_port(d, Port::Initial) == 2);
    CHECK(count_port(d, Port::Target) == 2);
    // every vertex has degree 2
    for (const auto& v : d.vertices) {
        const auto deg = std::count_if(d.edges.begin(), d.edges.end(),
                                       [&](const DiagramEdge& e) { return e.from == v.id || e.to == v.id; });
        CHECK(deg == 2);
    }
    CHECK(diagram_to_word(d) == w);
}

TEST_CASE("empty word and single J") {
    const Diagram e = word_to_diagram(OperatorWord{}, 2);
    CHECK(e.edges.empty());
    CHECK(count_port(e, Port::Through) == 2);
    CHECK(diagram_to_word(e).size() == 0);

    const OperatorWord j{{OperatorFactor::J(1, LinExpr::symbol(Symbol::p))}};
    const Diagram d = word_to_diagram(j);
    CHECK(d.vertices.size() == 2);
    CHECK(d.edges.size() == 1);
    CHECK(d.edges[0].kind == EdgeKind::J);
    CHECK(d.vertices[d.edges[0].from].port == Port::Initial);
    CHECK(d.vertices[d.edges[0].to].port == Port::Target);
}

TEST_CASE("Yang-Baxter sides round trip") {
    for (const OperatorWord& w : {yang_baxter_lhs(), yang_baxter_rhs()}) {
        const Diagram d = word_to_diagram(w);
        CHECK(d.dim == 3);
        CHECK(d.edges.size() == 12);
        CHECK(count_port(d, Port::Initial) == 3);
        CHECK(count_port(d, Port::Target) == 3);
        CHECK(diagram_to_word(d) == w);
        const auto j = diagram_to_json(d);
        CHECK(j["edges"].size() == 12);
    }
}

TEST_CASE("invalid input") {
    const OperatorWord numeric{{OperatorFactor::J(1, Complex(0, 0.2))}};
    CHECK_THROWS_AS(word_to_diagram(numeric), StructureError);
    const OperatorWord t{{OperatorFactor::T(1, Complex(0, 0.2), MoebiusElement{})}};
    CHECK_THROWS_AS(word_to_diagram(t), StructureError);

    Diagram d = word_to_diagram(yang_baxter_lhs());
    d.edges[0].order_index = 2;
    CHECK_THROWS_AS(d.validate(), StructureError);
    d = word_to_diagram(yang_baxter_lhs());
    d.edges[0].to = 99;
    CHECK_THROWS_AS(d.validate(), StructureError);
}
