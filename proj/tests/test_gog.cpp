#include "doctest.h"

#include "gbsn/graph_of_groups.hpp"
#include "gbsn/io.hpp"

using namespace gbsn;

namespace {

GraphOfGroups two_vertex_chain() {
    GraphOfGroups g;
    g.rank = 1;
    g.vertices = {{"u"}, {"w"}};
    g.edges.push_back({"e1", "u", "w", IntMatrix::of({{2}}), IntMatrix::of({{3}})});
    g.edges.push_back({"e2", "u", "w", IntMatrix::of({{1}}), IntMatrix::of({{5}})});
    return g;
}

GraphOfGroups triangle() {
    GraphOfGroups g;
    g.rank = 2;
    g.vertices = {{"x"}, {"y"}, {"z"}};
    IntMatrix i2 = IntMatrix::identity(2);
    g.edges.push_back({"e1", "x", "y", i2, IntMatrix::of({{2, 0}, {0, 2}})});
    g.edges.push_back({"e2", "y", "z", i2, IntMatrix::of({{1, 1}, {0, 1}})});
    g.edges.push_back({"e3", "z", "x", i2, IntMatrix::of({{3, 0}, {0, 1}})});
    return g;
}

} // namespace

TEST_CASE("vertex lookup") {
    GraphOfGroups g = two_vertex_chain();
    CHECK(g.vertex_index("u") == 0);
    CHECK(g.vertex_index("w") == 1);
    CHECK_FALSE(g.vertex_index("nope").has_value());
}

TEST_CASE("validation accepts the builtins") {
    CHECK(validate(builtin_example("leary-minasyan")).ok());
    CHECK(validate(builtin_example("bs(1,[[2]])")).ok());
    CHECK(validate(two_vertex_chain()).ok());
    CHECK(validate(triangle()).ok());
}

TEST_CASE("validation failures by category") {
    SUBCASE("empty graph") {
        GraphOfGroups g;
        g.rank = 1;
        ValidationReport r = validate(g);
        REQUIRE_FALSE(r.ok());
        CHECK(r.issues[0].category == "EmptyGraph");
    }
    SUBCASE("duplicate vertex id") {
        GraphOfGroups g;
        g.rank = 1;
        g.vertices = {{"v"}, {"v"}};
        g.edges.push_back({"e", "v", "v", IntMatrix::of({{1}}), IntMatrix::of({{1}})});
        bool found = false;
        for (const auto& i : validate(g).issues) found = found || i.category == "DuplicateId";
        CHECK(found);
    }
    SUBCASE("duplicate edge id") {
        GraphOfGroups g;
        g.rank = 1;
        g.vertices = {{"v"}};
        g.edges.push_back({"e", "v", "v", IntMatrix::of({{1}}), IntMatrix::of({{1}})});
        g.edges.push_back({"e", "v", "v", IntMatrix::of({{1}}), IntMatrix::of({{2}})});
        bool found = false;
        for (const auto& i : validate(g).issues) found = found || i.category == "DuplicateId";
        CHECK(found);
    }
    SUBCASE("unknown vertex") {
        GraphOfGroups g;
        g.rank = 1;
        g.vertices = {{"v"}};
        g.edges.push_back({"e", "v", "ghost", IntMatrix::of({{1}}), IntMatrix::of({{1}})});
        bool found = false;
        for (const auto& i : validate(g).issues) found = found || i.category == "UnknownVertex";
        CHECK(found);
    }
    SUBCASE("rank mismatch") {
        GraphOfGroups g;
        g.rank = 2;
        g.vertices = {{"v"}};
        g.edges.push_back({"e", "v", "v", IntMatrix::of({{1}}), IntMatrix::identity(2)});
        bool found = false;
        for (const auto& i : validate(g).issues) found = found || i.category == "RankMismatch";
        CHECK(found);
    }
    SUBCASE("singular inclusion") {
        GraphOfGroups g;
        g.rank = 2;
        g.vertices = {{"v"}};
        g.edges.push_back({"e", "v", "v", IntMatrix::of({{1, 2}, {2, 4}}), IntMatrix::identity(2)});
        bool found = false;
        for (const auto& i : validate(g).issues) found = found || i.category == "SingularInclusion";
        CHECK(found);
    }
    SUBCASE("disconnected") {
        GraphOfGroups g;
        g.rank = 1;
        g.vertices = {{"a"}, {"b"}};
        ValidationReport r = validate(g);
        bool found = false;
        for (const auto& i : r.issues) found = found || i.category == "Disconnected";
        CHECK(found);
    }
}

TEST_CASE("spanning tree of a lone vertex") {
    GraphOfGroups g = builtin_example("bs(1,[[2]])");
    SpanningData sp = spanning_tree(g);
    CHECK(sp.base == 0);
    CHECK(sp.visit_order == std::vector<std::size_t>{0});
    REQUIRE(sp.in_tree.size() == 1);
    CHECK_FALSE(sp.in_tree[0]); // loops are never tree edges
    CHECK(sp.path[0].is_identity());
}

TEST_CASE("spanning tree picks the least vertex id and the first edge") {
    GraphOfGroups g = two_vertex_chain();
    SpanningData sp = spanning_tree(g);
    CHECK(g.vertices[sp.base].id == "u");
    CHECK(sp.in_tree == std::vector<bool>{true, false});
    CHECK(sp.path[sp.base].is_identity());
    SpanningData spw = spanning_tree(g, "w");
    CHECK(g.vertices[spw.base].id == "w");
    CHECK(spw.path[spw.base].is_identity());
}

TEST_CASE("path matrices satisfy the tree-edge relation") {
    for (const GraphOfGroups& g : {two_vertex_chain(), triangle()}) {
        for (const Vertex& v : g.vertices) {
            SpanningData sp = spanning_tree(g, v.id);
            std::size_t seen = 0;
            for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
                if (!sp.in_tree[ei]) continue;
                ++seen;
                const Edge& e = g.edges[ei];
                const RatMatrix& pu = sp.path[*g.vertex_index(e.from)];
                const RatMatrix& pw = sp.path[*g.vertex_index(e.to)];
                RatMatrix lhs = rat_inverse(pu) * pw;
                RatMatrix rhs = RatMatrix::from(e.alpha) * rat_inverse(e.omega);
                CHECK(lhs == rhs);
            }
            CHECK(seen == g.vertices.size() - 1);
            CHECK(sp.visit_order.size() == g.vertices.size());
        }
    }
}

TEST_CASE("presentation of a lone loop") {
    Presentation p = presentation(builtin_example("bs(1,[[2]])"));
    CHECK(p.generators == std::vector<std::string>{"a", "t"});
    CHECK(p.relators == std::vector<std::string>{"t a t^-1 = a^2"});
}

TEST_CASE("presentation of the rank-two builtin") {
    Presentation p = presentation(builtin_example("leary-minasyan"));
    CHECK(p.generators == std::vector<std::string>{"a", "b", "t"});
    REQUIRE(p.relators.size() == 3);
    CHECK(p.relators[0] == "[a,b]");
    CHECK(p.relators[1] == "t a^2 b^-1 t^-1 = a^2 b");
    CHECK(p.relators[2] == "t a b^2 t^-1 = a^-1 b^2");
}

TEST_CASE("presentation of a multi-vertex graph") {
    Presentation p = presentation(two_vertex_chain());
    CHECK(p.generators == std::vector<std::string>{"u.a1", "w.a1", "e1.t", "e2.t"});
    REQUIRE(p.relators.size() == 3);
    CHECK(p.relators[0] == "e1.t u.a1^2 e1.t^-1 = w.a1^3");
    CHECK(p.relators[1] == "e2.t u.a1 e2.t^-1 = w.a1^5");
    CHECK(p.relators[2] == "e1.t = 1");
}

TEST_CASE("presentation includes lattice commutators") {
    GraphOfGroups g;
    g.rank = 3;
    g.vertices = {{"v"}};
    g.edges.push_back({"e", "v", "v", IntMatrix::identity(3), IntMatrix::identity(3)});
    Presentation p = presentation(g);
    CHECK(p.generators == std::vector<std::string>{"a", "b", "c", "t"});
    REQUIRE(p.relators.size() >= 3);
    CHECK(p.relators[0] == "[a,b]");
    CHECK(p.relators[1] == "[a,c]");
    CHECK(p.relators[2] == "[b,c]");
}

TEST_CASE("spanning tree base override rejects unknown vertices") {
    CHECK_THROWS_AS(spanning_tree(two_vertex_chain(), "ghost"), precondition_error);
}
