#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace msp;
using namespace testutil;

namespace {

bool has_violation(const ValidationReport& rep, const std::string& elem,
                   const std::string& needle) {
    for (const auto& v : rep)
        if (v.element == elem && v.message.find(needle) != std::string::npos)
            return true;
    return false;
}

} // namespace

TEST_CASE("empty graph is valid") {
    DecoratedGraph g;
    CHECK(validate(g).empty());
}

TEST_CASE("reference graphs are valid") {
    CHECK(is_valid(string_graph()));
    CHECK(is_valid(pure_loop2()));
    CHECK(is_valid(balanced_chain()));
    CHECK(is_valid(stable_edge()));
}

TEST_CASE("validate is pure and idempotent") {
    DecoratedGraph g = balanced_chain();
    g.edges[0].deg0 = -1; // break the 01 sign constraint
    auto a = validate(g);
    auto b = validate(g);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].element == b[i].element);
        CHECK(a[i].message == b[i].message);
    }
}

TEST_CASE("01 edge degree must be positive") {
    DecoratedGraph g = balanced_chain();
    g.edges[0].deg0 = -1;
    CHECK(has_violation(validate(g), "e01", "01 edge degree must be positive"));
}

TEST_CASE("0-infinity edge cannot be orbifold at infinity") {
    DecoratedGraph g = stable_edge();
    g.edges[0].orbifoldAtInf = true;
    CHECK(has_violation(validate(g), "e", "scheme point"));
}

TEST_CASE("orbifold infinity end of a 1-infinity edge must be special") {
    // unstable 1-valent legless infinity end: the derived flag is clear, so
    // an orbifold decoration there is rejected
    DecoratedGraph g;
    g.vertices.push_back(vx("q", Level::One, 1, 0, 0, true));
    g.vertices.push_back(vx("w", Level::Infinity, 0, 0, 0, false));
    g.edges.push_back(
        ed("e", "q", "w", EdgeClass::E1Inf, 0, Rat(2, 3), true, false));
    CHECK(has_violation(validate(g), "e", "orbifold infinity end"));
    // with a marking at the end the same edge is fine
    g.legs.push_back(leg("l0", "w", 0, Monodromy::M1));
    g.edges[0].specialAtInf = true;
    CHECK(validate(g).empty());
}

TEST_CASE("edge endpoint levels must match the class") {
    DecoratedGraph g = stable_edge();
    g.edges[0].cls = EdgeClass::E01;
    auto rep = validate(g);
    CHECK(has_violation(rep, "e", "must join a level-0 and a level-1 vertex"));
}

TEST_CASE("degree sign and integrality constraints per class") {
    // 1-infinity degree must be negative
    DecoratedGraph g = balanced_chain();
    g.edges[1].degInf = -1; // d_e = 0 - (-1) = 1 > 0
    CHECK(has_violation(validate(g), "e1i", "degree must be negative"));

    // scheme infinity end needs an integer degree
    DecoratedGraph h = balanced_chain();
    h.edges[1].degInf = Rat(4, 3);
    CHECK(has_violation(validate(h), "e1i", "integer degree"));
    h.edges[1].orbifoldAtInf = true; // orbifold third-integer degree is fine
    CHECK(validate(h).empty());

    // 0-infinity edges carry equal positive integer degrees
    DecoratedGraph k = stable_edge();
    k.edges[0].deg0 = 2;
    CHECK(has_violation(validate(k), "e", "equal degrees"));
    k.edges[0].deg0 = 0;
    k.edges[0].degInf = 0;
    CHECK(has_violation(validate(k), "e", "N-degree must be positive"));
}

TEST_CASE("denominators other than 1 and 3 are rejected") {
    DecoratedGraph g = stable_edge();
    g.vertices[0].deg0 = Rat(1, 2);
    g.vertices[0].degInf = Rat(1, 2); // keep d_v sign-neutral
    CHECK(has_violation(validate(g), "a", "denominator"));
    DecoratedGraph h = stable_edge();
    h.degL2 = Rat(1, 4);
    CHECK(has_violation(validate(h), "", "degL2"));
}

TEST_CASE("unstable vertex constraints") {
    DecoratedGraph g = string_graph();
    g.vertices[0].genus = 1;
    CHECK(has_violation(validate(g), "v0", "genus 0"));

    DecoratedGraph h = string_graph();
    h.vertices[0].deg0 = 1;
    h.vertices[0].degInf = 1;
    CHECK(has_violation(validate(h), "v0", "zero degrees"));

    DecoratedGraph k = string_graph();
    k.vertices.push_back(vx("iso", Level::Zero, 0, 0, 0, false));
    CHECK(has_violation(validate(k), "iso", "one or two incident edges"));

    // a second leg at the 1-valent infinity end exceeds two special points
    DecoratedGraph m = string_graph();
    m.legs.push_back(leg("l1", "vi", 1, Monodromy::M2));
    CHECK(has_violation(validate(m), "vi", "too many special points"));
}

TEST_CASE("level-1 vertices have zero degrees") {
    DecoratedGraph g = balanced_chain();
    g.vertices[1].deg0 = 1;
    auto rep = validate(g);
    CHECK(has_violation(rep, "q", "level-1 vertex must have zero degrees"));
}

TEST_CASE("dangling references and duplicate ids are reported") {
    DecoratedGraph g = stable_edge();
    g.edges[0].endB = "nope";
    CHECK(has_violation(validate(g), "e", "missing vertex"));

    DecoratedGraph h = stable_edge();
    h.vertices.push_back(h.vertices[0]);
    CHECK(has_violation(validate(h), "a", "duplicate vertex id"));

    DecoratedGraph k = string_graph();
    k.legs[0].vertex = "nope";
    CHECK(has_violation(validate(k), "l0", "missing vertex"));
}

TEST_CASE("hour decoration is all-or-none and positive") {
    DecoratedGraph g = stable_edge();
    g.vertices[0].hour = 1;
    CHECK(has_violation(validate(g), "b", "every vertex or on none"));
    g.vertices[1].hour = 2;
    CHECK(validate(g).empty());
    g.vertices[1].hour = 0;
    CHECK(has_violation(validate(g), "b", "at least 1"));
}

TEST_CASE("the derived special flag at infinity is enforced") {
    DecoratedGraph g = stable_edge();
    g.edges[0].specialAtInf = false; // b is stable, so the end is special
    CHECK(has_violation(validate(g), "e", "flag must be set"));

    DecoratedGraph h = string_graph();
    h.legs.clear(); // now the infinity end is free
    CHECK(has_violation(validate(h), "e", "flag must be clear"));
}

TEST_CASE("leg monodromy placement rules") {
    DecoratedGraph g = stable_edge();
    g.legs.push_back(leg("l0", "b", 0, Monodromy::OneRho));
    CHECK(has_violation(validate(g), "l0", "rho-type leg"));

    DecoratedGraph h = stable_edge();
    h.legs.push_back(leg("l0", "a", 0, Monodromy::OnePhi));
    CHECK(has_violation(validate(h), "l0", "phi-type leg"));

    DecoratedGraph k = stable_edge();
    k.legs.push_back(leg("l0", "b", 0, Monodromy::Broad));
    CHECK(has_violation(validate(k), "l0", "broad leg"));
}

TEST_CASE("leg positions must be 0..n-1") {
    DecoratedGraph g = stable_edge();
    g.legs.push_back(leg("l0", "b", 1, Monodromy::OnePhi));
    CHECK(has_violation(validate(g), "l0", "positions"));
    g.legs[0].position = 0;
    CHECK(validate(g).empty());
}

TEST_CASE("total genus adds vertex genera and loops") {
    DecoratedGraph g;
    g.vertices.push_back(vx("a", Level::Zero, 2, 0, 0, true));
    CHECK(total_genus(g) == 2);

    CHECK(total_genus(pure_loop2()) == 1); // two parallel edges

    // triangle through all three levels
    DecoratedGraph t;
    t.vertices.push_back(vx("u0", Level::Zero, 0, 0, 0, false));
    t.vertices.push_back(vx("u1", Level::One, 0, 0, 0, false));
    t.vertices.push_back(vx("ui", Level::Infinity, 0, 0, 0, false));
    t.edges.push_back(ed("a", "u0", "u1", EdgeClass::E01, 1, 0));
    t.edges.push_back(ed("b", "u1", "ui", EdgeClass::E1Inf, 0, 1, false, true));
    t.edges.push_back(ed("c", "u0", "ui", EdgeClass::E0Inf, 1, 1, false, true));
    REQUIRE(is_valid(t));
    CHECK(total_genus(t) == 1);
    CHECK(classify(t).isPureLoop);
}

TEST_CASE("total degree sums vertices and edges componentwise") {
    DecoratedGraph g;
    g.vertices.push_back(vx("v0", Level::Zero, 0, 0, 0, false));
    g.vertices.push_back(vx("q", Level::One, 0, 0, 0, false));
    g.edges.push_back(ed("e", "v0", "q", EdgeClass::E01, 3, 0));
    REQUIRE(is_valid(g));
    CHECK(total_degree(g) == std::pair<Rat, Rat>{3, 0});

    DecoratedGraph e;
    CHECK(total_degree(e) == std::pair<Rat, Rat>{0, 0});

    DecoratedGraph s = stable_edge();
    s.edges[0].deg0 = 2;
    s.edges[0].degInf = 2;
    CHECK(total_degree(s) == std::pair<Rat, Rat>{2, 2});
}

TEST_CASE("monodromy vector follows leg positions") {
    DecoratedGraph g = stable_edge();
    g.legs.push_back(leg("x", "b", 1, Monodromy::M2));
    g.legs.push_back(leg("y", "b", 0, Monodromy::OnePhi)); // stored out of order
    g.vertices[1].genus = 1;
    REQUIRE(is_valid(g));
    auto mv = monodromy_vector(g);
    REQUIRE(mv.size() == 2);
    CHECK(mv[0] == Monodromy::OnePhi);
    CHECK(mv[1] == Monodromy::M2);

    DecoratedGraph e;
    CHECK(monodromy_vector(e).empty());
}

TEST_CASE("classification flags") {
    auto loop = classify(pure_loop2());
    CHECK(loop.isPureLoop);
    CHECK(!loop.isRegular);
    CHECK(loop.isFlat);

    DecoratedGraph g;
    g.vertices.push_back(vx("v0", Level::Zero, 0, 0, 0, false));
    g.vertices.push_back(vx("q", Level::One, 0, 0, 0, false));
    g.edges.push_back(ed("e", "v0", "q", EdgeClass::E01, 1, 0));
    auto reg = classify(g);
    CHECK(reg.isRegular);
    CHECK(!reg.isPureLoop);
    CHECK(reg.isFlat);

    CHECK(!classify(stable_edge()).isRegular);
    CHECK(!classify(balanced_chain()).isFlat); // q is balanced
}

TEST_CASE("invariants survive relabeling") {
    DecoratedGraph g = balanced_chain(2);
    DecoratedGraph h = relabeled(g, "x_");
    CHECK(total_genus(g) == total_genus(h));
    CHECK(total_degree(g) == total_degree(h));
    CHECK(monodromy_vector(g) == monodromy_vector(h));
}

TEST_CASE("betti number counts components") {
    DecoratedGraph g = pure_loop2();
    CHECK(betti1(g) == 1);
    // add an isolated stable vertex: a second component, same betti number
    g.vertices.push_back(vx("iso", Level::Zero, 1, 0, 0, true));
    CHECK(num_components(g) == 2);
    CHECK(betti1(g) == 1);
}
