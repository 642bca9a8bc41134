#include <doctest.h>

#include "gbell/io.hpp"

#include "gbell/error.hpp"
#include "gbell/quantifiers.hpp"

using namespace gbell;

TEST_SUITE_BEGIN("io");

TEST_CASE("scenario registry references") {
    CHECK(io::scenario_from_ref("ncycle:5") == n_cycle(5));
    CHECK(io::scenario_from_ref("pm") == peres_mermin());
    CHECK(io::scenario_from_ref("alice:3") == alice_side(3));
    CHECK_FALSE(io::is_bell_ref("ncycle:5"));
    CHECK(io::is_bell_ref("alice:2/ncycle:3"));

    const BellScenario bs = io::bell_from_ref("alice:2/ncycle:3");
    CHECK(bs == BellScenario::make(alice_side(2), n_cycle(3)));
    CHECK(*io::coordinates_from_ref("alice:2/ncycle:3") == bs.joint());
    CHECK(*io::coordinates_from_ref("ncycle:4") == n_cycle(4));

    CHECK_THROWS_AS(io::scenario_from_ref("triangle"), ParseError);
    CHECK_THROWS_AS(io::scenario_from_ref("ncycle:x"), ParseError);
    CHECK_THROWS_AS(io::bell_from_ref("ncycle:5"), ParseError);
}

TEST_CASE("scenario files round-trip") {
    for (const Scenario& s : {n_cycle(5), peres_mermin(), alice_side(2)}) {
        const std::string text = io::write_scenario(s);
        CHECK(io::read_scenario(text) == s);
        CHECK(io::write_scenario(io::read_scenario(text)) == text);
    }
    const BellScenario bs = BellScenario::make(alice_side(2), n_cycle(4));
    const std::string text = io::write_bell_scenario(bs);
    CHECK(io::read_bell_scenario(text) == bs);

    CHECK_THROWS_AS(io::read_scenario("format_version 2\n"), ParseError);
    CHECK_THROWS_AS(io::read_scenario("format_version 1\nkind behavior\n"), ParseError);
    CHECK_THROWS_AS(io::read_scenario("format_version 1\nkind scenario\nmeasurement B0\n"),
                    ParseError);
    CHECK_THROWS_AS(
        io::read_scenario(
            "format_version 1\nkind scenario\nmeasurement B0\ncontext B9\nend\n"),
        ParseError);
}

TEST_CASE("behavior files round-trip") {
    const auto cycle = share(n_cycle(3));
    // Uniform on two contexts, deterministic on one: exercises several values.
    std::vector<Rat> entries(static_cast<size_t>(cycle->dim()), Rat(1, 4));
    entries[0] = 1;
    entries[1] = 0;
    entries[2] = 0;
    entries[3] = 0;
    const Behavior b = behavior_from_table(cycle, entries);

    const std::string text = io::write_behavior(b, "ncycle:3");
    const Behavior back = io::read_behavior(text);
    CHECK(back.p == b.p);
    CHECK(*back.scenario == *cycle);
    CHECK(io::write_behavior(back, "ncycle:3") == text);

    SUBCASE("joint scenario reference") {
        const BellScenario bs = io::bell_from_ref("alice:1/ncycle:3");
        std::vector<Rat> u(static_cast<size_t>(bs.joint().dim()), Rat(1, 8));
        const Behavior jb = behavior_from_table(bs.joint_ptr(), u);
        const std::string jt = io::write_behavior(jb, "alice:1/ncycle:3");
        CHECK(io::read_behavior(jt).p == jb.p);
    }

    SUBCASE("malformed inputs") {
        CHECK_THROWS_AS(io::read_behavior("format_version 1\nkind behavior\nend\n"), ParseError);
        // Missing one coordinate.
        std::string cut = text;
        cut.replace(cut.find("outcome ++ "), std::string("outcome ++ ").size(), "outcome +x ");
        CHECK_THROWS_AS(io::read_behavior(cut), ParseError);
        // Duplicate coordinate.
        std::string dup = text;
        dup.insert(dup.find("context 1"), "outcome -- 0\n");
        CHECK_THROWS_AS(io::read_behavior(dup), ParseError);
        // Valid file but not a distribution.
        std::string neg = io::write_behavior(b, "ncycle:3");
        neg.replace(neg.find(" 1/4"), 4, " 9/4");
        CHECK_THROWS(io::read_behavior(neg));
    }
}

TEST_CASE("inequality files round-trip") {
    const auto cycle5 = share(n_cycle(5));
    const Inequality iq = kcbs(cycle5);
    const std::string text = io::write_inequality(iq, "ncycle:5");
    const Inequality back = io::read_inequality(text);
    CHECK(back.terms == iq.terms);
    CHECK(back.bound == iq.bound);
    CHECK(back.label == iq.label);
    CHECK(back.display_flipped == iq.display_flipped);
    CHECK(io::write_inequality(back, "ncycle:5") == text);

    const BellScenario bs = io::bell_from_ref("alice:2/ncycle:4");
    const Inequality joint = chsh_product_pairs(bs);
    const Inequality jback = io::read_inequality(io::write_inequality(joint, "alice:2/ncycle:4"));
    CHECK(jback.terms == joint.terms);
    CHECK(jback.bound == joint.bound);

    CHECK_THROWS_AS(io::read_inequality("format_version 1\nkind inequality\nend\n"), ParseError);
    CHECK_THROWS_AS(
        io::read_inequality(
            "format_version 1\nkind inequality\nscenario ncycle:5\nend\n"),
        ParseError);
    // Term outside every context is rejected by the validating constructor.
    CHECK_THROWS(io::read_inequality("format_version 1\nkind inequality\nscenario ncycle:5\n"
                                     "label x\nbound 1\nterm 1 B0 B2\nend\n"));
}

TEST_CASE("certificate serialization is canonical") {
    const auto cycle = share(n_cycle(3));
    std::vector<Rat> u(static_cast<size_t>(cycle->dim()), Rat(1, 4));
    const FractionCertificate c = contextual_fraction(behavior_from_table(cycle, u));
    const std::string text = io::write_certificate(c);
    CHECK(text.find("kind certificate") != std::string::npos);
    CHECK(text.find("fraction contextual") != std::string::npos);
    CHECK(text.find("value 0") != std::string::npos);
    CHECK(io::write_certificate(c) == text);
}

TEST_CASE("report serialization carries a machine-readable result") {
    verify::CheckReport r{"demo"};
    r.note("context");
    r.require(true, "fine");
    const std::string ok = io::write_report(r);
    CHECK(ok.find("result PASS\n") != std::string::npos);
    r.require(false, "broken");
    CHECK(io::write_report(r).find("result FAIL\n") != std::string::npos);
}

TEST_CASE("polytope interchange files round-trip bit-exactly") {
    const HPolytope h = nd_hrep(n_cycle(3));
    const std::string ht = io::write_hrep(h);
    const HPolytope hb = io::read_hrep(ht);
    CHECK(hb.dim == h.dim);
    CHECK(hb.ineq_coeffs == h.ineq_coeffs);
    CHECK(hb.ineq_bounds == h.ineq_bounds);
    CHECK(hb.eq_coeffs == h.eq_coeffs);
    CHECK(hb.eq_values == h.eq_values);
    CHECK(io::write_hrep(hb) == ht);

    const VPolytope v = ncycle_nd_vertices(3);
    const std::string vt = io::write_vrep(v);
    const VPolytope vb = io::read_vrep(vt);
    CHECK(vb.dim == v.dim);
    CHECK(vb.vertices == v.vertices);
    CHECK(io::write_vrep(vb) == vt);

    CHECK_THROWS_AS(io::read_hrep("DIM 0\n"), ParseError);
    CHECK_THROWS_AS(io::read_hrep("DIM 2\nINEQ 1\n1 0 <= \n"), ParseError);
    CHECK_THROWS_AS(io::read_vrep("DIM 2\nVERTICES 1\n1\nEND\n"), ParseError);
    CHECK_THROWS_AS(io::read_vrep(vt.substr(0, vt.size() - 4)), ParseError);
}

TEST_CASE("correlator table CSV export") {
    const auto cycle = share(n_cycle(3));
    const Behavior det = assignment_behavior(cycle, {1, 1, 1});
    const std::string csv = io::correlator_csv(det);
    CHECK(csv.rfind("term,value\n", 0) == 0);
    CHECK(csv.find("B0,1\n") != std::string::npos);
    CHECK(csv.find("B0*B1,1\n") != std::string::npos);
    CHECK(csv.find("B2*B0,") == std::string::npos); // subsets stay sorted by id
}

TEST_CASE("float formatting and file helpers") {
    CHECK(io::format_float(0.0) == "0");
    CHECK(io::format_float(0.25) == "0.25");
    CHECK(io::format_float(5.0 - 4.0 * 2.2360679774997896) == "-3.94427191");
    CHECK(io::format_float(1.0 / 3.0) == "0.333333333333");

    const std::string path = "/tmp/gbell_io_test_roundtrip.txt";
    io::write_text_file(path, "hello\n");
    CHECK(io::read_text_file(path) == "hello\n");
    CHECK_THROWS_AS(io::read_text_file("/tmp/gbell_io_test_missing_file.txt"), ParseError);
}

TEST_SUITE_END();
