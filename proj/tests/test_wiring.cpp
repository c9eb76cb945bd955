#include <doctest.h>

#include <stdexcept>

#include "nldist/box.hpp"
#include "nldist/distillation.hpp"
#include "nldist/random.hpp"
#include "nldist/wiring.hpp"

using namespace nldist;

TEST_CASE("comparator") {
  for (int d : {2, 3, 7}) {
    CHECK(comparator(d - 1, d) == 1);
    CHECK(comparator(0, d) == 0);
    if (d >= 3) CHECK(comparator(d - 2, d) == 0);
    CHECK_THROWS_AS(comparator(d, d), std::invalid_argument);
    CHECK_THROWS_AS(comparator(-1, d), std::invalid_argument);
  }
}

TEST_CASE("comparator_wiring tables") {
  SUBCASE("d=2 offset 0 is AND with the comparator bit and XOR output") {
    const WiringSpec w = comparator_wiring(2, 0);
    for (int x = 0; x < 2; ++x)
      for (int a1 = 0; a1 < 2; ++a1) CHECK(w.fa(x, a1) == (x & a1));
    for (int a1 = 0; a1 < 2; ++a1)
      for (int a2 = 0; a2 < 2; ++a2) CHECK(w.ga(a1, a2) == (a1 ^ a2));
  }
  SUBCASE("d=3 offset 1") {
    const WiringSpec w = comparator_wiring(3, 1);
    CHECK(w.ga(2, 2) == 2);
    CHECK(w.gb(0, 0) == 1);
    CHECK(w.fb(1, 2) == 1);
    CHECK(w.fb(1, 1) == 0);
  }
  SUBCASE("d=5 offset 0") {
    const WiringSpec w = comparator_wiring(5, 0);
    CHECK(w.fa(1, 4) == 1);
    CHECK(w.fa(1, 3) == 0);
    CHECK(w.fa(0, 4) == 0);
  }
  CHECK_THROWS_AS(comparator_wiring(3, 3), std::invalid_argument);
  CHECK_THROWS_AS(comparator_wiring(3, -1), std::invalid_argument);
  CHECK(protocol_wiring(Protocol::B, 4) == comparator_wiring(4, 1));
}

TEST_CASE("WiringSpec rejects malformed tables") {
  const WiringSpec::InputTable f{{0, 0}, {0, 1}};
  const WiringSpec::OutputTable g{{0, 1}, {1, 0}};
  CHECK_NOTHROW(WiringSpec(2, f, f, g, g));
  CHECK_THROWS_AS(WiringSpec(2, {{0, 0}}, f, g, g), std::invalid_argument);
  CHECK_THROWS_AS(WiringSpec(2, {{0, 2}, {0, 0}}, f, g, g), std::invalid_argument);
  CHECK_THROWS_AS(WiringSpec(2, f, f, {{0, 2}, {1, 0}}, g), std::invalid_argument);
  CHECK_THROWS_AS(WiringSpec(2, f, f, g, {{0, 1}}), std::invalid_argument);
}

TEST_CASE("wire rejects dimension mismatch") {
  CHECK_THROWS_AS(wire(make_nl_box(2), make_nl_box(3), comparator_wiring(2, 0)), std::invalid_argument);
  CHECK_THROWS_AS(wire(make_nl_box(3), make_nl_box(3), comparator_wiring(2, 0)), std::invalid_argument);
}

TEST_CASE("protocol A cases") {
  for (int d : {2, 3, 4, 6}) {
    const Box nl = make_nl_box(d), lc = make_lc_box(d);
    const WiringSpec a = protocol_wiring(Protocol::A, d);
    CHECK(max_abs_diff(wire(nl, nl, a).table(), nl.table()) <= 1e-12);
    CHECK(max_abs_diff(wire(nl, lc, a).table(), nl.table()) <= 1e-12);
    CHECK(max_abs_diff(wire(lc, lc, a).table(), lc.table()) <= 1e-12);
    const Box expect = mix({nl, lc}, {1.0 / d, 1.0 - 1.0 / d});
    CHECK(max_abs_diff(wire(lc, nl, a).table(), expect.table()) <= 1e-12);
  }
}

TEST_CASE("protocol B rules") {
  for (int d : {2, 3, 5}) {
    const WiringSpec b = protocol_wiring(Protocol::B, d);
    const Box nl = make_nl_box(d), ld = make_ld_box(d);
    CHECK(max_abs_diff(wire(ld, nl, b).table(), nl.table()) <= 1e-12);
    CHECK(max_abs_diff(wire(ld, ld, b).table(), ld.table()) <= 1e-12);
  }
  for (int d : {2, 3, 5}) {
    for (const TransformationRule& rule : comparator_transformation_rules(d)) {
      const ProbTable out = wire_reference(basis_box(rule.first, d).table(),
                                           basis_box(rule.second, d).table(),
                                           protocol_wiring(rule.protocol, d));
      const ProbTable expect = compose_basis(d, rule.expected.c_nl, rule.expected.c_lc,
                                             rule.expected.c_ld, rule.expected.c_mix);
      CHECK(max_abs_diff(out, expect) <= 1e-12);
    }
  }
}

TEST_CASE("mixed * NL under protocol B is a quasi-mixture") {
  for (int d : {2, 3, 5, 8}) {
    const Box out = wire(make_mixed_box(d), make_nl_box(d), protocol_wiring(Protocol::B, d));
    const AffineDecomposition c = decompose_affine(out);
    const double inv2 = 1.0 / (d * d);
    CHECK(c.c_nl == doctest::Approx(inv2).epsilon(1e-10));
    CHECK(c.c_lc == doctest::Approx(-inv2).epsilon(1e-10));
    CHECK(std::abs(c.c_ld) <= 1e-10);
    CHECK(c.c_mix == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(c.residual <= 1e-10);
  }
}

TEST_CASE("property: parallel kernel matches the serial reference") {
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    const int d = 2 + i % 9;
    const Box p = random_nonsignaling_box(d, rng), q = random_nonsignaling_box(d, rng);
    const WiringSpec w = random_wiring(d, rng);
    CHECK(max_abs_diff(wire_parallel(p.table(), q.table(), w), wire_reference(p.table(), q.table(), w)) <=
          1e-12);
  }
}

TEST_CASE("property: deterministic wirings preserve nonsignaling and normalization") {
  Rng rng(29);
  for (int i = 0; i < 500; ++i) {
    const int d = 2 + i % 5;
    const Box p = random_nonsignaling_box(d, rng), q = random_nonsignaling_box(d, rng);
    const ProbTable out = wire_parallel(p.table(), q.table(), random_wiring(d, rng));
    const auto r = validate_nonsignaling(out, 1e-9);
    CHECK(r.ok);
    CHECK(r.normalization <= 1e-12);
  }
}

TEST_CASE("property: wire is bilinear") {
  Rng rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const int d = 2 + i % 4;
    const Box p = random_nonsignaling_box(d, rng), q = random_nonsignaling_box(d, rng);
    const Box r = random_nonsignaling_box(d, rng);
    const WiringSpec s = random_wiring(d, rng);
    const double w = u(rng);
    const Box m = mix({p, q}, {w, 1.0 - w});

    const ProbTable wp = wire_reference(p.table(), r.table(), s), wq = wire_reference(q.table(), r.table(), s);
    const ProbTable left = affine_combination({&wp, &wq}, {w, 1.0 - w});
    CHECK(max_abs_diff(wire_reference(m.table(), r.table(), s), left) <= 1e-12);

    const ProbTable rp = wire_reference(r.table(), p.table(), s), rq = wire_reference(r.table(), q.table(), s);
    const ProbTable right = affine_combination({&rp, &rq}, {w, 1.0 - w});
    CHECK(max_abs_diff(wire_reference(r.table(), m.table(), s), right) <= 1e-12);
  }
}
