#include <doctest.h>

#include <cmath>

#include "algebra.hpp"
#include "metrics.hpp"

using namespace denmet;

namespace {

const AlgebraShape kC2{1, 1};

DensityElement diag_density(const Trace& tau, const std::vector<double>& entries) {
  return normalize_to_density(tau, Element::diagonal(tau.shape, entries));
}

}  // namespace

TEST_CASE("bures distance on C^2 closed forms") {
  const Trace tau = Trace::uniform(kC2);
  const DensityElement x = diag_density(tau, {1.0, 0.0});
  const DensityElement y = diag_density(tau, {0.0, 1.0});

  CHECK(bures_distance(tau, x, x) == 0.0);
  CHECK(bures_distance(tau, x, y) == doctest::Approx(1.0).epsilon(1e-12));

  // d_B((1,0), (y1, y2)) = sqrt(1 - sqrt(y1))
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const double y1 = rng.uniform();
    const DensityElement z = diag_density(tau, {y1, 1.0 - y1});
    CHECK(bures_distance(tau, x, z) ==
          doctest::Approx(std::sqrt(1.0 - std::sqrt(y1))).epsilon(1e-11));
  }

  // frozen spot value: sqrt(1 - sqrt(1/2))
  const DensityElement half = diag_density(tau, {0.5, 0.5});
  CHECK(bures_distance(tau, x, half) == doctest::Approx(0.541196100146197).epsilon(1e-12));
}

TEST_CASE("bures agrees with the commutative closed form") {
  Rng rng(12);
  for (int n = 2; n <= 6; ++n) {
    const AlgebraShape shape(std::vector<int>(n, 1));
    const Trace tau(shape, [&] {
      std::vector<double> w(n);
      for (double& v : w) v = 0.5 + rng.uniform();
      return w;
    }());
    for (int trial = 0; trial < 200; ++trial) {
      const DensityElement x = sample_density(tau, rng.next_u64());
      const DensityElement y = sample_density(tau, rng.next_u64());
      const double gap =
          std::abs(bures_distance(tau, x, y) - bures_commutative_closed_form(tau, x, y));
      REQUIRE(gap <= 1e-10);
    }
  }
}

TEST_CASE("bures agrees with the qubit fidelity oracle") {
  const AlgebraShape m2{2};
  const Trace tau = Trace::uniform(m2);
  Rng rng(13);

  // oracle consistency on the commuting overlap with the diagonal closed form
  const DensityElement a = normalize_to_density(tau, Element::diagonal(m2, {0.7, 0.3}));
  const DensityElement b = normalize_to_density(tau, Element::diagonal(m2, {0.2, 0.8}));
  const double expected = std::sqrt(1.0 - (std::sqrt(0.7 * 0.2) + std::sqrt(0.3 * 0.8)));
  CHECK(fidelity_2x2_bures(a, b) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(fidelity_2x2_bures(a, a) == doctest::Approx(0.0).scale(1.0).epsilon(1e-7));

  for (int trial = 0; trial < 1000; ++trial) {
    const DensityElement x = sample_density(tau, rng.next_u64());
    const DensityElement y = sample_density(tau, rng.next_u64());
    REQUIRE(std::abs(bures_distance(tau, x, y) - fidelity_2x2_bures(x, y)) <= 1e-9);
  }
}

TEST_CASE("bures range and symmetry") {
  Rng rng(14);
  const AlgebraShape m3{3};
  const Trace tau(m3, {0.75});
  for (int trial = 0; trial < 200; ++trial) {
    const DensityElement x = sample_density(tau, rng.next_u64());
    const DensityElement y = sample_density(tau, rng.next_u64());
    const double d = bures_distance(tau, x, y);
    REQUIRE(d >= 0.0);
    REQUIRE(d <= 1.0);
    REQUIRE(std::abs(d - bures_distance(tau, y, x)) <= 1e-10);
  }
}

TEST_CASE("state map") {
  const Trace tau = Trace::uniform(kC2);
  Rng rng(15);

  // phi_x(x') = x1 x1' + x2 x2' on C^2 with the sum trace
  for (int trial = 0; trial < 50; ++trial) {
    const DensityElement x = sample_density(tau, rng.next_u64());
    const StateFunctional phi = state_map(tau, x);
    CHECK(std::abs(phi.eval(Element::identity(kC2)) - cplx(1.0, 0.0)) <= 1e-12);
    const double a1 = rng.gaussian(), a2 = rng.gaussian();
    const Element probe = Element::diagonal(kC2, {a1, a2});
    const auto xv = x.element().commutative_values();
    CHECK(std::abs(phi.eval(probe) - cplx(xv[0] * a1 + xv[1] * a2, 0.0)) <= 1e-12);
  }

  // positivity on b*b, and unitality, on a noncommutative shape
  const AlgebraShape m2{2};
  const Trace t2(m2, {0.5});
  for (int trial = 0; trial < 50; ++trial) {
    const DensityElement x = sample_density(t2, rng.next_u64());
    const StateFunctional phi = state_map(t2, x);
    CHECK(std::abs(phi.eval(Element::identity(m2)).real() - 1.0) <= 1e-12);
    Rng r2(rng.next_u64());
    const Element b = sample_element(m2, r2);
    CHECK(phi.eval(b.adjoint() * b).real() >= -1e-12);
  }

  // injectivity: distinct densities differ on some matrix unit
  for (int trial = 0; trial < 100; ++trial) {
    const DensityElement x = sample_density(t2, rng.next_u64());
    const DensityElement y = sample_density(t2, rng.next_u64());
    if (cstar_distance(x.element(), y.element()) < 1e-6) continue;
    const StateFunctional phi = state_map(t2, x);
    const StateFunctional psi = state_map(t2, y);
    double best = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Matrix unit = Matrix::Zero(2, 2);
        unit(i, j) = 1.0;
        const Element e(m2, {unit});
        best = std::max(best, std::abs(phi.eval(e) - psi.eval(e)));
      }
    REQUIRE(best >= 1e-8 * t2.min_weight());
  }
}

TEST_CASE("seminorm construction and validity") {
  CHECK_THROWS_AS(Seminorm(AlgebraShape{2}, {{1.0, -1.0}}), error);      // not commutative
  CHECK_THROWS_AS(Seminorm(kC2, {{1.0, 1.0}}), error);                   // row sum != 0
  CHECK_THROWS_AS(Seminorm(kC2, {{1.0}}), error);                        // wrong length

  const Seminorm lb = Seminorm::difference_c2();
  CHECK(lb.eval({3.0, 1.0}) == doctest::Approx(2.0));
  CHECK(lb.eval({2.5, 2.5}) == 0.0);  // constants are in the kernel
  CHECK(lb.kernel_exactly_constants());

  // rank-deficient family on C^3: kernel is larger than the constants
  const AlgebraShape c3{1, 1, 1};
  const Seminorm degenerate(c3, {{1.0, -1.0, 0.0}});
  CHECK_FALSE(degenerate.kernel_exactly_constants());

  const Seminorm good(c3, {{1.0, -1.0, 0.0}, {0.0, 1.0, -1.0}});
  CHECK(good.kernel_exactly_constants());

  Rng rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    const Seminorm l = sample_seminorm(c3, 2 + trial % 3, rng);
    REQUIRE(l.kernel_exactly_constants());
    REQUIRE(l.eval({1.0, 1.0, 1.0}) <= 1e-12);
  }
}

TEST_CASE("mk distance on C^2 equals |x1 - y1|") {
  const Trace tau = Trace::uniform(kC2);
  const Seminorm lb = Seminorm::difference_c2();
  const DensityElement x = diag_density(tau, {1.0, 0.0});
  const DensityElement y = diag_density(tau, {0.0, 1.0});

  CHECK(mk_distance_lp(tau, lb, x, x) == 0.0);
  CHECK(mk_distance_lp(tau, lb, x, y) == doctest::Approx(1.0).epsilon(1e-12));

  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const DensityElement a = sample_density(tau, rng.next_u64());
    const DensityElement b = sample_density(tau, rng.next_u64());
    const double expected =
        std::abs(a.element().commutative_values()[0] - b.element().commutative_values()[0]);
    REQUIRE(std::abs(mk_distance_lp(tau, lb, a, b) - expected) <= 1e-9);
    REQUIRE(std::abs(mk_distance_lp(tau, lb, a, b) -
                     cstar_distance(a.element(), b.element())) <= 1e-9);
  }
}

TEST_CASE("mk LP agrees with vertex enumeration") {
  Rng rng(18);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 2;
    const AlgebraShape shape(std::vector<int>(n, 1));
    const Trace tau = Trace::uniform(shape);
    const Seminorm l = sample_seminorm(shape, n - 1 + trial % 3, rng);
    const DensityElement x = sample_density(tau, rng.next_u64());
    const DensityElement y = sample_density(tau, rng.next_u64());
    const double lp = mk_distance_lp(tau, l, x, y);
    const double brute = mk_distance_bruteforce(tau, l, x, y);
    REQUIRE(std::abs(lp - brute) <= 1e-9);
  }

  // the C^2 bruteforce also matches the closed form
  const Trace tau = Trace::uniform(kC2);
  const Seminorm lb = Seminorm::difference_c2();
  const DensityElement a = diag_density(tau, {0.25, 0.75});
  const DensityElement b = diag_density(tau, {0.6, 0.4});
  CHECK(mk_distance_bruteforce(tau, lb, a, b) == doctest::Approx(0.35).epsilon(1e-12));
}

TEST_CASE("rank-deficient seminorm makes the LP unbounded") {
  const AlgebraShape c3{1, 1, 1};
  const Trace tau = Trace::uniform(c3);
  const Seminorm degenerate(c3, {{1.0, -1.0, 0.0}});
  const DensityElement x = sample_density(tau, 100);
  const DensityElement y = sample_density(tau, 101);
  CHECK_THROWS_AS(mk_distance_lp(tau, degenerate, x, y), error);
  CHECK_THROWS_AS(mk_distance_bruteforce(tau, degenerate, x, y), error);
}

TEST_CASE("metric axiom suite finds no violations") {
  const AlgebraShape m2{2};
  const Trace tau = Trace::uniform(m2);
  const AxiomReport bures = metric_axiom_suite(MetricKind::bures, m2, tau, 10000, 77);
  CHECK(bures.passed());
  CHECK(bures.worst_triangle_deficit <= 1e-9);
  CHECK(bures.worst_asymmetry <= 1e-10);

  const AxiomReport cstar = metric_axiom_suite(MetricKind::cstar, m2, tau, 2000, 78);
  CHECK(cstar.passed());

  const AlgebraShape c3{1, 1, 1};
  const Trace t3 = Trace::uniform(c3);
  Rng rng(19);
  const Seminorm l = sample_seminorm(c3, 3, rng);
  const AxiomReport quantum =
      metric_axiom_suite(MetricKind::quantum, c3, t3, 1000, 79, &l);
  CHECK(quantum.passed());

  // report serialization carries the violation and record fields
  const auto j = bures.to_json();
  CHECK(j["violation_count"].get<size_t>() == 0);
  CHECK(j["records"].size() == 1000);  // capped
  CHECK(j["trials"].get<int>() == 10000);
}

TEST_CASE("axiom suite needs a seminorm for the quantum metric") {
  const AlgebraShape m2{2};
  const Trace tau = Trace::uniform(m2);
  CHECK_THROWS_AS(metric_axiom_suite(MetricKind::quantum, m2, tau, 10, 1), error);
}

TEST_CASE("convergence transfer probe") {
  const Trace tau = Trace::uniform(kC2);
  const DensityElement x = diag_density(tau, {0.5, 0.5});

  SUBCASE("zero perturbation gives identically zero columns") {
    const auto table = convergence_transfer_probe(tau, x, Element::zero(kC2), 10);
    for (const ProbeRow& row : table) {
      CHECK(row.d_cstar == 0.0);
      CHECK(row.d_bures == 0.0);
    }
  }

  SUBCASE("trace-centered ramp decays like 1/k") {
    // h = (1/2, -1/2): tau(h) = 0 so normalization is the identity and
    // d_cstar(x_k, x) = 1/(2k) exactly
    const Element h = Element::diagonal(kC2, {0.5, -0.5});
    const auto table = convergence_transfer_probe(tau, x, h, 64);
    for (const ProbeRow& row : table) {
      CHECK(row.d_cstar == doctest::Approx(0.5 / row.k).epsilon(1e-13));
      // inside the cone the Bures gap is Lipschitz in the C*-gap; k = 1 lands
      // on the boundary point (1, 0) where only the Hoelder rate holds
      if (row.k >= 2) CHECK(row.d_bures <= row.d_cstar);
    }
    CHECK(table.front().d_bures == doctest::Approx(0.541196100146197).epsilon(1e-12));
    CHECK(table.back().d_bures <= table.front().d_bures);
  }

  SUBCASE("positivity failure raises the resample signal") {
    const Element h = Element::diagonal(kC2, {1.0, -1.0});  // x + h = (1.5, -0.5)
    try {
      convergence_transfer_probe(tau, x, h, 4);
      FAIL("expected a resample signal");
    } catch (const error& e) {
      CHECK(e.code() == errc::resample);
    }
  }

  SUBCASE("transfer holds on a family that reaches d_cstar below 1e-8") {
    const Element h = Element::diagonal(kC2, {1e-7, -1e-7});
    const auto table = convergence_transfer_probe(tau, x, h, 100);
    bool reached = false;
    for (const ProbeRow& row : table)
      if (row.d_cstar <= 1e-8) {
        reached = true;
        CHECK(row.d_bures <= 1e-4);
      }
    CHECK(reached);
  }
}

TEST_CASE("probe on a noncommutative shape") {
  const AlgebraShape m2{2};
  const Trace tau = Trace::uniform(m2);
  const DensityElement x = normalize_to_density(tau, Element::identity(m2));
  Rng rng(20);
  Element h = sample_hermitian(m2, rng);
  h = h.scaled(0.2 / cstar_norm(h));
  const auto table = convergence_transfer_probe(tau, x, h, 50);
  // both metrics decay along the family
  CHECK(table.back().d_cstar < table.front().d_cstar);
  CHECK(table.back().d_bures < table.front().d_bures);
  CHECK(table.back().d_bures < 1e-2);
}
