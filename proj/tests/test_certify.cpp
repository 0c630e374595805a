#include <doctest.h>

#include <cmath>
#include <random>

#include "ordyn/certify.hpp"
#include "test_support.hpp"

using namespace ordyn;
using testsupport::random_function;

namespace {

const double kSqrt2 = std::sqrt(2.0);

GroupPoint zp(const GroupSpace& G, std::int64_t n) {
  return G.make(std::vector<std::int64_t>{n});
}

PointSet zbox(const GroupSpace& G, std::int64_t lo, std::int64_t hi) {
  return PointSet::box(G, std::vector<std::int64_t>{lo}, std::vector<std::int64_t>{hi});
}

std::vector<std::int64_t> linear_schedule(std::int64_t k_max, std::int64_t step = 1) {
  std::vector<std::int64_t> s;
  for (std::int64_t k = 1; k <= k_max; ++k) s.push_back(k * step);
  return s;
}

}  // namespace

TEST_SUITE("certify") {

TEST_CASE("criterion quantity: atoms under decay weights") {
  const auto Z = GroupSpace::integer_line();
  const auto p2 = YoungFunction::power(2.0);
  const PointSet E0(std::vector<GroupPoint>{zp(Z, 0)});

  CHECK(criterion_quantity(Z, PointSet{}, zp(Z, 1), 5, Weight::constant(1.0), p2) == 0.0);
  CHECK(criterion_quantity(Z, E0, zp(Z, 1), 5, Weight::constant(1.0), p2) ==
        doctest::Approx(kSqrt2).epsilon(1e-6));
  CHECK(criterion_quantity(Z, E0, zp(Z, 1), 5, Weight::exp_abs(-1.0), p2) ==
        doctest::Approx(kSqrt2 * std::exp(-5.0)).epsilon(1e-5));
}

TEST_CASE("reduction identity: reduced form equals the dual-oracle form") {
  // Growth weights are paired with small windows so the quantities stay at
  // a scale where the absolute tolerance is meaningful.
  std::mt19937 rng(404);
  std::uniform_int_distribution<std::int64_t> coord(-12, 12);
  std::uniform_int_distribution<std::int64_t> coord_small(-2, 2);
  std::uniform_int_distribution<std::int64_t> shift(-9, 9);
  std::uniform_int_distribution<std::int64_t> shift_small(-2, 2);
  std::uniform_int_distribution<int> size(1, 8);
  const auto Z = GroupSpace::integer_line();
  for (int i = 0; i < 40; ++i) {
    const bool grow = (i % 3 == 2);
    const Weight w = grow ? Weight::exp_abs(1.0)
                          : (i % 3 == 0 ? Weight::exp_abs(-1.0) : Weight::constant(1.0));
    const YoungFunction phi = (grow || i % 2)
                                  ? YoungFunction::power(2.0)
                                  : YoungFunction::power_log(2.0);
    std::vector<GroupPoint> pts;
    const int n = size(rng);
    for (int j = 0; j < n; ++j) pts.push_back(zp(Z, grow ? coord_small(rng) : coord(rng)));
    const PointSet E(std::move(pts));
    const auto a = zp(Z, grow ? 1 : 1 + (i % 3));
    const std::int64_t nn = grow ? shift_small(rng) : shift(rng);
    const double reduced = criterion_quantity(Z, E, a, nn, w, phi);
    const double direct = criterion_quantity_direct(Z, E, a, nn, w, phi);
    CHECK(std::fabs(reduced - direct) <= 1e-4);
  }
}

TEST_CASE("transitivity certificate: decaying weight is certified") {
  const auto Z = GroupSpace::integer_line();
  const auto K = zbox(Z, -3, 3);
  const auto w = Weight::exp_abs(-1.0);
  const auto p2 = YoungFunction::power(2.0);
  const auto sched = linear_schedule(30);

  const auto cert = transitivity_certificate(Z, K, zp(Z, 1), w, p2, sched, {});
  CHECK(cert.verdict == CertVerdict::certified_decaying);
  CHECK(cert.steps.size() == 30);
  CHECK(cert.decay_ratio == doctest::Approx(std::exp(-1.0)).epsilon(0.05 / 0.37));
  CHECK(std::fabs(cert.decay_ratio - std::exp(-1.0)) < 0.05);
  const auto& last = cert.steps.back();
  CHECK(std::max({last.q0, last.q_plus, last.q_minus}) < 1e-9);
  // full strategy: E_k = K, so q0 vanishes identically
  for (const auto& s : cert.steps) {
    CHECK(s.q0 == 0.0);
    CHECK(s.E_size == K.size());
  }
}

TEST_CASE("transitivity certificate: unweighted invariance is inconclusive") {
  const auto Z = GroupSpace::integer_line();
  const auto K = zbox(Z, -3, 3);
  const auto p2 = YoungFunction::power(2.0);
  const auto cert = transitivity_certificate(Z, K, zp(Z, 1), Weight::constant(1.0), p2,
                                             linear_schedule(30), {});
  CHECK(cert.verdict == CertVerdict::inconclusive);
  // exact translation invariance: q_plus = q_minus = ||chi_K||_Phi bitwise
  const double chiK = orlicz_norm(SimpleFunction::indicator(Z, K), p2).value;
  for (const auto& s : cert.steps) {
    CHECK(s.q_plus == chiK);
    CHECK(s.q_minus == chiK);
  }
}

TEST_CASE("transitivity certificate: growth weight is obstructed") {
  const auto Z = GroupSpace::integer_line();
  const auto K = zbox(Z, -3, 3);
  const auto p2 = YoungFunction::power(2.0);
  const auto cert = transitivity_certificate(Z, K, zp(Z, 1), Weight::exp_abs(1.0), p2,
                                             linear_schedule(30), {});
  CHECK(cert.verdict == CertVerdict::obstructed);
  CHECK(cert.obstruction_bound >= 1.0);
  CHECK(!cert.obstruction_reason.empty());
}

TEST_CASE("certificate preconditions") {
  const auto Z = GroupSpace::integer_line();
  const auto p2 = YoungFunction::power(2.0);
  const auto w = Weight::exp_abs(-1.0);
  CHECK_THROWS_AS(
      transitivity_certificate(Z, PointSet{}, zp(Z, 1), w, p2, linear_schedule(5), {}),
      precondition_error);
  const std::vector<std::int64_t> bad = {3, 2, 5};
  CHECK_THROWS_AS(transitivity_certificate(Z, zbox(Z, -1, 1), zp(Z, 1), w, p2, bad, {}),
                  precondition_error);
  CHECK_THROWS_AS(mixing_certificate(Z, zbox(Z, -1, 1), zp(Z, 1), w, p2, 0, {}),
                  precondition_error);
  // torsion carrier: the aperiodicity precondition fails
  const auto C = GroupSpace::cyclic(4);
  const PointSet KC(std::vector<GroupPoint>{zp(C, 0)});
  CHECK_THROWS_AS(
      transitivity_certificate(C, KC, zp(C, 1), Weight::constant(1.0), p2,
                               linear_schedule(20), {}),
      precondition_error);
}

TEST_CASE("mixing certificate follows the full sequence") {
  const auto Z = GroupSpace::integer_line();
  const auto K = zbox(Z, -3, 3);
  const auto p2 = YoungFunction::power(2.0);

  const auto certified = mixing_certificate(Z, K, zp(Z, 1), Weight::exp_abs(-1.0), p2, 30, {});
  CHECK(certified.verdict == CertVerdict::certified_decaying);
  CHECK(certified.steps.size() == 30);
  for (std::size_t i = 0; i < certified.steps.size(); ++i)
    CHECK(certified.steps[i].n_k == static_cast<std::int64_t>(i + 1));

  const auto flat = mixing_certificate(Z, K, zp(Z, 1), Weight::constant(1.0), p2, 30, {});
  CHECK(flat.verdict == CertVerdict::inconclusive);
}

TEST_CASE("mixing restricted to a transitivity schedule reproduces its steps") {
  const auto Z = GroupSpace::integer_line();
  const auto K = zbox(Z, -3, 3);
  const auto w = Weight::exp_abs(-1.0);
  const auto p2 = YoungFunction::power(2.0);
  const auto sched = linear_schedule(30);
  const auto trans = transitivity_certificate(Z, K, zp(Z, 1), w, p2, sched, {});
  const auto mix = mixing_certificate(Z, K, zp(Z, 1), w, p2, 30, {});
  REQUIRE(trans.verdict == CertVerdict::certified_decaying);
  for (std::size_t i = 0; i < sched.size(); ++i) {
    CHECK(mix.steps[i].q_plus == doctest::Approx(trans.steps[i].q_plus).epsilon(1e-12));
    CHECK(mix.steps[i].q_minus == doctest::Approx(trans.steps[i].q_minus).epsilon(1e-12));
  }
  CHECK(mix.steps.back().q_plus <= trans.steps.back().q_plus * (1.0 + 1e-12));
}

TEST_CASE("chaos certificate: summed series with geometric tails") {
  const auto Z = GroupSpace::integer_line();
  const auto K = zbox(Z, -3, 3);
  const auto w = Weight::exp_abs(-1.0);
  const auto p2 = YoungFunction::power(2.0);
  const auto sched = linear_schedule(3, 10);  // n_k = 10, 20, 30

  CertifyConfig cc;
  cc.L_max = 8;
  const auto cert = chaos_certificate(Z, K, zp(Z, 1), w, p2, sched, cc);
  CHECK(cert.verdict == CertVerdict::certified_decaying);
  for (const auto& s : cert.steps) {
    REQUIRE(s.has_series);
    CHECK(s.tail_bounded);
    CHECK(s.tail_plus < 1e-20);
    CHECK(s.tail_minus < 1e-20);
    CHECK(s.series_plus > 0.0);
  }

  // chaos certified implies transitive certified on the same inputs
  const auto trans = transitivity_certificate(Z, K, zp(Z, 1), w, p2, sched, cc);
  CHECK(trans.verdict == CertVerdict::certified_decaying);
}

TEST_CASE("chaos certificate: unweighted case has unit ratio and stays inconclusive") {
  const auto Z = GroupSpace::integer_line();
  const auto K = zbox(Z, -3, 3);
  const auto p2 = YoungFunction::power(2.0);
  CertifyConfig cc;
  cc.L_max = 4;
  const auto cert = chaos_certificate(Z, K, zp(Z, 1), Weight::constant(1.0), p2,
                                      linear_schedule(3, 10), cc);
  CHECK(cert.verdict == CertVerdict::inconclusive);
  for (const auto& s : cert.steps) CHECK_FALSE(s.tail_bounded);
}

TEST_CASE("chaos certificate: colliding translates are a precondition error") {
  const auto Z = GroupSpace::integer_line();
  const auto K = zbox(Z, -3, 3);
  CertifyConfig cc;
  cc.L_max = 3;
  // n_1 = 3 is below the box diameter, so E a^{l n_1} overlap even though
  // the aperiodicity window itself (horizon 21) succeeds
  const std::vector<std::int64_t> sched = {3, 20, 21};
  CHECK_THROWS_WITH_AS(
      chaos_certificate(Z, K, zp(Z, 1), Weight::exp_abs(-1.0),
                        YoungFunction::power(2.0), sched, cc),
      doctest::Contains("(r, s)"), precondition_error);
}

TEST_CASE("greedy strategy: empty E_k gives a dead series and no certificate") {
  const auto Z = GroupSpace::integer_line();
  const auto K = zbox(Z, -3, 3);
  const auto w = Weight::exp_abs(-1.0);
  const auto p2 = YoungFunction::power(2.0);
  CertifyConfig cc;
  cc.strategy.kind = EkStrategy::Kind::greedy;
  cc.strategy.delta0 = 1e-30;  // nothing qualifies
  cc.strategy.delta_ratio = 0.5;
  cc.L_max = 4;
  const auto cert = chaos_certificate(Z, K, zp(Z, 1), w, p2, linear_schedule(3, 10), cc);
  CHECK(cert.verdict != CertVerdict::certified_decaying);
  for (const auto& s : cert.steps) {
    CHECK(s.E_size == 0);
    CHECK(s.series_plus == 0.0);
    CHECK(s.q0 == doctest::Approx(weighted_norm(SimpleFunction::indicator(Z, K), w, p2).value));
  }
}

TEST_CASE("greedy strategy keeps low-weight points") {
  const auto Z = GroupSpace::integer_line();
  const auto K = zbox(Z, -3, 3);
  const auto w = Weight::exp_abs(-1.0);
  const auto p2 = YoungFunction::power(2.0);
  CertifyConfig cc;
  cc.strategy.kind = EkStrategy::Kind::greedy;
  cc.strategy.delta0 = 0.5;
  cc.strategy.delta_ratio = 0.9;
  const auto cert = transitivity_certificate(Z, K, zp(Z, 1), w, p2, linear_schedule(25), cc);
  for (const auto& s : cert.steps) CHECK(s.E_size <= K.size());
  // later steps reach far into the decay region, so all of K qualifies
  CHECK(cert.steps.back().E_size == K.size());
}

TEST_CASE("abelian obstruction check") {
  const auto Z = GroupSpace::integer_line();
  const auto K = zbox(Z, -3, 3);

  const auto grow = abelian_obstruction_check(Z, K, zp(Z, 1), Weight::exp_abs(1.0), 16);
  CHECK(grow.status == ObstructionReport::Status::holds);
  CHECK(grow.bound == doctest::Approx(1.0));

  const auto decay = abelian_obstruction_check(Z, K, zp(Z, 1), Weight::exp_abs(-1.0), 16);
  CHECK(decay.status == ObstructionReport::Status::not_applicable);

  const auto flat = abelian_obstruction_check(Z, K, zp(Z, 1), Weight::constant(1.0), 16);
  CHECK(flat.status == ObstructionReport::Status::holds);
  CHECK(flat.bound == doctest::Approx(1.0));

  const auto H = GroupSpace::heisenberg();
  const auto HK = PointSet::box(H, std::vector<std::int64_t>{-1, -1, -1},
                                std::vector<std::int64_t>{1, 1, 1});
  const auto heis = abelian_obstruction_check(H, HK, H.make(std::vector<std::int64_t>{1, 0, 3}),
                                              Weight::exp_abs(1.0), 8);
  CHECK(heis.status == ObstructionReport::Status::not_applicable);
}

TEST_CASE("blow-up/collapse probe") {
  const auto Z = GroupSpace::integer_line();
  const auto p2 = YoungFunction::power(2.0);
  const auto chi0 = SimpleFunction::atom(Z, zp(Z, 0), 1.0);
  const auto sched = linear_schedule(30);

  const auto hit = blowup_collapse_probe(chi0, chi0, 0.01, zp(Z, 1),
                                         Weight::exp_abs(-1.0), p2, sched, {});
  REQUIRE(hit.found);
  CHECK(hit.n_k == 5);  // first n with sqrt(2) e^{-n} < 0.01
  CHECK(hit.dist_f == 0.0);
  CHECK(hit.norm_Tf < 0.01);
  CHECK(hit.norm_Sg < 0.01);

  const auto miss = blowup_collapse_probe(chi0, chi0, 0.01, zp(Z, 1),
                                          Weight::constant(1.0), p2, sched, {});
  CHECK_FALSE(miss.found);
  CHECK(miss.norm_Tf == doctest::Approx(kSqrt2).epsilon(1e-6));

  const auto zero = SimpleFunction::zero(Z);
  const auto trivial = blowup_collapse_probe(zero, zero, 0.5, zp(Z, 1),
                                             Weight::exp_abs(-1.0), p2, sched, {});
  REQUIRE(trivial.found);
  CHECK(trivial.n_k == sched.front());
}

TEST_CASE("certified transitivity implies a successful probe") {
  const auto Z = GroupSpace::integer_line();
  const auto p2 = YoungFunction::power(2.0);
  const auto w = Weight::exp_abs(-1.0);
  std::mt19937 rng(55);
  std::uniform_int_distribution<std::int64_t> coord(-3, 3);
  std::vector<SimpleFunction::Atom> atoms;
  for (int i = 0; i < 4; ++i) atoms.emplace_back(zp(Z, coord(rng)), 1.5);
  const SimpleFunction f(Z, atoms);
  const auto g = f.scaled(0.5);
  const double eps = 0.01;
  const double inner_tol = eps / (1.0 + f.max_abs() + g.max_abs());
  const auto K = f.support_set().unioned(g.support_set());

  CertifyConfig cc;
  cc.tol = inner_tol;
  const auto cert = transitivity_certificate(Z, K, zp(Z, 1), w, p2, linear_schedule(40), cc);
  REQUIRE(cert.verdict == CertVerdict::certified_decaying);
  const auto probe =
      blowup_collapse_probe(f, g, eps, zp(Z, 1), w, p2, linear_schedule(40), {});
  CHECK(probe.found);
}

TEST_CASE("parallel step evaluation matches the serial result") {
  const auto Z = GroupSpace::integer_line();
  const auto K = zbox(Z, -3, 3);
  const auto w = Weight::exp_abs(-1.0);
  const auto p2 = YoungFunction::power(2.0);
  CertifyConfig serial, parallel;
  parallel.workers = 4;
  const auto sched = linear_schedule(24);
  const auto c1 = transitivity_certificate(Z, K, zp(Z, 1), w, p2, sched, serial);
  const auto c2 = transitivity_certificate(Z, K, zp(Z, 1), w, p2, sched, parallel);
  REQUIRE(c1.steps.size() == c2.steps.size());
  for (std::size_t i = 0; i < c1.steps.size(); ++i) {
    CHECK(c1.steps[i].q_plus == c2.steps[i].q_plus);
    CHECK(c1.steps[i].q_minus == c2.steps[i].q_minus);
  }
  CHECK(c1.verdict == c2.verdict);
}

}  // TEST_SUITE
