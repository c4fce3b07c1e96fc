#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "affres/errors.hpp"
#include "affres/spectral.hpp"
#include "support.hpp"

using namespace affres;
using testing_support::random_maps;
using testing_support::to_pairs;

namespace {

AffineMap m(u64 a, u64 b) { return AffineMap{FpElem{a}, FpElem{b}}; }

double norm2(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

Eigen::MatrixXd materialize(const LinOp& op) {
  const auto n = static_cast<Eigen::Index>(op.dim());
  Eigen::MatrixXd out(n, n);
  std::vector<double> e(op.dim(), 0.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    e[static_cast<std::size_t>(j)] = 1.0;
    const auto col = op.apply(e);
    for (Eigen::Index i = 0; i < n; ++i) out(i, j) = col[static_cast<std::size_t>(i)];
    e[static_cast<std::size_t>(j)] = 0.0;
  }
  return out;
}

LinOp dense_op(const Eigen::MatrixXd& a) {
  const auto n = static_cast<std::size_t>(a.rows());
  return LinOp(
      n,
      [a](std::span<const double> v, std::span<double> out) {
        Eigen::Map<Eigen::VectorXd>(out.data(), a.rows()) = a * Eigen::Map<const Eigen::VectorXd>(v.data(), a.cols());
      },
      [a](std::span<const double> v, std::span<double> out) {
        Eigen::Map<Eigen::VectorXd>(out.data(), a.cols()) =
            a.transpose() * Eigen::Map<const Eigen::VectorXd>(v.data(), a.rows());
      });
}

}  // namespace

TEST_CASE("averaged_operator examples") {
  const AffineGroup g3(3);
  const std::vector<double> v{1, -2, 1};
  CHECK(averaged_operator(g3, GeneratorSet({m(1, 0)})).apply(v) == v);
  const auto out = averaged_operator(g3, GeneratorSet({m(1, 1), m(2, 0)})).apply(v);
  CHECK(out[0] == doctest::Approx(1.0));
  CHECK(out[1] == doctest::Approx(1.0));
  CHECK(out[2] == doctest::Approx(-2.0));

  SplitMix64 rng(9);
  for (u64 p : {3, 67, 131}) {
    const auto op = averaged_operator(AffineGroup(p), GeneratorSet(random_maps(rng, p, 3)));
    for (double x : op.apply(std::vector<double>(p, 1.0))) CHECK(x == 0.0);
  }
}

TEST_CASE("averaged_operator equals the explicit centered matrix") {
  SplitMix64 rng(10);
  for (u64 p : {3, 5, 7, 11, 29, 47}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto maps = random_maps(rng, p, 1 + rng.below(5));
      const auto op = averaged_operator(AffineGroup(p), GeneratorSet(maps));
      const Eigen::MatrixXd want = oracle::averaged_matrix(to_pairs(maps), p);
      CHECK((materialize(op) - want).cwiseAbs().maxCoeff() < 1e-14);
      // adjoint is the transpose
      const auto n = static_cast<Eigen::Index>(p);
      std::vector<double> e(p, 0.0);
      for (Eigen::Index j = 0; j < n; ++j) {
        e[static_cast<std::size_t>(j)] = 1.0;
        const auto col = op.apply_adjoint(e);
        for (Eigen::Index i = 0; i < n; ++i) CHECK(std::abs(col[static_cast<std::size_t>(i)] - want(j, i)) < 1e-14);
        e[static_cast<std::size_t>(j)] = 0.0;
      }
    }
  }
}

TEST_CASE("averaged operators are linear contractions") {
  SplitMix64 rng(11);
  for (u64 p : {13, 101, 1009}) {
    const auto op = averaged_operator(AffineGroup(p), GeneratorSet(random_maps(rng, p, 4)));
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> u(p), v(p), w(p);
      const double alpha = rng.symmetric_unit() * 3;
      for (std::size_t i = 0; i < p; ++i) {
        u[i] = rng.symmetric_unit();
        v[i] = rng.symmetric_unit();
        w[i] = alpha * u[i] + v[i];
      }
      const auto mu = op.apply(u), mv = op.apply(v), mw = op.apply(w);
      for (std::size_t i = 0; i < p; ++i) CHECK(std::abs(mw[i] - (alpha * mu[i] + mv[i])) <= 1e-10);
      CHECK(norm2(mv) <= norm2(v) + 1e-12);
    }
  }
}

TEST_CASE("op_norm examples") {
  SplitMix64 rng(12);
  for (u64 p : {3, 7, 101}) {
    const auto est = op_norm(averaged_operator(AffineGroup(p), GeneratorSet(random_maps(rng, p, 1))));
    CHECK(std::abs(est.value - 1.0) <= 1e-9);
    CHECK(est.converged);
  }
  const auto est = op_norm(averaged_operator(AffineGroup(3), GeneratorSet({m(1, 1), m(2, 0)})));
  CHECK(std::abs(est.value - 1.0) <= 1e-9);

  const AffineGroup g5(5);
  const auto whole = op_norm(averaged_operator(g5, GeneratorSet(g5.elements())));
  CHECK(whole.value <= 1e-9);
  CHECK(whole.converged);
}

TEST_CASE("op_norm matches dense SVD within 2 tol for p <= 50") {
  SplitMix64 rng(2024);
  const double tol = 1e-9;
  for (u64 p = 3; p <= 50; p += 2) {
    if (!is_prime(p)) continue;
    for (int trial = 0; trial < 12; ++trial) {
      const auto maps = random_maps(rng, p, 1 + rng.below(4));
      const double want = oracle::top_singular_value(oracle::averaged_matrix(to_pairs(maps), p));
      const auto est = op_norm(averaged_operator(AffineGroup(p), GeneratorSet(maps)), tol, 0);
      CHECK_MESSAGE(std::abs(est.value - want) <= 2 * tol, "p=" << p << " k=" << maps.size());
      CHECK(est.converged);
      CHECK(est.value <= 1.0 + 1e-9);
      CHECK(est.value <= want + 1e-12);  // the top Ritz value never overshoots
    }
  }
}

TEST_CASE("op_norm on a generic dense operator") {
  SplitMix64 rng(13);
  for (int n : {1, 2, 5, 40}) {
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = rng.symmetric_unit();
    const double want = oracle::top_singular_value(a);
    const auto est = op_norm(dense_op(a), 1e-10, 5);
    CHECK(std::abs(est.value - want) <= 2e-10 * std::max(1.0, want));
  }
}

TEST_CASE("op_norm single-vector mode and iteration cap") {
  SplitMix64 rng(14);
  const auto op = averaged_operator(AffineGroup(101), GeneratorSet(random_maps(rng, 101, 3)));
  PowerIterationOptions capped;
  capped.max_iterations = 2;
  capped.tol = 1e-14;
  const auto est = op_norm(op, capped);
  CHECK_FALSE(est.converged);
  CHECK(est.iterations == 2);

  PowerIterationOptions single;
  single.block_size = 1;
  single.extrapolate = false;
  const auto s = op_norm(op, single);
  CHECK(s.converged);
  CHECK(s.value <= op_norm(op).value + 1e-12);
}

TEST_CASE("op_norm is deterministic for a fixed seed") {
  SplitMix64 rng(15);
  const auto op = averaged_operator(AffineGroup(211), GeneratorSet(random_maps(rng, 211, 3)));
  const auto a = op_norm(op, 1e-9, 7), b = op_norm(op, 1e-9, 7);
  CHECK(a.value == b.value);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("op_norm rejects bad input") {
  const auto op = averaged_operator(AffineGroup(5), GeneratorSet({m(2, 0)}));
  CHECK_THROWS_AS(op_norm(op, 0.0, 0), InvalidArgument);
  CHECK_THROWS_AS(op_norm(op, -1.0, 0), InvalidArgument);
  const LinOp empty(0, [](auto, auto) {}, [](auto, auto) {});
  CHECK_THROWS_AS(op_norm(empty), InvalidArgument);
  PowerIterationOptions bad;
  bad.block_size = 0;
  CHECK_THROWS_AS(op_norm(op, bad), InvalidArgument);
}

TEST_CASE("rayleigh_quotient examples and lower-bound property") {
  const AffineGroup g3(3);
  const std::vector<double> v{1, -2, 1};
  CHECK(rayleigh_quotient(averaged_operator(g3, GeneratorSet({m(1, 0)})), v) == doctest::Approx(1.0));

  Eigen::MatrixXd rot(2, 2);
  rot << 0, -1, 1, 0;
  CHECK(rayleigh_quotient(dense_op(rot), std::vector<double>{1, 0}) == 0.0);
  CHECK_THROWS_AS(rayleigh_quotient(dense_op(rot), std::vector<double>{0, 0}), InvalidArgument);

  SplitMix64 rng(16);
  for (u64 p : {5, 31, 101}) {
    const auto op = averaged_operator(AffineGroup(p), GeneratorSet(random_maps(rng, p, 3)));
    const double top = op_norm(op).value;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> w(p);
      for (double& x : w) x = rng.symmetric_unit();
      CHECK(rayleigh_quotient(op, w) <= top + 1e-9);
    }
  }
}

TEST_CASE("rayleigh witness of the worked example") {
  const u64 p = 101;
  const auto x = FpSubset::from_elements(p, {0, 1, 2, 3, 4, 6});
  const std::vector<AffineMap> maps{m(2, 0), m(1, 2)};
  const auto v = meanzero_indicator(x);
  const double got = rayleigh_quotient(averaged_operator(AffineGroup(p), GeneratorSet(maps)), v);

  const Eigen::MatrixXd a = oracle::averaged_matrix(to_pairs(maps), p);
  const Eigen::Map<const Eigen::VectorXd> ev(v.data(), static_cast<Eigen::Index>(p));
  const double want = ev.dot(a * ev) / ev.squaredNorm();
  CHECK(got == doctest::Approx(want).epsilon(1e-13));
  // closed form 1 - avg_i |g_i X \ X| / (|X| (1 - |X|/p)); 2.X \ X = {8,12}, (2+X) \ X = {5,8}
  CHECK(got == doctest::Approx(1.0 - 2.0 / (6.0 * 95.0 / 101.0)).epsilon(1e-13));
  CHECK(got >= 1.0 - 4.0 * (2.0 / 6.0));
}

TEST_CASE("meanzero_indicator examples") {
  const auto v = meanzero_indicator(FpSubset::from_elements(3, {0}));
  CHECK(v[0] == doctest::Approx(2.0 / 3));
  CHECK(v[1] == doctest::Approx(-1.0 / 3));
  CHECK(v[2] == doctest::Approx(-1.0 / 3));
  const auto w = meanzero_indicator(FpSubset::from_elements(101, {0, 1, 2, 3, 4, 6}));
  double sum = 0, sq = 0;
  for (double x : w) {
    sum += x;
    sq += x * x;
  }
  CHECK(std::abs(sum) < 1e-12);
  CHECK(sq == doctest::Approx(6.0 * 95.0 / 101.0).epsilon(1e-14));
  CHECK_THROWS_AS(meanzero_indicator(FpSubset::full(7)), InvalidArgument);
  CHECK_THROWS_AS(meanzero_indicator(FpSubset(7)), InvalidArgument);
}

TEST_CASE("kron_matvec examples") {
  const std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8};
  const std::vector<Eigen::MatrixXd> ids(3, Eigen::MatrixXd::Identity(2, 2));
  CHECK(kron_matvec(ids, v) == v);

  Eigen::MatrixXd a(3, 3);
  a << 1, 2, 3, 4, 5, 6, 7, 8, 10;
  const std::vector<Eigen::MatrixXd> one{a};
  const auto got = kron_matvec(one, std::vector<double>{1, -1, 2});
  CHECK(got == std::vector<double>{5, 11, 19});

  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  const std::vector<Eigen::MatrixXd> two{swap, swap};
  // index i = 2 * b1 + b0; flipping both bits maps index i to 3 - i
  CHECK(kron_matvec(two, std::vector<double>{1, 2, 3, 4}) == std::vector<double>{4, 3, 2, 1});
}

TEST_CASE("kron_matvec matches the explicit Kronecker product") {
  SplitMix64 rng(17);
  for (int d : {2, 3}) {
    for (int n = 1; n <= 3; ++n) {
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<Eigen::MatrixXd> f;
        for (int i = 0; i < n; ++i) {
          Eigen::MatrixXd a(d, d);
          for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) a(r, c) = rng.symmetric_unit();
          f.push_back(a);
        }
        const Eigen::MatrixXd big = oracle::kronecker(f);
        std::vector<double> v(static_cast<std::size_t>(big.cols()));
        for (double& x : v) x = rng.symmetric_unit();
        const Eigen::VectorXd want = big * Eigen::Map<const Eigen::VectorXd>(v.data(), big.cols());
        const auto got = kron_matvec(f, v);
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(got[i] - want(static_cast<Eigen::Index>(i))) < 1e-13);
      }
    }
  }
}

TEST_CASE("kron_matvec rejects bad shapes and oversized products") {
  const std::vector<Eigen::MatrixXd> two(2, Eigen::MatrixXd::Identity(2, 2));
  CHECK_THROWS_AS(kron_matvec(two, std::vector<double>(3)), InvalidArgument);
  const std::vector<Eigen::MatrixXd> mixed{Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(3, 3)};
  CHECK_THROWS_AS(kron_matvec(mixed, std::vector<double>(6)), InvalidArgument);
  CHECK_THROWS_AS(kron_matvec({}, std::vector<double>(1)), InvalidArgument);
  const std::vector<Eigen::MatrixXd> many(25, Eigen::MatrixXd::Identity(2, 2));
  CHECK_THROWS_AS(kron_matvec(many, std::vector<double>(1)), ResourceLimit);
}

TEST_CASE("dense_spectral_norm") {
  Eigen::MatrixXd a(2, 2);
  a << 3, 0, 0, -4;
  CHECK(dense_spectral_norm(a) == doctest::Approx(4.0));
  CHECK(dense_spectral_norm(Eigen::MatrixXd()) == 0.0);
}
