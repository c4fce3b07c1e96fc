#include "affres/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "affres/errors.hpp"
#include "affres/rng.hpp"

namespace affres {

namespace {

// Four interleaved partial sums in a fixed order: deterministic, and not
// bound by the latency of a single accumulator.
double dot(std::span<const double> x, std::span<const double> y) noexcept {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    s0 += x[i] * y[i];
    s1 += x[i + 1] * y[i + 1];
    s2 += x[i + 2] * y[i + 2];
    s3 += x[i + 3] * y[i + 3];
  }
  for (; i < x.size(); ++i) s0 += x[i] * y[i];
  return (s0 + s1) + (s2 + s3);
}

double sum(std::span<const double> x) noexcept {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    s0 += x[i];
    s1 += x[i + 1];
    s2 += x[i + 2];
    s3 += x[i + 3];
  }
  for (; i < x.size(); ++i) s0 += x[i];
  return (s0 + s1) + (s2 + s3);
}

constexpr std::size_t kBlockElementBudget = std::size_t{1} << 23;

// Modified Gram-Schmidt, applied twice. A column that loses almost all of
// its length to the projections is numerically dependent and is zeroed.
void orthonormalize(std::vector<std::vector<double>>& cols) {
  for (std::size_t c = 0; c < cols.size(); ++c) {
    auto& col = cols[c];
    const double before = std::sqrt(dot(col, col));
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t r = 0; r < c; ++r) {
        const double proj = dot(cols[r], col);
        for (std::size_t i = 0; i < col.size(); ++i) col[i] -= proj * cols[r][i];
      }
    }
    const double norm = std::sqrt(dot(col, col));
    if (norm > 1e-10 * before && norm > 0.0) {
      for (double& v : col) v /= norm;
    } else {
      std::fill(col.begin(), col.end(), 0.0);
    }
  }
}

void subtract_mean(std::span<double> v) noexcept {
  const double mean = sum(v) / static_cast<double>(v.size());
  for (double& x : v) x -= mean;
}

}  // namespace

LinOp::LinOp(std::size_t dim, Apply matvec, Apply adjoint_matvec)
    : dim_(dim), matvec_(std::move(matvec)), adjoint_(std::move(adjoint_matvec)) {}

void LinOp::apply(std::span<const double> v, std::span<double> out) const {
  if (v.size() != dim_ || out.size() != dim_) throw InvalidArgument("LinOp: dimension mismatch");
  matvec_(v, out);
}

void LinOp::apply_adjoint(std::span<const double> v, std::span<double> out) const {
  if (v.size() != dim_ || out.size() != dim_) throw InvalidArgument("LinOp: dimension mismatch");
  adjoint_(v, out);
}

std::vector<double> LinOp::apply(std::span<const double> v) const {
  std::vector<double> out(dim_);
  apply(v, out);
  return out;
}

std::vector<double> LinOp::apply_adjoint(std::span<const double> v) const {
  std::vector<double> out(dim_);
  apply_adjoint(v, out);
  return out;
}

NormEstimate op_norm(const LinOp& op, const PowerIterationOptions& options) {
  if (op.dim() == 0) throw InvalidArgument("op_norm: zero-dimensional operator");
  if (!(options.tol > 0.0)) throw InvalidArgument("op_norm: tolerance must be positive");
  if (options.block_size == 0) throw InvalidArgument("op_norm: block size must be positive");

  const std::size_t n = op.dim();
  // keep the three block buffers within about 192 MiB for very large operators
  const std::size_t b = std::min({options.block_size, n, std::max<std::size_t>(1, kBlockElementBudget / n)});
  std::vector<std::vector<double>> x(b, std::vector<double>(n));
  std::vector<std::vector<double>> y(b, std::vector<double>(n));
  std::vector<std::vector<double>> z(b, std::vector<double>(n));

  SplitMix64 rng(options.seed);
  for (auto& col : x)
    for (double& xi : col) xi = rng.symmetric_unit();
  orthonormalize(x);

  NormEstimate est;
  est.tolerance = options.tol;
  // theta_t, the top Ritz value of M*M on span(x), increases to sigma_max^2
  // with increments shrinking by a factor rho per step, so the remaining
  // error is about delta * rho / (1 - rho). Stop once that is within tol.
  double theta = -1.0;
  double prev_delta = -1.0;
  std::array<double, 32> ratios{};  // recent delta_t / delta_{t-1}; the worst one is used
  std::size_t seen = 0;
  Eigen::MatrixXd h(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b));
  for (std::uint64_t it = 1; it <= options.max_iterations; ++it) {
    for (std::size_t c = 0; c < b; ++c) op.apply(x[c], y[c]);
    for (std::size_t r = 0; r < b; ++r)
      for (std::size_t c = r; c < b; ++c) h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          h(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(r)) = dot(y[r], y[c]);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
    // eigenvalues ascending; the last one is the top Ritz value
    const double next = std::max(eig.eigenvalues()(static_cast<Eigen::Index>(b) - 1), 0.0);
    est.value = std::sqrt(next);
    est.iterations = it;
    if (theta >= 0.0) {
      const double delta = std::abs(next - theta);
      const double budget = options.tol * std::max(next, 1e-3);
      if (delta <= budget) {
        const double rho = seen < ratios.size() ? 1.0 : *std::max_element(ratios.begin(), ratios.end());
        // changes at rounding level carry no information about the remaining error
        const double noise = 64.0 * std::numeric_limits<double>::epsilon() * std::max(next, 1e-3);
        if (!options.extrapolate || delta <= noise || next == 0.0 ||
            (rho < 1.0 && delta * rho <= budget * (1.0 - rho))) {
          est.converged = true;
          return est;
        }
      }
      if (prev_delta > 0.0) ratios[seen++ % ratios.size()] = delta / prev_delta;
      prev_delta = delta;
    }
    theta = next;
    if (next == 0.0) {
      // M vanishes on the current block; one more round confirms it
      est.converged = it > 1;
      if (est.converged) return est;
    }

    // x <- orth(M*M x W), W the Ritz vectors ordered by decreasing Ritz value
    for (std::size_t c = 0; c < b; ++c) op.apply_adjoint(y[c], z[c]);
    const Eigen::MatrixXd& w = eig.eigenvectors();
    for (std::size_t c = 0; c < b; ++c) {
      const auto wc = static_cast<Eigen::Index>(b - 1 - c);
      std::fill(x[c].begin(), x[c].end(), 0.0);
      for (std::size_t r = 0; r < b; ++r) {
        const double coef = w(static_cast<Eigen::Index>(r), wc);
        for (std::size_t i = 0; i < n; ++i) x[c][i] += coef * z[r][i];
      }
    }
    orthonormalize(x);
  }
  return est;
}

NormEstimate op_norm(const LinOp& op, double tol, std::uint64_t seed) {
  PowerIterationOptions options;
  options.tol = tol;
  options.seed = seed;
  return op_norm(op, options);
}

namespace {

// Calls body(x, y, len, stride) over runs where y = f(x) does not wrap:
// f(x + i) = y + i * stride for i < len. Large scales wrap every few steps,
// so they are walked one element at a time instead.
template <class Body>
void for_each_run(u64 p, const AffineMap& f, Body&& body) {
  const u64 a = f.a.value;
  u64 x = 0;
  u64 y = f.b.value;
  if (a > 64) {
    for (; x < p; ++x) {
      body(x, y, 1, a);
      y += a;
      if (y >= p) y -= p;
    }
    return;
  }
  while (x < p) {
    const u64 len = std::min(p - x, (p - y + a - 1) / a);
    body(x, y, len, a);
    x += len;
    y = (y + len * a) % p;
  }
}

}  // namespace

LinOp averaged_operator(const AffineGroup& group, const GeneratorSet& gens) {
  const u64 p = group.modulus();
  std::vector<AffineMap> maps(gens.begin(), gens.end());
  const double inv_k = 1.0 / static_cast<double>(maps.size());

  // Every rho(g) commutes with the mean-zero projection P, so
  // P (1/k) sum rho(g_i) P = P (1/k) sum rho(g_i) and one centering suffices.
  auto forward = [p, maps, inv_k](std::span<const double> v, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    double* o = out.data();
    const double* in = v.data();
    for (const auto& f : maps) {
      for_each_run(p, f, [&](u64 x, u64 y, u64 len, u64 stride) {
        if (stride == 1) {
          for (u64 i = 0; i < len; ++i) o[y + i] += in[x + i];
        } else {
          for (u64 i = 0; i < len; ++i) o[y + i * stride] += in[x + i];
        }
      });
    }
    for (double& e : out) e *= inv_k;
    subtract_mean(out);
  };
  // rho(f)^T = rho(f^{-1}): (rho(f)^T v)[x] = v[f(x)].
  auto adjoint = [p, maps, inv_k](std::span<const double> v, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    double* o = out.data();
    const double* in = v.data();
    for (const auto& f : maps) {
      for_each_run(p, f, [&](u64 x, u64 y, u64 len, u64 stride) {
        if (stride == 1) {
          for (u64 i = 0; i < len; ++i) o[x + i] += in[y + i];
        } else {
          for (u64 i = 0; i < len; ++i) o[x + i] += in[y + i * stride];
        }
      });
    }
    for (double& e : out) e *= inv_k;
    subtract_mean(out);
  };
  return LinOp(p, forward, adjoint);
}

double rayleigh_quotient(const LinOp& op, std::span<const double> v) {
  const double vv = dot(v, v);
  if (vv == 0.0) throw InvalidArgument("rayleigh_quotient: zero vector");
  const auto mv = op.apply(v);
  return dot(mv, v) / vv;
}

std::vector<double> meanzero_indicator(const FpSubset& set) {
  const u64 p = set.modulus();
  if (set.empty() || set.size() == p)
    throw InvalidArgument("meanzero_indicator: set must be nonempty and proper");
  const double c = static_cast<double>(set.size()) / static_cast<double>(p);
  std::vector<double> v(p, -c);
  set.for_each([&](u64 x) { v[x] = 1.0 - c; });
  return v;
}

std::vector<double> kron_matvec(std::span<const Eigen::MatrixXd> factors, std::span<const double> v) {
  if (factors.empty()) throw InvalidArgument("kron_matvec: no factors");
  const auto d = static_cast<std::size_t>(factors.front().rows());
  if (d == 0) throw InvalidArgument("kron_matvec: empty factor");
  std::size_t total = 1;
  for (const auto& f : factors) {
    if (static_cast<std::size_t>(f.rows()) != d || static_cast<std::size_t>(f.cols()) != d)
      throw InvalidArgument("kron_matvec: factors must all be d x d");
    if (total > kMaxKronDim / d) throw ResourceLimit("kron_matvec: d^n exceeds 2^24");
    total *= d;
  }
  if (v.size() != total) throw InvalidArgument("kron_matvec: vector length must be d^n");

  std::vector<double> cur(v.begin(), v.end());
  std::vector<double> next(total);
  // factor m acts on the digit with stride d^(n-1-m)
  std::size_t stride = total;
  for (const auto& f : factors) {
    stride /= d;
    const std::size_t block = stride * d;
    for (std::size_t hi = 0; hi < total; hi += block) {
      for (std::size_t lo = 0; lo < stride; ++lo) {
        const std::size_t base = hi + lo;
        for (std::size_t r = 0; r < d; ++r) {
          double s = 0.0;
          for (std::size_t c = 0; c < d; ++c) s += f(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * cur[base + c * stride];
          next[base + r * stride] = s;
        }
      }
    }
    std::swap(cur, next);
  }
  return cur;
}

double dense_spectral_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace affres
