#include "affres/resistance.hpp"

#include <algorithm>
#include <set>

#include "affres/errors.hpp"

namespace affres {

std::vector<FpElem> derive_A(const GeneratorSet& gens) {
  // a scale of 1 moves nothing, so only nontrivial scales and shifts enter A
  std::set<FpElem> values;
  for (const auto& g : gens) {
    if (g.a.value != 1) values.insert(g.a);
    if (g.b.value != 0) values.insert(g.b);
  }
  return {values.begin(), values.end()};
}

u64 shift_defect(const AffineGroup& group, const FpSubset& set, const AffineMap& g) {
  return difference_count(group.act_on_set(g, set), set);
}

namespace {

std::string advisory_for(const BigCount& bound, u64 admissible) {
  const BigCount twice = bound * BigCount(2);
  std::string text = twice.is_overflow() ? "p >= 2*size_bound (exceeds 2^128)" : "p >= " + twice.to_string();
  return text + "; at this p and epsilon the largest admissible |A| is " + std::to_string(admissible);
}

}  // namespace

u64 admissible_k(u64 p, const Epsilon& epsilon_target) {
  const u64 side = epsilon_target.divided_by(kRescale).side_length();
  const BigCount limit(p);
  u64 k = 0;
  while (size_bound(k + 1, side) * BigCount(2) <= limit) ++k;
  return k;
}

ResistanceReport resist_certificate(const AffineGroup& group, const GeneratorSet& gens, const Epsilon& epsilon_target,
                                    const CertificateOptions& options) {
  if (epsilon_target.num() >= epsilon_target.den())
    throw InvalidArgument("resist_certificate: epsilon_target must lie in (0, 1)");
  const u64 p = group.modulus();

  ResistanceReport report{gens,  epsilon_target, epsilon_target.divided_by(kRescale), derive_A(gens), false, {}, {}, {},
                          BigCount{}, admissible_k(p, epsilon_target), false, 0.0, 0.0, {}, false};

  if (std::all_of(gens.begin(), gens.end(), [](const AffineMap& g) { return g == AffineMap{}; })) {
    // the average is the identity on the mean-zero space
    report.trivial = true;
    report.half_condition = true;
    report.rayleigh_bound = 1.0;
    report.guaranteed_floor = 1.0;
    report.op_norm = NormEstimate{1.0, options.tol, 0, true};
    report.certified = true;
    return report;
  }

  const auto params = ConstructionParams::make(group.field(), std::span<const FpElem>(report.a_values),
                                               report.epsilon_internal);
  report.size_bound = size_bound(params);
  ConstructionResult built = [&] {
    try {
      return build_X(params, ConstructionOptions{options.resource_cap, options.jobs});
    } catch (const ResourceLimit& e) {
      throw NotCertifiable(std::string("not certifiable at p=") + std::to_string(p) + ": " + e.what(),
                           advisory_for(report.size_bound, report.admissible_k));
    }
  }();

  const FpSubset& X = built.X;
  report.half_condition = 2 * X.size() <= p;
  if (!report.half_condition) {
    throw NotCertifiable("not certifiable at p=" + std::to_string(p) + ": |X|=" + std::to_string(X.size()) +
                             " exceeds p/2",
                         advisory_for(report.size_bound, report.admissible_k));
  }

  for (const auto& g : gens) report.shift_defects.push_back(shift_defect(group, X, g));

  const LinOp op = averaged_operator(group, gens);
  report.rayleigh_bound = rayleigh_quotient(op, meanzero_indicator(X));
  report.guaranteed_floor =
      1.0 - 2.0 * report.epsilon_internal.value() / (1.0 - static_cast<double>(X.size()) / static_cast<double>(p));
  PowerIterationOptions power;
  power.tol = options.tol;
  power.seed = options.seed;
  power.block_size = options.block_size;
  power.extrapolate = options.extrapolate;
  report.op_norm = op_norm(op, power);
  report.certified = report.rayleigh_bound >= 1.0 - epsilon_target.value();
  report.defects = std::move(built.defects);
  report.X = X;
  return report;
}

ExpansionProfile expansion_profile(const AffineGroup& group, const GeneratorSet& gens, double tol,
                                   std::uint64_t seed) {
  ExpansionProfile profile;
  profile.p = group.modulus();
  profile.character_norms = character_norms(group, gens);
  profile.standard_norm = op_norm(averaged_operator(group, gens), tol, seed);
  profile.max_norm = profile.standard_norm.value;
  for (double c : profile.character_norms) profile.max_norm = std::max(profile.max_norm, c);
  profile.expansion_epsilon = 1.0 - profile.max_norm;
  return profile;
}

double irrep_norm(const ExpansionProfile& profile, const IrrepId& irrep) {
  if (irrep.kind == IrrepId::Kind::Standard) return profile.standard_norm.value;
  if (irrep.index == 0 || irrep.index > profile.character_norms.size())
    throw InvalidArgument("irrep_norm: character index out of range");
  return profile.character_norms[irrep.index - 1];
}

double regular_rep_crosscheck(const AffineGroup& group, const GeneratorSet& gens) {
  const u64 p = group.modulus();
  if (p > kMaxRegularRepModulus)
    throw ResourceLimit("regular_rep_crosscheck: p=" + std::to_string(p) + " exceeds " +
                        std::to_string(kMaxRegularRepModulus));
  const auto elems = group.elements();
  const auto n = static_cast<Eigen::Index>(elems.size());
  auto index_of = [p](const AffineMap& f) { return static_cast<Eigen::Index>((f.a.value - 1) * p + f.b.value); };

  // left multiplication e_h -> e_{g h}
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  const double w = 1.0 / static_cast<double>(gens.size());
  for (const auto& g : gens)
    for (const auto& h : elems) m(index_of(group.compose(g, h)), index_of(h)) += w;

  const Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  return dense_spectral_norm(centering * m * centering);
}

}  // namespace affres
