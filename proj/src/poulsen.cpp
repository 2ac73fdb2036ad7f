#include "vill/poulsen.hpp"

#include "vill/errors.hpp"

#include <algorithm>

namespace vill {

Apportionment quantize_measure(const Measure& measure, long count) {
  if (count < 1) throw shape_error("apportionment count must be >= 1");
  auto atoms = enumerate_atoms(measure);

  Apportionment out;
  out.total = count;
  long assigned = 0;
  std::vector<Rational> remainders;
  for (const auto& [word, mass] : atoms) {
    Rational scaled = mass * count;
    Int floor_part = numerator(scaled) / denominator(scaled);  // masses are >= 0
    long base = static_cast<long>(floor_part);
    out.counts.emplace_back(word, base);
    remainders.push_back(scaled - Rational(floor_part));
    assigned += base;
  }
  long leftover = count - assigned;
  // Largest remainder first; ties go to the earlier atom.
  std::vector<std::size_t> order(out.counts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  for (long give = 0; give < leftover; ++give) out.counts[order[static_cast<std::size_t>(give)]].second += 1;
  return out;
}

std::vector<Measure> expand_apportionment(const Apportionment& apportionment, int alphabet) {
  std::vector<Measure> out;
  out.reserve(static_cast<std::size_t>(apportionment.total));
  for (const auto& [word, count] : apportionment.counts)
    for (long c = 0; c < count; ++c) out.push_back(Measure::dirac(alphabet, word));
  return out;
}

std::size_t choose_depth(const DimensionSystem& sys, std::size_t base,
                         const std::vector<Int>& thresholds, std::size_t horizon) {
  if (static_cast<Eigen::Index>(thresholds.size()) != sys.j(base))
    throw shape_error("need one threshold per summand");
  for (std::size_t t = 1; t <= horizon; ++t) {
    if (!sys.level_exists(base + t)) break;
    IntMatrix composed = composed_multiplicity(sys, base, t);
    bool deep_enough = true;
    for (Eigen::Index k = 0; k < composed.rows() && deep_enough; ++k)
      for (Eigen::Index l = 0; l < composed.cols() && deep_enough; ++l)
        deep_enough = composed(k, l) > thresholds[static_cast<std::size_t>(k)];
    if (deep_enough) return t;
  }
  throw horizon_exceeded("no span within horizon " + std::to_string(horizon) +
                         " exceeds the quantization thresholds");
}

TraceTower build_eta(const DimensionSystem& sys, std::size_t base, std::size_t span,
                     const std::vector<std::vector<std::vector<Measure>>>& selections,
                     const AFTrace& af) {
  std::size_t top = base + span;
  if (af.depth() <= top) throw shape_error("AF trace too shallow for the chosen span");
  IntMatrix composed = composed_multiplicity(sys, base, span);
  IntVector n_src = sys.n(base);

  if (static_cast<Eigen::Index>(selections.size()) != composed.rows())
    throw shape_error("selections must cover every source summand");
  for (Eigen::Index k = 0; k < composed.rows(); ++k) {
    if (static_cast<Eigen::Index>(selections[static_cast<std::size_t>(k)].size()) != composed.cols())
      throw shape_error("selections must cover every target summand");
    for (Eigen::Index l = 0; l < composed.cols(); ++l) {
      const auto& cell = selections[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
      if (static_cast<long>(cell.size()) != static_cast<long>(composed(k, l)))
        throw shape_error("selection count != composed multiplicity at (" + std::to_string(k + 1) +
                          "," + std::to_string(l + 1) + ")");
      for (const auto& m : cell) {
        if (!m.is_point_mass()) throw shape_error("selections must be point masses");
        if (m.length() != static_cast<Eigen::Index>(static_cast<long>(n_src(k))))
          throw shape_error("selection word length mismatch");
      }
    }
  }

  auto layout = composed_block_layout(sys, base, span);
  std::vector<LevelTrace> levels;
  LevelTrace first;
  first.level = top;
  first.lambda = af.alpha[top];
  first.unconstrained.assign(layout.size(), false);
  for (std::size_t l = 0; l < layout.size(); ++l) {
    std::vector<Measure> factors;
    std::vector<std::size_t> used(selections.size(), 0);
    for (const auto& [k, offset] : layout[l]) {
      (void)offset;  // blocks arrive in coordinate order; offsets are implicit
      std::size_t idx = used[static_cast<std::size_t>(k)]++;
      factors.push_back(selections[static_cast<std::size_t>(k)][l][idx]);
    }
    first.measures.push_back(Measure::product(std::move(factors)));
  }
  check_level_trace(sys, first);
  levels.push_back(std::move(first));

  for (std::size_t i = top; i + 1 < af.depth(); ++i) {
    IntMatrix th = sys.theta(i);
    LevelTrace next;
    next.level = i + 1;
    next.lambda = af.alpha[i + 1];
    next.unconstrained.assign(static_cast<std::size_t>(th.cols()), false);
    for (Eigen::Index l = 0; l < th.cols(); ++l) {
      std::vector<Measure> factors;
      for (Eigen::Index k = 0; k < th.rows(); ++k)
        for (long m = 0; m < static_cast<long>(th(k, l)); ++m)
          factors.push_back(levels.back().measures[static_cast<std::size_t>(k)]);
      next.measures.push_back(Measure::product(std::move(factors)));
    }
    check_level_trace(sys, next);
    levels.push_back(std::move(next));
  }
  return TraceTower(top, std::move(levels));
}

namespace {

struct DeviationInputs {
  std::size_t base;
  std::size_t span;
  IntMatrix composed;
  IntVector n_src;
  IntVector n_dst;
  RatVector alpha_top;
};

GroupDeviation group_deviation(const DeviationInputs& in, const LevelTrace& tau_level,
                               const ObservableGroup& group,
                               const std::vector<std::vector<std::vector<Measure>>>& selections,
                               const std::vector<SummandPlan>* plans) {
  GroupDeviation dev;
  dev.name = group.name;
  dev.tau_value = evaluate(tau_level, group);

  Rational eta_value = 0;
  Rational triangle = 0;
  for (Eigen::Index k = 0; k < in.composed.rows(); ++k) {
    const Observable* obs = nullptr;
    if (static_cast<std::size_t>(k) < group.components.size() &&
        group.components[static_cast<std::size_t>(k)])
      obs = &*group.components[static_cast<std::size_t>(k)];
    Rational tau_k = obs ? integrate(tau_level.measures[static_cast<std::size_t>(k)], *obs)
                         : Rational(0);
    for (Eigen::Index l = 0; l < in.composed.cols(); ++l) {
      long theta = static_cast<long>(in.composed(k, l));
      if (theta == 0) continue;
      Rational weight = in.alpha_top(l) * Rational(in.n_src(k) * in.composed(k, l), in.n_dst(l));
      Rational avg = 0;
      if (obs) {
        Rational sum = 0;
        for (const auto& sel : selections[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)])
          sum += integrate(sel, *obs);
        avg = sum / theta;
        eta_value += in.alpha_top(l) * Rational(in.n_src(k), in.n_dst(l)) * sum;
      }
      DeviationCell cell;
      cell.k = k;
      cell.l = l;
      cell.weight = weight;
      cell.summand_error = rational_abs(tau_k - avg);
      if (plans) {
        const SummandPlan& plan = (*plans)[static_cast<std::size_t>(k)];
        cell.quantization_cap = plan.sup_bound * Rational(plan.support, Int(theta));
      }
      triangle += cell.weight * cell.summand_error;
      dev.cells.push_back(std::move(cell));
    }
  }
  dev.eta_value = eta_value;
  dev.deviation = rational_abs(dev.tau_value - eta_value);
  dev.triangle_bound = triangle;
  return dev;
}

}  // namespace

PoulsenCertificate certify(const DimensionSystem& sys, const TraceTower& tau,
                           const Neighborhood& nbhd, const AFTrace& af, std::size_t horizon,
                           std::optional<std::size_t> forced_span) {
  if (nbhd.epsilon <= 0) throw config_error("epsilon must be positive");
  std::size_t base = tau.base_level();
  const LevelTrace& tau_level = tau.at(base);
  check_level_trace(sys, tau_level);
  if (af.depth() <= base) throw shape_error("AF trace does not reach the tower base");
  auto af_report = validate_af_trace(sys, af);
  if (!af_report.ok())
    throw shape_error("inconsistent AF trace: " + af_report.violations[0].message);
  for (std::size_t level = tau.base_level(); level <= tau.top_level(); ++level) {
    if (af.depth() <= level) break;
    if (tau.at(level).lambda != af.alpha[level])
      throw shape_error("tau does not lie over the given AF trace");
  }

  PoulsenCertificate cert;
  cert.base_level = base;
  cert.epsilon = nbhd.epsilon;

  Eigen::Index j_base = sys.j(base);
  for (const auto& group : nbhd.groups)
    for (const auto& component : group.components)
      if (component) {
        if (component->summand < 0 || component->summand >= j_base)
          throw shape_error("observable summand out of range");
        if (component->length != static_cast<Eigen::Index>(static_cast<long>(sys.n(base)(component->summand))))
          throw shape_error("observable word length mismatch");
        if (observed_sup(*component) > component->sup_bound)
          throw shape_error("observable exceeds its sup bound");
      }

  // Per-summand quantization plan.
  std::vector<std::map<Word, Rational>> supports(static_cast<std::size_t>(j_base));
  for (Eigen::Index k = 0; k < j_base; ++k) {
    SummandPlan plan;
    plan.flagged = tau_level.lambda(k) == 0;
    if (plan.flagged) cert.flagged_summands.push_back(k);
    supports[static_cast<std::size_t>(k)] =
        enumerate_atoms(tau_level.measures[static_cast<std::size_t>(k)]);
    plan.support = Int(supports[static_cast<std::size_t>(k)].size());
    for (const auto& group : nbhd.groups)
      if (static_cast<std::size_t>(k) < group.components.size() &&
          group.components[static_cast<std::size_t>(k)]) {
        const Rational& bound = group.components[static_cast<std::size_t>(k)]->sup_bound;
        if (bound > plan.sup_bound) plan.sup_bound = bound;
      }
    plan.threshold = rational_ceil(plan.support * plan.sup_bound / nbhd.epsilon);
    cert.plans.push_back(std::move(plan));
  }

  std::size_t af_room = af.depth() - 1 - base;
  std::size_t effective_horizon = std::min(horizon, af_room);
  if (forced_span) {
    if (*forced_span > effective_horizon) throw horizon_exceeded("forced span beyond horizon");
    cert.span = *forced_span;
  } else {
    std::vector<Int> thresholds;
    for (const auto& plan : cert.plans) thresholds.push_back(plan.threshold);
    cert.span = choose_depth(sys, base, thresholds, effective_horizon);
  }

  // Quantize each summand trace into the composed multiplicities.
  IntMatrix composed = composed_multiplicity(sys, base, cert.span);
  std::vector<std::vector<std::vector<Measure>>> selections(static_cast<std::size_t>(j_base));
  cert.selections.resize(static_cast<std::size_t>(j_base));
  int alphabet = tau_level.measures[0].alphabet();
  for (Eigen::Index k = 0; k < j_base; ++k) {
    selections[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(composed.cols()));
    cert.selections[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(composed.cols()));
    for (Eigen::Index l = 0; l < composed.cols(); ++l) {
      if (composed(k, l) == 0) continue;  // possible under a forced span
      auto apportionment = quantize_measure(tau_level.measures[static_cast<std::size_t>(k)],
                                            static_cast<long>(composed(k, l)));
      auto expanded = expand_apportionment(apportionment, alphabet);
      for (const auto& sel : expanded)
        cert.selections[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)].push_back(
            sel.point_mass_atom());
      selections[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] = std::move(expanded);
    }
  }

  TraceTower eta = build_eta(sys, base, cert.span, selections, af);
  cert.eta_extreme = is_extreme_truncation(eta, base + cert.span);
  cert.eta_in_fiber = fiber_check(eta, af);

  DeviationInputs in{base, cert.span, composed, sys.n(base), sys.n(base + cert.span),
                     af.alpha[base + cert.span]};
  bool pass = cert.eta_extreme && cert.eta_in_fiber;
  for (const auto& group : nbhd.groups) {
    GroupDeviation dev = group_deviation(in, tau_level, group, selections, &cert.plans);
    pass = pass && dev.deviation < nbhd.epsilon;
    cert.deviations.push_back(std::move(dev));
  }
  cert.pass = pass;
  return cert;
}

std::vector<Rational> recheck_deviations(const DimensionSystem& sys, const TraceTower& tau,
                                         const Neighborhood& nbhd, const AFTrace& af,
                                         std::size_t base, std::size_t span,
                                         const std::vector<std::vector<std::vector<Word>>>& selections) {
  const LevelTrace& tau_level = tau.at(base);
  int alphabet = tau_level.measures[0].alphabet();
  std::vector<std::vector<std::vector<Measure>>> parsed(selections.size());
  for (std::size_t k = 0; k < selections.size(); ++k) {
    parsed[k].resize(selections[k].size());
    for (std::size_t l = 0; l < selections[k].size(); ++l)
      for (const auto& word : selections[k][l]) parsed[k][l].push_back(Measure::dirac(alphabet, word));
  }
  DeviationInputs in{base, span, composed_multiplicity(sys, base, span), sys.n(base),
                     sys.n(base + span), af.alpha[base + span]};
  std::vector<Rational> out;
  for (const auto& group : nbhd.groups)
    out.push_back(group_deviation(in, tau_level, group, parsed, nullptr).deviation);
  return out;
}

}  // namespace vill
