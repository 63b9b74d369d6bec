#include "confound/discrete_model.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "confound/error.hpp"

namespace confound {

// ---------------------------------------------------------------- table

ProbabilityTable::ProbabilityTable(std::vector<std::string> labels, std::vector<std::size_t> cardinalities)
    : labels_(std::move(labels)), cards_(std::move(cardinalities)) {
  strides_.assign(cards_.size(), 1);
  std::size_t cells = 1;
  for (std::size_t i = cards_.size(); i-- > 0;) {
    strides_[i] = cells;
    if (cards_[i] == 0) throw Error(ErrorKind::InvalidModel, "variable with an empty state space");
    if (cells > kMaxJointCells / cards_[i])
      throw Error(ErrorKind::SizeLimit, "probability table exceeds " + std::to_string(kMaxJointCells) + " cells");
    cells *= cards_[i];
  }
  probs_.assign(cells, Rational(0));
}

std::size_t ProbabilityTable::cell_of(std::span<const std::size_t> states) const {
  std::size_t cell = 0;
  for (std::size_t i = 0; i < cards_.size(); ++i) cell += states[i] * strides_[i];
  return cell;
}

void ProbabilityTable::states_of(std::size_t cell, std::vector<std::size_t>& states) const {
  states.resize(cards_.size());
  for (std::size_t i = 0; i < cards_.size(); ++i) {
    states[i] = cell / strides_[i];
    cell %= strides_[i];
  }
}

Rational ProbabilityTable::total() const {
  Rational sum = 0;
  for (const auto& p : probs_) sum += p;
  return sum;
}

ProbabilityTable ProbabilityTable::marginal(std::span<const std::size_t> keep) const {
  std::vector<std::string> labels;
  std::vector<std::size_t> cards;
  for (std::size_t k : keep) {
    labels.push_back(labels_.at(k));
    cards.push_back(cards_.at(k));
  }
  ProbabilityTable out(std::move(labels), std::move(cards));
  std::vector<std::size_t> mapped_stride(arity(), 0);
  for (std::size_t j = 0; j < keep.size(); ++j) mapped_stride[keep[j]] += out.strides_[j];
  // walk the cells with an odometer so the target index updates incrementally
  std::vector<std::size_t> states(arity(), 0);
  std::size_t target = 0;
  for (std::size_t cell = 0; cell < probs_.size(); ++cell) {
    if (probs_[cell] != 0) out.probs_[target] += probs_[cell];
    for (std::size_t i = arity(); i-- > 0;) {
      ++states[i];
      target += mapped_stride[i];
      if (states[i] < cards_[i]) break;
      target -= mapped_stride[i] * states[i];
      states[i] = 0;
    }
  }
  return out;
}

bool ProbabilityTable::independent(std::span<const std::size_t> a, std::span<const std::size_t> b,
                                   std::span<const std::size_t> z) const {
  if (a.empty() || b.empty()) return true;
  std::vector<std::size_t> keep;
  keep.insert(keep.end(), a.begin(), a.end());
  keep.insert(keep.end(), b.begin(), b.end());
  keep.insert(keep.end(), z.begin(), z.end());
  const ProbabilityTable abz = marginal(keep);
  const std::size_t na = a.size(), nb = b.size(), nz = z.size();
  std::vector<std::size_t> a_z, b_z, only_z;
  for (std::size_t i = 0; i < na; ++i) a_z.push_back(i);
  for (std::size_t i = 0; i < nz; ++i) a_z.push_back(na + nb + i);
  for (std::size_t i = 0; i < nb; ++i) b_z.push_back(na + i);
  for (std::size_t i = 0; i < nz; ++i) b_z.push_back(na + nb + i);
  for (std::size_t i = 0; i < nz; ++i) only_z.push_back(na + nb + i);
  const ProbabilityTable paz = abz.marginal(a_z), pbz = abz.marginal(b_z), pz = abz.marginal(only_z);

  std::vector<std::size_t> st, sa, sb, sz;
  for (std::size_t cell = 0; cell < abz.cells(); ++cell) {
    abz.states_of(cell, st);
    sa.assign(st.begin(), st.begin() + static_cast<std::ptrdiff_t>(na));
    sa.insert(sa.end(), st.begin() + static_cast<std::ptrdiff_t>(na + nb), st.end());
    sb.assign(st.begin() + static_cast<std::ptrdiff_t>(na), st.end());
    sz.assign(st.begin() + static_cast<std::ptrdiff_t>(na + nb), st.end());
    if (abz[cell] * pz[pz.cell_of(sz)] != paz[paz.cell_of(sa)] * pbz[pbz.cell_of(sb)]) return false;
  }
  return true;
}

// ---------------------------------------------------------------- model

namespace {

std::size_t parent_config(const Cpt& cpt, const std::vector<std::vector<std::string>>& states,
                          std::span<const std::size_t> full) {
  std::size_t idx = 0;
  for (NodeIndex p : cpt.parent_order) idx = idx * states[p].size() + full[p];
  return idx;
}

}  // namespace

DiscreteModel::DiscreteModel(Dag dag, std::vector<std::vector<std::string>> states, std::vector<Cpt> cpts)
    : dag_(std::move(dag)), states_(std::move(states)) {
  const std::size_t n = dag_.size();
  if (states_.size() != n) throw Error(ErrorKind::InvalidModel, "state spaces must cover every node");
  values_.resize(n);
  for (NodeIndex v = 0; v < n; ++v) {
    if (states_[v].empty())
      throw Error(ErrorKind::InvalidModel, "node '" + dag_.name(v) + "' has no states");
    std::vector<std::string> sorted = states_[v];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorKind::InvalidModel, "node '" + dag_.name(v) + "' repeats a state label");
    for (const auto& label : states_[v]) {
      try {
        values_[v].emplace_back(parse_rational(label));
      } catch (const Error&) {
        values_[v].emplace_back(std::nullopt);
      }
    }
  }

  cpts_.resize(n);
  std::vector<bool> seen(n, false);
  for (Cpt& c : cpts) {
    if (c.node >= n) throw Error(ErrorKind::InvalidModel, "CPT for an unknown node");
    if (seen[c.node]) throw Error(ErrorKind::InvalidModel, "two CPTs for '" + dag_.name(c.node) + "'");
    seen[c.node] = true;
    const std::string& who = dag_.name(c.node);
    NodeSet given = NodeSet::from(c.parent_order);
    if (given.size() != c.parent_order.size() || given != dag_.parents(c.node))
      throw Error(ErrorKind::InvalidModel, "CPT parents of '" + who + "' do not match the graph parents " +
                                               dag_.format_set(dag_.parents(c.node)));
    std::size_t configs = 1;
    for (NodeIndex p : c.parent_order) configs *= states_[p].size();
    if (c.rows.size() != configs)
      throw Error(ErrorKind::InvalidModel, "CPT of '" + who + "' must have " + std::to_string(configs) + " rows");
    for (const auto& row : c.rows) {
      if (row.size() != states_[c.node].size())
        throw Error(ErrorKind::InvalidModel, "CPT row of '" + who + "' has the wrong number of entries");
      Rational sum = 0;
      for (const auto& p : row) {
        if (p < 0) throw Error(ErrorKind::InvalidModel, "negative probability in CPT of '" + who + "'");
        sum += p;
      }
      if (sum != 1)
        throw Error(ErrorKind::InvalidModel,
                    "CPT row of '" + who + "' sums to " + to_exact_string(sum) + ", not 1");
    }
    cpts_[c.node] = std::move(c);
  }
  for (NodeIndex v = 0; v < n; ++v)
    if (!seen[v]) throw Error(ErrorKind::InvalidModel, "missing CPT for '" + dag_.name(v) + "'");

  std::vector<std::size_t> cards;
  for (const auto& s : states_) cards.push_back(s.size());
  auto joint = std::make_shared<ProbabilityTable>(dag_.names(), cards);
  std::vector<std::size_t> full;
  for (std::size_t cell = 0; cell < joint->cells(); ++cell) {
    joint->states_of(cell, full);
    Rational p = 1;
    for (NodeIndex v = 0; v < n && p != 0; ++v) p *= cpt_entry(v, full[v], full);
    (*joint)[cell] = p;
  }
  joint_ = std::move(joint);
}

std::size_t DiscreteModel::state_index(NodeIndex node, std::string_view label) const {
  const auto& s = states_.at(node);
  auto it = std::find(s.begin(), s.end(), label);
  if (it == s.end())
    throw Error(ErrorKind::UnknownState,
                "'" + std::string(label) + "' is not a state of '" + dag_.name(node) + "'");
  return static_cast<std::size_t>(it - s.begin());
}

const Rational& DiscreteModel::cpt_entry(NodeIndex node, std::size_t state, std::span<const std::size_t> full) const {
  const Cpt& c = cpts_[node];
  return c.rows[parent_config(c, states_, full)][state];
}

Assignment DiscreteModel::assignment(
    std::initializer_list<std::pair<std::string_view, std::string_view>> items) const {
  Assignment a;
  for (auto [node, label] : items) {
    NodeIndex v = dag_.index(node);
    a[v] = state_index(v, label);
  }
  return a;
}

// ---------------------------------------------------------------- queries

namespace {

void check_assignment(const DiscreteModel& model, const Assignment& a) {
  for (auto [v, s] : a) {
    if (v >= model.dag().size()) throw Error(ErrorKind::UnknownNode, "assignment names an unknown node");
    if (s >= model.cardinality(v))
      throw Error(ErrorKind::UnknownState, "state index out of range for '" + model.dag().name(v) + "'");
  }
}

bool consistent(const std::vector<std::size_t>& full, const Assignment& partial) {
  for (auto [v, s] : partial)
    if (full[v] != s) return false;
  return true;
}

const Rational& numeric(const DiscreteModel& model, NodeIndex node, std::size_t state) {
  const auto& v = model.numeric_value(node, state);
  if (!v)
    throw Error(ErrorKind::NonNumericState,
                "state '" + model.states(node)[state] + "' of '" + model.dag().name(node) + "' is not numeric");
  return *v;
}

std::vector<std::size_t> indices(NodeSet s) { return s.to_vector(); }

}  // namespace

Rational joint_probability(const DiscreteModel& model, const Assignment& full) {
  check_assignment(model, full);
  if (full.size() != model.dag().size())
    throw Error(ErrorKind::IncompleteAssignment, "joint probability needs every node assigned");
  std::vector<std::size_t> states(model.dag().size());
  for (auto [v, s] : full) states[v] = s;
  Rational p = 1;
  for (NodeIndex v = 0; v < states.size(); ++v) p *= model.cpt_entry(v, states[v], states);
  return p;
}

Rational probability(const DiscreteModel& model, const Assignment& partial) {
  check_assignment(model, partial);
  const ProbabilityTable& joint = model.joint();
  Rational sum = 0;
  std::vector<std::size_t> full;
  for (std::size_t cell = 0; cell < joint.cells(); ++cell) {
    if (joint[cell] == 0) continue;
    joint.states_of(cell, full);
    if (consistent(full, partial)) sum += joint[cell];
  }
  return sum;
}

Rational cond_expectation(const DiscreteModel& model, NodeIndex target, const Assignment& given) {
  check_assignment(model, given);
  if (target >= model.dag().size()) throw Error(ErrorKind::UnknownNode, "unknown target node");
  const ProbabilityTable& joint = model.joint();
  Rational mass = 0, weighted = 0;
  std::vector<std::size_t> full;
  for (std::size_t cell = 0; cell < joint.cells(); ++cell) {
    if (joint[cell] == 0) continue;
    joint.states_of(cell, full);
    if (!consistent(full, given)) continue;
    mass += joint[cell];
    weighted += joint[cell] * numeric(model, target, full[target]);
  }
  if (mass == 0)
    throw Error(ErrorKind::ZeroProbabilityCondition,
                "conditioning event " + format_assignment(model, given) + " has probability 0");
  return weighted / mass;
}

DiscreteModel intervene(const DiscreteModel& model, NodeIndex node, std::size_t state) {
  const Dag& dag = model.dag();
  if (node >= dag.size()) throw Error(ErrorKind::UnknownNode, "unknown node");
  if (state >= model.cardinality(node))
    throw Error(ErrorKind::UnknownState, "state index out of range for '" + dag.name(node) + "'");
  std::vector<std::vector<std::string>> states;
  std::vector<Cpt> cpts;
  for (NodeIndex v = 0; v < dag.size(); ++v) {
    states.push_back(model.states(v));
    if (v == node) {
      Cpt point{node, {}, {std::vector<Rational>(model.cardinality(node), Rational(0))}};
      point.rows[0][state] = 1;
      cpts.push_back(std::move(point));
    } else {
      cpts.push_back(model.cpt(v));
    }
  }
  return DiscreteModel(dag.with_graph(remove_into(dag, node)), std::move(states), std::move(cpts));
}

std::size_t exposure_state(const DiscreteModel& model, int value) {
  const NodeIndex a = model.dag().exposure();
  bool has0 = false, has1 = false;
  std::size_t idx = 0;
  if (model.cardinality(a) == 2) {
    for (std::size_t s = 0; s < 2; ++s) {
      const auto& v = model.numeric_value(a, s);
      if (!v) continue;
      if (*v == 0) has0 = true;
      if (*v == 1) has1 = true;
      if (*v == value) idx = s;
    }
  }
  if (!has0 || !has1)
    throw Error(ErrorKind::NonBinaryExposure, "exposure '" + model.dag().name(a) + "' must have states 0 and 1");
  return idx;
}

Rational interventional_mean(const DiscreteModel& model, int value) {
  const NodeIndex a = model.dag().exposure();
  return cond_expectation(intervene(model, a, exposure_state(model, value)), model.dag().outcome());
}

Rational ace(const DiscreteModel& model) { return interventional_mean(model, 1) - interventional_mean(model, 0); }

Rational standardized_rd(const DiscreteModel& model, NodeSet x) {
  const Dag& dag = model.dag();
  const NodeIndex a = dag.exposure(), y = dag.outcome();
  if (!x.is_subset_of(dag.all())) throw Error(ErrorKind::UnknownNode, "adjustment set names unknown nodes");
  if (x.contains(a) || x.contains(y))
    throw Error(ErrorKind::NotACovariate, "adjustment set may not contain the exposure or outcome");
  const std::size_t s0 = exposure_state(model, 0), s1 = exposure_state(model, 1);

  std::vector<std::size_t> keep{a, y};
  const std::vector<std::size_t> xs = indices(x);
  keep.insert(keep.end(), xs.begin(), xs.end());
  const ProbabilityTable ayx = model.joint().marginal(keep);
  std::vector<std::size_t> ax_slots{0}, x_slots;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ax_slots.push_back(2 + i);
    x_slots.push_back(2 + i);
  }
  const ProbabilityTable px = ayx.marginal(x_slots), pax = ayx.marginal(ax_slots);

  Rational total = 0;
  std::vector<std::size_t> xstate, cell_states;
  for (std::size_t cell = 0; cell < px.cells(); ++cell) {
    if (px[cell] == 0) continue;
    px.states_of(cell, xstate);
    Rational mean[2];
    for (int arm = 0; arm < 2; ++arm) {
      const std::size_t as = arm == 0 ? s0 : s1;
      cell_states.assign(1, as);
      cell_states.insert(cell_states.end(), xstate.begin(), xstate.end());
      const Rational& mass = pax[pax.cell_of(cell_states)];
      if (mass == 0) {
        Assignment stratum;
        for (std::size_t i = 0; i < xs.size(); ++i) stratum[xs[i]] = xstate[i];
        throw Error(ErrorKind::PositivityViolation,
                    "positivity violated: P(" + dag.name(a) + "=" + model.states(a)[as] +
                        (xs.empty() ? std::string() : ", " + format_assignment(model, stratum)) + ") = 0");
      }
      Rational weighted = 0;
      for (std::size_t ys = 0; ys < model.cardinality(y); ++ys) {
        cell_states.assign({as, ys});
        cell_states.insert(cell_states.end(), xstate.begin(), xstate.end());
        const Rational& p = ayx[ayx.cell_of(cell_states)];
        if (p != 0) weighted += p * numeric(model, y, ys);
      }
      mean[arm] = weighted / mass;
    }
    total += (mean[1] - mean[0]) * px[cell];
  }
  return total;
}

Rational bias(const DiscreteModel& model, NodeSet x) { return standardized_rd(model, x) - ace(model); }

bool ci_test(const DiscreteModel& model, NodeSet a, NodeSet b, NodeSet z) {
  if (!(a | b | z).is_subset_of(model.dag().all()))
    throw Error(ErrorKind::UnknownNode, "independence query names unknown nodes");
  if (a.intersects(b) || a.intersects(z) || b.intersects(z))
    throw Error(ErrorKind::OverlappingSets, "independence query sets must be pairwise disjoint");
  const auto ia = indices(a), ib = indices(b), iz = indices(z);
  return model.joint().independent(ia, ib, iz);
}

std::vector<std::size_t> CounterfactualJoint::slots_of(NodeSet s) const {
  std::vector<std::size_t> out;
  for (NodeIndex v : s) {
    auto it = std::find(covariates.begin(), covariates.end(), v);
    if (it == covariates.end())
      throw Error(ErrorKind::NotACovariate, "not a nondescendant covariate of the exposure");
    out.push_back(2 + static_cast<std::size_t>(it - covariates.begin()));
  }
  return out;
}

CounterfactualJoint cf_joint(const DiscreteModel& model, int exposure_value) {
  const Dag& dag = model.dag();
  const NodeIndex a = dag.exposure(), y = dag.outcome();
  const std::size_t a_state = exposure_state(model, exposure_value);
  const DiscreteModel treated = intervene(model, a, a_state);

  CounterfactualJoint out;
  out.exposure_value = exposure_value;
  out.covariates = dag.nondescendant_covariates().to_vector();

  // P(Y = y, W = w) under do(A = a); W is unaffected by the intervention
  std::vector<std::size_t> keep{y};
  keep.insert(keep.end(), out.covariates.begin(), out.covariates.end());
  const ProbabilityTable do_yw = treated.joint().marginal(keep);

  std::vector<std::string> labels{dag.name(y) + "_" + std::to_string(exposure_value), dag.name(a)};
  std::vector<std::size_t> cards{model.cardinality(y), model.cardinality(a)};
  for (NodeIndex w : out.covariates) {
    labels.push_back(dag.name(w));
    cards.push_back(model.cardinality(w));
  }
  out.table = ProbabilityTable(std::move(labels), std::move(cards));

  // the exposure's parents are among W, or are the outcome itself when the
  // outcome is a nondescendant (then Y_a = Y)
  std::vector<std::size_t> yw, full(dag.size(), 0), cell_states;
  for (std::size_t cell = 0; cell < do_yw.cells(); ++cell) {
    if (do_yw[cell] == 0) continue;
    do_yw.states_of(cell, yw);
    full[y] = yw[0];
    for (std::size_t i = 0; i < out.covariates.size(); ++i) full[out.covariates[i]] = yw[1 + i];
    for (std::size_t as = 0; as < model.cardinality(a); ++as) {
      cell_states.assign({yw[0], as});
      cell_states.insert(cell_states.end(), yw.begin() + 1, yw.end());
      out.table[out.table.cell_of(cell_states)] = do_yw[cell] * model.cpt_entry(a, as, full);
    }
  }
  return out;
}

bool cf_unconfounded(const CounterfactualJoint& a0, const CounterfactualJoint& a1, NodeSet s) {
  const std::vector<std::size_t> ya{0}, ax{1};
  return a0.table.independent(ya, ax, a0.slots_of(s)) && a1.table.independent(ya, ax, a1.slots_of(s));
}

bool cf_unconfounded(const DiscreteModel& model, NodeSet s) {
  if (!s.is_subset_of(model.dag().covariate_pool()))
    throw Error(ErrorKind::NonCovariateInSet,
                model.dag().format_set(s - model.dag().covariate_pool()) + " not in the covariate pool");
  return cf_unconfounded(cf_joint(model, 0), cf_joint(model, 1), s);
}

std::string format_assignment(const DiscreteModel& model, const Assignment& a) {
  std::vector<std::pair<std::string, std::string>> parts;
  for (auto [v, s] : a) parts.emplace_back(model.dag().name(v), model.states(v).at(s));
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& [n, s] : parts) {
    if (!out.empty()) out += ',';
    out += n + "=" + s;
  }
  return out.empty() ? "{}" : out;
}

}  // namespace confound
