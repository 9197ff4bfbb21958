#include "stackrl/reinforce/reward.h"

#include <algorithm>
#include <cmath>

#include "stackrl/errors.h"

namespace stackrl::reinforce {

RewardKind parse_reward_kind(std::string_view name) {
  if (name == "piecewise_range") return RewardKind::kPiecewiseRange;
  if (name == "exp_max") return RewardKind::kExpMax;
  if (name == "exp_min") return RewardKind::kExpMin;
  if (name == "struct_count_exp") return RewardKind::kStructCountExp;
  throw DataError("unknown reward kind '" + std::string(name) + "'");
}

std::string_view reward_kind_name(RewardKind kind) {
  switch (kind) {
    case RewardKind::kPiecewiseRange: return "piecewise_range";
    case RewardKind::kExpMax: return "exp_max";
    case RewardKind::kExpMin: return "exp_min";
    case RewardKind::kStructCountExp: return "struct_count_exp";
  }
  return "unknown";
}

InvalidPolicy parse_invalid_policy(std::string_view name) {
  if (name == "score_anyway") return InvalidPolicy::kScoreAnyway;
  if (name == "fixed_penalty") return InvalidPolicy::kFixedPenalty;
  throw DataError("unknown invalid policy '" + std::string(name) + "'");
}

std::string_view invalid_policy_name(InvalidPolicy policy) {
  return policy == InvalidPolicy::kScoreAnyway ? "score_anyway" : "fixed_penalty";
}

void RewardSpec::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(lo) || !finite(hi) || !finite(plateau) || !finite(slope_below) || !finite(slope_above) ||
      !finite(floor) || !finite(base) || !finite(scale) || !finite(penalty) || std::isnan(cap)) {
    throw DataError("reward: parameters must be finite");
  }
  if (kind == RewardKind::kPiecewiseRange && !(lo < hi)) throw DataError("reward: piecewise_range needs lo < hi");
  if (kind != RewardKind::kPiecewiseRange && !(base > 1.0)) throw DataError("reward: exponential base must exceed 1");
  if (!(cap > 0.0) || std::isinf(cap)) throw DataError("reward: cap must be positive and finite");
}

void RewardSpec::write(io::KeyValueConfig& c) const {
  c.set("reward.kind", std::string(reward_kind_name(kind)));
  c.set("reward.source", uses_predictor() ? "predictor" : std::string(chem::feature_name(feature)));
  if (uses_predictor()) c.set("reward.predictor", predictor_path);
  c.set("reward.lo", io::format_double(lo));
  c.set("reward.hi", io::format_double(hi));
  c.set("reward.plateau", io::format_double(plateau));
  c.set("reward.slope_below", io::format_double(slope_below));
  c.set("reward.slope_above", io::format_double(slope_above));
  c.set("reward.floor", io::format_double(floor));
  c.set("reward.base", io::format_double(base));
  c.set("reward.scale", io::format_double(scale));
  c.set("reward.cap", io::format_double(cap));
  c.set("reward.invalid_policy", std::string(invalid_policy_name(invalid_policy)));
  c.set("reward.penalty", io::format_double(penalty));
}

RewardSpec RewardSpec::read(const io::KeyValueConfig& c) {
  RewardSpec s;
  s.kind = parse_reward_kind(c.get_string("reward.kind", reward_kind_name(s.kind)));
  const std::string source = c.get_string("reward.source", chem::feature_name(s.feature));
  if (source == "predictor") {
    s.predictor_path = c.get_string("reward.predictor", "");
    if (s.predictor_path.empty()) throw DataError("reward.source = predictor needs reward.predictor");
  } else {
    s.feature = chem::parse_feature(source);
  }
  s.lo = c.get_double("reward.lo", s.lo);
  s.hi = c.get_double("reward.hi", s.hi);
  s.plateau = c.get_double("reward.plateau", s.plateau);
  s.slope_below = c.get_double("reward.slope_below", s.slope_below);
  s.slope_above = c.get_double("reward.slope_above", s.slope_above);
  s.floor = c.get_double("reward.floor", s.floor);
  s.base = c.get_double("reward.base", s.base);
  s.scale = c.get_double("reward.scale", s.scale);
  s.cap = c.get_double("reward.cap", s.cap);
  s.invalid_policy = parse_invalid_policy(c.get_string("reward.invalid_policy", invalid_policy_name(s.invalid_policy)));
  s.penalty = c.get_double("reward.penalty", s.penalty);
  s.validate();
  return s;
}

double reward(const RewardSpec& spec, double v) {
  switch (spec.kind) {
    case RewardKind::kPiecewiseRange: {
      double r = spec.plateau;
      if (v < spec.lo) r -= spec.slope_below * (spec.lo - v);
      if (v > spec.hi) r -= spec.slope_above * (v - spec.hi);
      return std::max(r, spec.floor);
    }
    case RewardKind::kExpMax: return std::min(spec.cap, std::pow(spec.base, spec.scale * v));
    case RewardKind::kExpMin: return std::min(spec.cap, std::pow(spec.base, -spec.scale * v));
    case RewardKind::kStructCountExp: return std::min(spec.cap, std::pow(spec.base, v));
  }
  return 0.0;
}

RewardFunction::RewardFunction(RewardSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  if (spec_.uses_predictor()) {
    predictor_ = std::make_shared<const predictor::PredictorModel>(predictor::load_predictor(spec_.predictor_path));
  }
}

RewardFunction::RewardFunction(RewardSpec spec, predictor::PredictorModel model)
    : spec_(std::move(spec)), predictor_(std::make_shared<const predictor::PredictorModel>(std::move(model))) {
  spec_.validate();
}

std::optional<double> RewardFunction::property(const std::string& smiles, bool valid) const {
  if (!valid && spec_.invalid_policy == InvalidPolicy::kFixedPenalty) return std::nullopt;
  if (predictor_) {
    try {
      return predictor::predict(*predictor_, smiles);
    } catch (const DataError&) {
      return std::nullopt;
    }
  }
  if (!valid && !chem::feature_defined_on_invalid(spec_.feature)) return 0.0;
  return chem::compute_feature(spec_.feature, smiles);
}

RewardFunction::Scored RewardFunction::score(const std::string& smiles, bool valid) const {
  Scored s;
  s.property = property(smiles, valid);
  s.reward = s.property && std::isfinite(*s.property) ? reward(spec_, *s.property) : spec_.penalty;
  return s;
}

}  // namespace stackrl::reinforce
