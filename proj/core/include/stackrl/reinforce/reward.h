#ifndef STACKRL_REINFORCE_REWARD_H_
#define STACKRL_REINFORCE_REWARD_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "stackrl/chem/properties.h"
#include "stackrl/io/text.h"
#include "stackrl/predictor/model.h"

namespace stackrl::reinforce {

enum class RewardKind { kPiecewiseRange, kExpMax, kExpMin, kStructCountExp };
enum class InvalidPolicy { kScoreAnyway, kFixedPenalty };

struct RewardSpec {
  RewardKind kind = RewardKind::kPiecewiseRange;

  // Property source: a predictor checkpoint when predictor_path is set,
  // otherwise a computable feature.
  std::string predictor_path;
  chem::Feature feature = chem::Feature::kCompositionScore;

  // piecewise_range: plateau inside [lo, hi], falling by the slope per unit
  // of distance outside, never below floor.
  double lo = 1.0;
  double hi = 4.0;
  double plateau = 10.0;
  double slope_below = 1.0;
  double slope_above = 1.0;
  double floor = 0.0;

  // exp_max: base^(scale v); exp_min: base^(-scale v); struct_count_exp:
  // base^v. All exponential shapes are clamped at cap.
  double base = 2.718281828459045;
  double scale = 1.0;
  double cap = 1e6;

  InvalidPolicy invalid_policy = InvalidPolicy::kScoreAnyway;
  double penalty = 0.0;

  bool uses_predictor() const { return !predictor_path.empty(); }
  // Throws DataError on inconsistent parameters.
  void validate() const;

  // "reward.*" keys.
  void write(io::KeyValueConfig& config) const;
  static RewardSpec read(const io::KeyValueConfig& config);
};

RewardKind parse_reward_kind(std::string_view name);
std::string_view reward_kind_name(RewardKind kind);
InvalidPolicy parse_invalid_policy(std::string_view name);
std::string_view invalid_policy_name(InvalidPolicy policy);

// f(v) for a finite property value.
double reward(const RewardSpec& spec, double property_value);

// Property lookup plus reward shaping for decoded strings. Loads the
// predictor checkpoint at construction (DataError if unreadable).
class RewardFunction {
 public:
  explicit RewardFunction(RewardSpec spec);
  RewardFunction(RewardSpec spec, predictor::PredictorModel model);

  const RewardSpec& spec() const { return spec_; }

  // Property of a string given its validity; nullopt when it cannot be
  // scored (policy says skip, or the source is undefined on the string).
  std::optional<double> property(const std::string& smiles, bool valid) const;

  struct Scored {
    std::optional<double> property;
    double reward = 0.0;
  };
  Scored score(const std::string& smiles, bool valid) const;

 private:
  RewardSpec spec_;
  std::shared_ptr<const predictor::PredictorModel> predictor_;
};

}  // namespace stackrl::reinforce

#endif  // STACKRL_REINFORCE_REWARD_H_
