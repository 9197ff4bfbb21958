#ifndef STACKRL_TOOLS_RUN_CONFIG_H_
#define STACKRL_TOOLS_RUN_CONFIG_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "stackrl/generator/model.h"
#include "stackrl/generator/training.h"
#include "stackrl/io/text.h"
#include "stackrl/predictor/model.h"
#include "stackrl/predictor/training.h"
#include "stackrl/reinforce/finetune.h"
#include "stackrl/reinforce/reward.h"

namespace stackrl::tools {

// Every key the tool understands, with its default. Persisted configs list
// all of them so a run can be repeated from the file alone.
io::KeyValueConfig default_config();

// Defaults, then the --config file, then --set overrides and explicit flags.
// Unknown keys are rejected (DataError) to catch typos.
void check_known_keys(const io::KeyValueConfig& config);

std::filesystem::path require_path(const io::KeyValueConfig& config, std::string_view key);
std::filesystem::path output_dir(const io::KeyValueConfig& config);
std::uint64_t seed_of(const io::KeyValueConfig& config);

generator::GeneratorConfig generator_config(const io::KeyValueConfig& config);
generator::TrainOptions generator_train_options(const io::KeyValueConfig& config);
predictor::PredictorConfig predictor_config(const io::KeyValueConfig& config);
predictor::PredictorTrainOptions predictor_train_options(const io::KeyValueConfig& config);
reinforce::FinetuneOptions finetune_options(const io::KeyValueConfig& config);

// '#'-prefixed provenance for text outputs, and the same as a JSON member.
std::string text_header(std::string_view command, const io::KeyValueConfig& config);
std::string with_json_provenance(const std::string& json, std::string_view command,
                                 const io::KeyValueConfig& config);

// Persists the resolved configuration as <dir>/<command>.config.
void persist_config(std::string_view command, const io::KeyValueConfig& config);

}  // namespace stackrl::tools

#endif  // STACKRL_TOOLS_RUN_CONFIG_H_
