#ifndef STACKRL_TOOLS_COMMANDS_H_
#define STACKRL_TOOLS_COMMANDS_H_

#include <string_view>

#include "stackrl/io/text.h"

namespace stackrl::tools {

// Each command reads its settings from the resolved config and writes
// outputs under out_dir. Errors propagate as DataError / NumericalError.
int cmd_corpus(const io::KeyValueConfig& config);
int cmd_ingest(const io::KeyValueConfig& config);
int cmd_pretrain(const io::KeyValueConfig& config, bool with_stack);
int cmd_generate(const io::KeyValueConfig& config);
int cmd_make_dataset(const io::KeyValueConfig& config);
int cmd_train_predictor(const io::KeyValueConfig& config);
int cmd_crossval(const io::KeyValueConfig& config);
int cmd_finetune(const io::KeyValueConfig& config);
int cmd_report(const io::KeyValueConfig& config);
int cmd_trace(const io::KeyValueConfig& config);

}  // namespace stackrl::tools

#endif  // STACKRL_TOOLS_COMMANDS_H_
