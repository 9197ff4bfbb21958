#ifndef STACKRL_GENERATOR_CHECKPOINT_H_
#define STACKRL_GENERATOR_CHECKPOINT_H_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "stackrl/generator/model.h"
#include "stackrl/io/container.h"

namespace stackrl::generator {

inline constexpr const char* kGeneratorMagic = "SRNN";

io::Container to_container(const GeneratorModel& model);
GeneratorModel from_container(const io::Container& container);

// Refuses to write non-finite parameters (NumericalError).
void save_generator(const std::filesystem::path& path, const GeneratorModel& model);
// Throws DataError naming the failing section.
GeneratorModel load_generator(const std::filesystem::path& path);

}  // namespace stackrl::generator

#endif  // STACKRL_GENERATOR_CHECKPOINT_H_
