#include "stackrl/generator/checkpoint.h"

#include "stackrl/errors.h"

namespace stackrl::generator {

io::Container to_container(const GeneratorModel& model) {
  io::Container c;
  c.magic = kGeneratorMagic;
  c.version = io::kContainerVersion;
  c.config = model.config().to_entries();
  c.vocabulary = model.vocabulary().tokens();
  for (const auto& [name, tensor] : model.parameters().entries()) c.tensors.emplace_back(name, tensor);
  return c;
}

GeneratorModel from_container(const io::Container& c) {
  const auto cfg = GeneratorConfig::from_entries(c.config);
  chem::Vocabulary vocab;
  try {
    vocab = chem::Vocabulary::from_full_list(c.vocabulary);
  } catch (const DataError& e) {
    throw DataError(std::string("checkpoint section vocabulary: ") + e.what());
  }
  autodiff::NamedTensors params;
  for (const auto& [name, tensor] : c.tensors) params.set(name, tensor);
  try {
    return GeneratorModel(cfg, std::move(vocab), std::move(params));
  } catch (const DataError& e) {
    throw DataError(std::string("checkpoint section tensors: ") + e.what());
  }
}

void save_generator(const std::filesystem::path& path, const GeneratorModel& model) {
  if (!model.parameters().all_finite()) {
    throw NumericalError("refusing to write checkpoint with non-finite parameters: " + path.string());
  }
  io::write_container(path, to_container(model));
}

GeneratorModel load_generator(const std::filesystem::path& path) {
  return from_container(io::read_container(path, kGeneratorMagic));
}

}  // namespace stackrl::generator
