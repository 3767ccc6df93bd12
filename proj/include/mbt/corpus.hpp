#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mbt/executor.hpp"
#include "mbt/model.hpp"
#include "mbt/program.hpp"

namespace mbt {

inline constexpr Rgb kRedBar{255, 0, 0};

struct VariantDef {
    std::string id;
    SpriteProgram program;
    std::vector<std::string> expected_failures;  // message substrings
    std::string notes;
};

struct NamedScript {
    std::string name;
    InputScript inputs;
};

std::vector<std::string> variant_ids();

// Throws std::invalid_argument for an unknown id.
SpriteProgram build_fruit_catcher(const std::string& variant);

// 19 program models, one end model and one user model.
std::vector<Model> fruit_models();

std::vector<VariantDef> mutant_suite();

// Scripted input files used by the scripted arm of the experiment.
std::vector<NamedScript> scripted_suite();

// MBT_CORPUS_DIR if set, otherwise the directory compiled into the library.
std::string corpus_dir();

// Writes programs/, models/, inputs/ and variants.json below `dir`.
void write_corpus(const std::string& dir);

}  // namespace mbt
