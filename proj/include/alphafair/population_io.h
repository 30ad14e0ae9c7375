#pragma once

// Population files. CSV has the header `id,a,b,z,y` with z (protected) and
// y (qualified) in {0,1}. JSON is an array of objects with the same keys.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "alphafair/selection.h"

namespace alphafair {

// Unreadable files and malformed population data.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

std::vector<Individual> read_population_csv(std::istream& is);
std::vector<Individual> read_population_json(std::istream& is);
// Picks JSON for a `.json` extension and CSV otherwise.
std::vector<Individual> read_population_file(const std::filesystem::path& path);

void write_population_csv(std::ostream& os, std::span<const Individual> population);
void write_population_json(std::ostream& os, std::span<const Individual> population);

}  // namespace alphafair
