#ifndef GAITMAP_IO_HPP
#define GAITMAP_IO_HPP

#include <iosfwd>
#include <string>

#include "gaitmap/decoupling.hpp"
#include "gaitmap/gait.hpp"

// File formats: the JSON gait program (explicit samples or a generator
// recipe), the JSON coefficient model, and the presets:// URI scheme.

namespace gaitmap {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Explicit-sample JSON form; write-then-read round-trips every field at full
// float precision.
std::string gait_to_json(const GaitProgram& g);
GaitProgram gait_from_json(const std::string& text);

// Accepts a file path or presets://<name>.
GaitProgram load_gait(const std::string& path_or_uri);
void save_gait(const std::string& path, const GaitProgram& g);

// Coefficient model file: {"Dz": {pattern: value, ...}, "Dy": ..., "Dx": ...,
// "scale": s}. Missing tables and entries default to zero; any table other
// than Dz present (even empty) keeps the model attitude-extended.
std::string model_to_json(const DeterminantModel& model);
DeterminantModel model_from_json(const std::string& text);

DeterminantModel load_model(const std::string& path);
void save_model(const std::string& path, const DeterminantModel& model);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace gaitmap

#endif
