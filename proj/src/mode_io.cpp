#include "periodkit/mode_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace periodkit::mode_io {

spectral::ModeSystem parse_mode_system(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw mode_io_error(std::string("mode system: malformed JSON: ") + e.what());
  }
  if (!j.is_object())
    throw mode_io_error("mode system: top level must be an object");
  if (!j.contains("alpha") || !j["alpha"].is_number())
    throw mode_io_error("mode system: numeric field 'alpha' is required");
  if (!j.contains("lambdas") || !j["lambdas"].is_array())
    throw mode_io_error("mode system: array field 'lambdas' is required");
  spectral::ModeSystem ms;
  ms.alpha = j["alpha"].get<double>();
  ms.lambdas.reserve(j["lambdas"].size());
  for (const auto& item : j["lambdas"]) {
    if (!item.is_number())
      throw mode_io_error("mode system: 'lambdas' entries must be numbers");
    ms.lambdas.push_back(item.get<double>());
  }
  spectral::validate(ms);  // semantic checks throw std::invalid_argument
  return ms;
}

spectral::ModeSystem load_mode_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mode_io_error("mode system: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_mode_system(buf.str());
}

}  // namespace periodkit::mode_io
