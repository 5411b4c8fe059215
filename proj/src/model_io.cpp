#include "augsill/model_io.hpp"

#include <filesystem>

#include "augsill/dictionary_io.hpp"
#include "augsill/errors.hpp"
#include "augsill/text_format.hpp"

namespace augsill {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

void save_model(const std::string& dir, const KoopmanModel& model) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create '" + dir + "': " + ec.message());
  save_dictionary((fs::path(dir) / "dictionary.ini").string(), model.dictionary);
  write_matrix_csv((fs::path(dir) / "K.csv").string(), model.K);

  pt::ptree tree;
  pt::ptree s;
  s.put(pt::ptree::path_type("mode", '/'), std::string(to_string(model.mode)));
  s.put(pt::ptree::path_type("dt", '/'), format_double(model.dt));
  s.put(pt::ptree::path_type("ridge", '/'), format_double(model.diagnostics.ridge));
  s.put(pt::ptree::path_type("lifted_dim", '/'), model.dictionary.lifted_dim());
  tree.add_child(pt::ptree::path_type("model", '/'), s);
  write_text_file((fs::path(dir) / "model.ini").string(), tree_to_ini(tree));
}

KoopmanModel load_model(const std::string& dir) {
  KoopmanModel model;
  model.dictionary = load_dictionary((fs::path(dir) / "dictionary.ini").string());
  model.K = read_matrix_csv((fs::path(dir) / "K.csv").string());
  const int n = model.dictionary.lifted_dim();
  if (model.K.rows() != n || model.K.cols() != n)
    throw DataError("K.csv is " + std::to_string(model.K.rows()) + "x" +
                    std::to_string(model.K.cols()) + ", expected " + std::to_string(n) + "x" +
                    std::to_string(n));
  const fs::path meta = fs::path(dir) / "model.ini";
  if (fs::exists(meta)) {
    const auto tree = ini_to_tree(read_text_file(meta.string()));
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type("model/mode", '/')))
      model.mode = data_mode_from_string(*v);
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type("model/dt", '/')))
      model.dt = parse_double(*v);
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type("model/ridge", '/')))
      model.diagnostics.ridge = parse_double(*v);
  }
  return model;
}

}  // namespace augsill
