#include "augsill/dictionary_io.hpp"

#include <sstream>

#include <boost/property_tree/ini_parser.hpp>

#include "augsill/errors.hpp"
#include "augsill/text_format.hpp"

namespace augsill {

namespace pt = boost::property_tree;

namespace {

pt::ptree::path_type key(const std::string& k) { return pt::ptree::path_type(k, '/'); }

std::string get(const pt::ptree& section, const std::string& k) {
  const auto v = section.get_optional<std::string>(key(k));
  if (!v) throw DataError("dictionary file is missing key '" + k + "'");
  return *v;
}

int get_int(const pt::ptree& section, const std::string& k) {
  const double v = parse_double(get(section, k));
  if (v != static_cast<int>(v)) throw DataError("key '" + k + "' must be an integer");
  return static_cast<int>(v);
}

const pt::ptree& section(const pt::ptree& tree, const std::string& name) {
  const auto child = tree.get_child_optional(key(name));
  if (!child) throw DataError("dictionary file is missing section [" + name + "]");
  return *child;
}

std::vector<ScalarBasisParams> read_params(const pt::ptree& s, int m) {
  const auto centers = parse_list(get(s, "centers"));
  const auto steep = parse_list(get(s, "steepnesses"));
  if (static_cast<int>(centers.size()) != m || static_cast<int>(steep.size()) != m)
    throw DataError("member parameter lists must have length m");
  std::vector<ScalarBasisParams> out;
  for (int i = 0; i < m; ++i) out.emplace_back(centers[i], steep[i]);
  return out;
}

}  // namespace

pt::ptree dictionary_to_tree(const Dictionary& d) {
  pt::ptree tree;
  pt::ptree head;
  head.put(key("family"), std::string(to_string(d.family())));
  head.put(key("m"), d.m());
  head.put(key("N"), d.size());
  head.put(key("N_L"), d.n_logistic());
  head.put(key("N_R"), d.n_rbf());
  tree.add_child(key("dictionary"), head);

  for (int j = 0; j < d.size(); ++j) {
    pt::ptree s;
    if (d.family() == DictionaryFamily::Legendre || d.family() == DictionaryFamily::Hermite) {
      s.put(key("kind"), std::string(to_string(d.family())));
      std::vector<double> deg(d.multi_indices()[j].begin(), d.multi_indices()[j].end());
      s.put(key("degrees"), format_list(deg));
    } else {
      const BasisKind kind = d.family() == DictionaryFamily::SummedRbf
                                 ? BasisKind::Rbf
                                 : d.conjunctive()[j].kind;
      s.put(key("kind"), std::string(to_string(kind)));
      std::vector<double> centers, steep;
      for (int i = 0; i < d.m(); ++i) {
        centers.push_back(d.center(j, i));
        steep.push_back(d.steepness(j, i));
      }
      s.put(key("centers"), format_list(centers));
      s.put(key("steepnesses"), format_list(steep));
    }
    tree.add_child(key("member_" + std::to_string(j)), s);
  }
  return tree;
}

Dictionary dictionary_from_tree(const pt::ptree& tree) {
  const auto& head = section(tree, "dictionary");
  const auto family = dictionary_family_from_string(get(head, "family"));
  const int m = get_int(head, "m");
  const int n = get_int(head, "N");
  const int nl = get_int(head, "N_L");
  const int nr = get_int(head, "N_R");
  if (m < 1 || n < 0) throw DataError("invalid dictionary dimensions");

  auto member = [&](int j) -> const pt::ptree& { return section(tree, "member_" + std::to_string(j)); };

  switch (family) {
    case DictionaryFamily::Legendre:
    case DictionaryFamily::Hermite: {
      Dictionary d = Dictionary::polynomial(family, m, n);
      for (int j = 0; j < n; ++j) {
        const auto deg = parse_list(get(member(j), "degrees"));
        MultiIndex idx(deg.begin(), deg.end());
        if (idx != d.multi_indices()[j]) throw DataError("polynomial member order mismatch");
      }
      return d;
    }
    case DictionaryFamily::SummedRbf: {
      std::vector<std::vector<ScalarBasisParams>> members;
      for (int j = 0; j < n; ++j) members.push_back(read_params(member(j), m));
      return Dictionary::summed_rbf(m, std::move(members));
    }
    case DictionaryFamily::SILL:
    case DictionaryFamily::AugSILL: {
      if (nl + nr != n) throw DataError("N_L + N_R must equal N");
      std::vector<ConjunctiveFunction> logistic, rbf;
      for (int j = 0; j < n; ++j) {
        const auto kind = basis_kind_from_string(get(member(j), "kind"));
        ConjunctiveFunction f{kind, read_params(member(j), m)};
        if ((kind == BasisKind::Logistic) != (j < nl))
          throw DataError("member kinds do not match N_L/N_R");
        (kind == BasisKind::Logistic ? logistic : rbf).push_back(std::move(f));
      }
      if (family == DictionaryFamily::SILL) {
        if (!rbf.empty()) throw DataError("SILL dictionary cannot hold RBF members");
        return Dictionary::sill(m, std::move(logistic));
      }
      return Dictionary::aug_sill(m, std::move(logistic), std::move(rbf));
    }
  }
  throw DataError("unreachable dictionary family");
}

std::string tree_to_ini(const pt::ptree& tree) {
  std::ostringstream out;
  try {
    pt::write_ini(out, tree);
  } catch (const pt::ptree_error& e) {
    throw DataError(std::string("cannot render INI: ") + e.what());
  }
  return out.str();
}

pt::ptree ini_to_tree(const std::string& text) {
  std::istringstream in(text);
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ptree_error& e) {
    throw DataError(std::string("malformed INI: ") + e.what());
  }
  return tree;
}

std::string dictionary_to_ini(const Dictionary& d) { return tree_to_ini(dictionary_to_tree(d)); }

Dictionary dictionary_from_ini(const std::string& text) {
  try {
    return dictionary_from_tree(ini_to_tree(text));
  } catch (const DomainError& e) {
    throw DataError(std::string("invalid dictionary parameters: ") + e.what());
  }
}

void save_dictionary(const std::string& path, const Dictionary& d) {
  write_text_file(path, dictionary_to_ini(d));
}

Dictionary load_dictionary(const std::string& path) {
  return dictionary_from_ini(read_text_file(path));
}

}  // namespace augsill
