#pragma once

#include <string>

#include <boost/property_tree/ptree.hpp>

#include "augsill/dictionary.hpp"

namespace augsill {

/// INI-style rendering: a [dictionary] header section followed by one
/// [member_j] section per nonlinear member. Numbers use shortest round-trip
/// decimals, so save/load reproduces the dictionary exactly.
boost::property_tree::ptree dictionary_to_tree(const Dictionary& d);
Dictionary dictionary_from_tree(const boost::property_tree::ptree& tree);

std::string dictionary_to_ini(const Dictionary& d);
Dictionary dictionary_from_ini(const std::string& text);

void save_dictionary(const std::string& path, const Dictionary& d);
Dictionary load_dictionary(const std::string& path);

/// INI helpers with errors mapped to DataError.
std::string tree_to_ini(const boost::property_tree::ptree& tree);
boost::property_tree::ptree ini_to_tree(const std::string& text);

}  // namespace augsill
