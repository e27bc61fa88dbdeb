#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "epskit/parse.hpp"

namespace epskit {

// A finite interpretation of a signature: one finite universe per sort and a
// total table for every constant.  Elements are stored as indices; predicate
// tables map tuples to 0/1.
struct FiniteStructure {
  std::string name;
  std::map<std::string, std::vector<std::string>> universes;  // sort -> element names
  std::map<std::string, std::map<std::vector<int>, int>> tables;

  int universe_size(const std::string& sort) const;
  int element_index(const std::string& sort, const std::string& elem) const;
  const std::string& element_name(const std::string& sort, int idx) const;
  int lookup(const std::string& cname, const std::vector<int>& args) const;
};

// Loads a structure file:
//   structure <name>          (optional; defaults to the file stem)
//   universe i = { a, b }
//   pred P = { (a), (b) }     tuples listed are true, others false
//   fun f = { (a) -> b, (b) -> a }
//   const c = a
// Tables must be total; every constant of the signature must be covered.
FiniteStructure load_structure(const std::string& path, const Signature& sig);

// Enumerates every structure over the signature with universe sizes from 1
// to max_size per sort (element names "0", "1", ...).  Calls fn for each;
// stops early when fn returns false.  Throws when the signature would make
// the enumeration explode past the documented caps.
void for_each_structure(const Signature& sig, int max_size,
                        const std::function<bool(const FiniteStructure&)>& fn);

std::uint64_t count_structures(const Signature& sig, int max_size);

}  // namespace epskit
