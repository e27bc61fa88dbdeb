#include "epskit/structure.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace epskit {

int FiniteStructure::universe_size(const std::string& sort) const {
  auto it = universes.find(sort);
  if (it == universes.end()) throw EpskitError("no universe for sort " + sort);
  return static_cast<int>(it->second.size());
}

int FiniteStructure::element_index(const std::string& sort, const std::string& elem) const {
  auto it = universes.find(sort);
  if (it == universes.end()) throw EpskitError("no universe for sort " + sort);
  auto pos = std::find(it->second.begin(), it->second.end(), elem);
  if (pos == it->second.end())
    throw EpskitError("element '" + elem + "' not in universe of sort " + sort);
  return static_cast<int>(pos - it->second.begin());
}

const std::string& FiniteStructure::element_name(const std::string& sort, int idx) const {
  auto it = universes.find(sort);
  if (it == universes.end()) throw EpskitError("no universe for sort " + sort);
  return it->second.at(idx);
}

int FiniteStructure::lookup(const std::string& cname, const std::vector<int>& args) const {
  auto it = tables.find(cname);
  if (it == tables.end()) throw EpskitError("constant not interpreted: " + cname);
  auto jt = it->second.find(args);
  if (jt == it->second.end())
    throw EpskitError("table for " + cname + " is not total");
  return jt->second;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

// parses "(a, b)" or "a" into element names
std::vector<std::string> parse_tuple(const std::string& s) {
  std::string t = trim(s);
  if (!t.empty() && t.front() == '(') {
    if (t.back() != ')') throw EpskitError("malformed tuple: " + s);
    std::vector<std::string> out;
    for (auto& p : split_commas(t.substr(1, t.size() - 2))) out.push_back(p);
    return out;
  }
  return {t};
}

std::string brace_body(const std::string& s, const std::string& ctx) {
  std::size_t a = s.find('{');
  std::size_t b = s.rfind('}');
  if (a == std::string::npos || b == std::string::npos || b < a)
    throw EpskitError("expected { ... } in " + ctx);
  return s.substr(a + 1, b - a - 1);
}

}  // namespace

FiniteStructure load_structure(const std::string& path, const Signature& sig) {
  std::ifstream in(path);
  if (!in) throw EpskitError("cannot open structure file: " + path);
  FiniteStructure st;
  {
    std::size_t slash = path.find_last_of('/');
    std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
    std::size_t dot = stem.rfind('.');
    st.name = dot == std::string::npos ? stem : stem.substr(0, dot);
  }

  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw EpskitError(path + ":" + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ls(t);
    std::string kw;
    ls >> kw;
    if (kw == "structure") {
      ls >> st.name;
    } else if (kw == "universe") {
      std::string sort;
      ls >> sort;
      if (!sig.has_sort(sort) || sort == kBoolSort) fail("unknown sort: " + sort);
      std::string rest;
      std::getline(ls, rest);
      auto elems = split_commas(brace_body(rest, "universe"));
      if (elems.empty()) fail("empty universe for sort " + sort);
      st.universes[sort] = elems;
    } else if (kw == "pred" || kw == "fun" || kw == "const") {
      std::string cname;
      ls >> cname;
      auto cit = sig.consts.find(cname);
      if (cit == sig.consts.end()) fail("unknown constant: " + cname);
      const Type& ct = cit->second;
      bool is_pred = ct.base == kBoolSort;
      if (kw == "pred" && !is_pred) fail(cname + " does not have result sort o");
      if (kw != "pred" && is_pred) fail(cname + " has result sort o; use 'pred'");
      std::string rest;
      std::getline(ls, rest);
      rest = trim(rest);
      if (rest.empty() || rest[0] != '=') fail("expected '=' in interpretation of " + cname);
      rest = trim(rest.substr(1));
      auto& table = st.tables[cname];
      if (kw == "const") {
        if (!ct.args.empty()) fail(cname + " takes arguments; use 'fun'");
        table[{}] = -1;  // resolved below once universes are known
        // store the element name temporarily via a side channel
        st.universes["__const__" + cname] = {rest};
      } else if (kw == "pred") {
        table.clear();
        for (const auto& tup : split_commas(brace_body(rest, cname))) {
          st.universes["__tuple__" + cname + "#" + std::to_string(table.size())] =
              parse_tuple(tup);
          table[{static_cast<int>(table.size())}] = 1;  // placeholder
        }
        st.universes["__predmark__" + cname] = {};
      } else {
        for (const auto& entry : split_commas(brace_body(rest, cname))) {
          std::size_t arrow = entry.find("->");
          if (arrow == std::string::npos) fail("expected '->' in entry: " + entry);
          st.universes["__funin__" + cname + "#" + std::to_string(table.size())] =
              parse_tuple(entry.substr(0, arrow));
          st.universes["__funout__" + cname + "#" + std::to_string(table.size())] = {
              trim(entry.substr(arrow + 2))};
          table[{static_cast<int>(table.size())}] = 0;  // placeholder
        }
        st.universes["__funmark__" + cname] = {};
      }
    } else {
      fail("unknown directive: " + kw);
    }
  }

  // second pass: resolve element names now that all universes are present
  FiniteStructure out;
  out.name = st.name;
  for (const auto& [sort, elems] : st.universes) {
    if (sort.rfind("__", 0) == 0) continue;
    out.universes[sort] = elems;
  }
  for (const auto& s : sig.sorts) {
    if (!out.universes.count(s))
      throw EpskitError(path + ": no universe declared for sort " + s);
  }

  auto tuple_indices = [&](const Type& ct, const std::vector<std::string>& names)
      -> std::vector<int> {
    if (names.size() != ct.args.size())
      throw EpskitError(path + ": tuple arity mismatch for type " + ct.str());
    std::vector<int> idx;
    for (std::size_t i = 0; i < names.size(); ++i)
      idx.push_back(out.element_index(ct.args[i].base, names[i]));
    return idx;
  };

  for (const auto& [cname, ct] : sig.consts) {
    auto& table = out.tables[cname];
    bool is_pred = ct.base == kBoolSort;
    if (st.universes.count("__const__" + cname)) {
      table[{}] = out.element_index(ct.base, st.universes.at("__const__" + cname)[0]);
    } else if (st.universes.count("__predmark__" + cname)) {
      // default everything to 0, set listed tuples to 1
      std::vector<int> sizes;
      for (const auto& a : ct.args) sizes.push_back(out.universe_size(a.base));
      std::vector<int> tup(sizes.size(), 0);
      for (;;) {
        table[tup] = 0;
        int k = static_cast<int>(sizes.size()) - 1;
        while (k >= 0 && ++tup[k] == sizes[k]) tup[k--] = 0;
        if (k < 0) break;
      }
      for (std::size_t i = 0;; ++i) {
        auto key = "__tuple__" + cname + "#" + std::to_string(i);
        if (!st.universes.count(key)) break;
        table[tuple_indices(ct, st.universes.at(key))] = 1;
      }
    } else if (st.universes.count("__funmark__" + cname)) {
      for (std::size_t i = 0;; ++i) {
        auto in_key = "__funin__" + cname + "#" + std::to_string(i);
        auto out_key = "__funout__" + cname + "#" + std::to_string(i);
        if (!st.universes.count(in_key)) break;
        table[tuple_indices(ct, st.universes.at(in_key))] =
            out.element_index(ct.base, st.universes.at(out_key)[0]);
      }
      // totality check
      std::vector<int> sizes;
      for (const auto& a : ct.args) sizes.push_back(out.universe_size(a.base));
      std::uint64_t want = 1;
      for (int s : sizes) want *= static_cast<std::uint64_t>(s);
      if (table.size() != want)
        throw EpskitError(path + ": table for " + cname + " is not total (" +
                          std::to_string(table.size()) + " of " + std::to_string(want) +
                          " entries)");
    } else if (is_pred) {
      // unlisted predicates default to empty
      std::vector<int> sizes;
      for (const auto& a : ct.args) sizes.push_back(out.universe_size(a.base));
      std::vector<int> tup(sizes.size(), 0);
      for (;;) {
        table[tup] = 0;
        int k = static_cast<int>(sizes.size()) - 1;
        while (k >= 0 && ++tup[k] == sizes[k]) tup[k--] = 0;
        if (k < 0) break;
      }
    } else {
      throw EpskitError(path + ": no interpretation for constant " + cname);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration
// ---------------------------------------------------------------------------

namespace {

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) {
    r *= b;
    if (r > (1ULL << 62)) throw EpskitError("structure space too large");
  }
  return r;
}

}  // namespace

std::uint64_t count_structures(const Signature& sig, int max_size) {
  std::uint64_t total = 0;
  std::vector<std::string> sorts(sig.sorts.begin(), sig.sorts.end());
  std::vector<int> sizes(sorts.size(), 1);
  for (;;) {
    std::uint64_t here = 1;
    for (const auto& [cname, ct] : sig.consts) {
      (void)cname;
      std::uint64_t dom = 1;
      for (const auto& a : ct.args) {
        int s = sizes[std::find(sorts.begin(), sorts.end(), a.base) - sorts.begin()];
        dom *= static_cast<std::uint64_t>(s);
      }
      int res = ct.base == kBoolSort
                    ? 2
                    : sizes[std::find(sorts.begin(), sorts.end(), ct.base) - sorts.begin()];
      here *= ipow(static_cast<std::uint64_t>(res), dom);
      if (here > (1ULL << 62)) throw EpskitError("structure space too large");
    }
    total += here;
    int k = static_cast<int>(sizes.size()) - 1;
    while (k >= 0 && ++sizes[k] > max_size) sizes[k--] = 1;
    if (k < 0) break;
    if (sorts.empty()) break;
  }
  return total;
}

void for_each_structure(const Signature& sig, int max_size,
                        const std::function<bool(const FiniteStructure&)>& fn) {
  if (max_size > 3) throw EpskitError("universe size cap is 3");
  std::vector<std::string> sorts(sig.sorts.begin(), sig.sorts.end());
  if (count_structures(sig, max_size) > 5000000ULL)
    throw EpskitError("structure space too large to enumerate");

  std::vector<int> sizes(sorts.size(), 1);
  for (;;) {
    // base structure with universes of the chosen sizes
    FiniteStructure base;
    base.name = "enum";
    for (std::size_t i = 0; i < sorts.size(); ++i) {
      std::vector<std::string> elems;
      for (int k = 0; k < sizes[i]; ++k) elems.push_back(std::to_string(k));
      base.universes[sorts[i]] = elems;
    }
    // enumerate all tables for all constants
    std::vector<std::pair<std::string, std::vector<std::vector<int>>>> slots;
    std::vector<int> result_sizes;
    for (const auto& [cname, ct] : sig.consts) {
      std::vector<std::vector<int>> keys;
      std::vector<int> dims;
      for (const auto& a : ct.args) dims.push_back(base.universe_size(a.base));
      std::vector<int> tup(dims.size(), 0);
      for (;;) {
        keys.push_back(tup);
        int k = static_cast<int>(dims.size()) - 1;
        while (k >= 0 && ++tup[k] == dims[k]) tup[k--] = 0;
        if (k < 0) break;
      }
      slots.emplace_back(cname, keys);
      result_sizes.push_back(ct.base == kBoolSort ? 2 : base.universe_size(ct.base));
    }
    // odometer over every (constant, key) cell
    std::vector<std::pair<int, int>> cells;  // (slot, key index)
    for (std::size_t s = 0; s < slots.size(); ++s)
      for (std::size_t k = 0; k < slots[s].second.size(); ++k)
        cells.emplace_back(static_cast<int>(s), static_cast<int>(k));
    std::vector<int> assign(cells.size(), 0);
    bool stop = false;
    for (;;) {
      FiniteStructure st = base;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        auto [s, k] = cells[c];
        st.tables[slots[s].first][slots[s].second[k]] = assign[c];
      }
      for (auto& [cname, keys] : slots) {
        if (keys.empty()) st.tables[cname];  // ensure empty table exists
      }
      if (!fn(st)) { stop = true; break; }
      int c = static_cast<int>(cells.size()) - 1;
      while (c >= 0 && ++assign[c] == result_sizes[cells[c].first]) assign[c--] = 0;
      if (c < 0) break;
      if (cells.empty()) break;
    }
    if (stop) break;
    int k = static_cast<int>(sizes.size()) - 1;
    while (k >= 0 && ++sizes[k] > max_size) sizes[k--] = 1;
    if (k < 0) break;
    if (sorts.empty()) break;
  }
}

}  // namespace epskit
